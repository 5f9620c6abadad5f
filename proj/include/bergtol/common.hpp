#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bergtol {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Error taxonomy mirrored by the CLI exit codes: user-facing input problems
// (domain, argument, hypothesis, parse) exit with 2, anything else with 1.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mathematical precondition on the inputs was violated (e.g. |z| > 1).
struct domain_error : error {
    using error::error;
};

// A structural argument problem (empty grid, nonpositive dimension, ...).
struct argument_error : error {
    using error::error;
};

// A theorem hypothesis could not be verified; the caller gets no verdict.
struct hypothesis_error : error {
    using error::error;
};

// Malformed serialized input; the message carries the offending field path.
struct parse_error : error {
    using error::error;
};

// Numeric machinery cannot deliver the request (overflow, missing moments).
struct numeric_error : error {
    using error::error;
};

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Complex z, const char* what) {
    if (!is_finite(z)) throw domain_error(std::string(what) + ": non-finite value");
}

inline void require_finite(double x, const char* what) {
    if (!is_finite(x)) throw domain_error(std::string(what) + ": non-finite value");
}

}  // namespace bergtol
