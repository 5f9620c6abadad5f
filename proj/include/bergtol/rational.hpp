#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "bergtol/common.hpp"

namespace bergtol {

// Exact rational on 64-bit numerator/denominator, reduced, denominator > 0.
// Intermediates go through __int128; anything that would not fit back into
// 64 bits throws numeric_error instead of silently wrapping. The angle
// arithmetic and radial moments this type serves keep values small, so the
// limit is never hit in practice.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) { assign(n, d); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    bool is_integer() const { return den_ == 1; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw numeric_error("rational division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ <= (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    // Reduction into the half-open interval [0, m) for positive integer m.
    Rational mod(long long m) const {
        __int128 n = num_;
        __int128 md = (__int128)m * den_;
        n %= md;
        if (n < 0) n += md;
        return from128(n, den_);
    }

    // Parses "a", "a/b" or a plain decimal such as "0.5" (taken exactly).
    static Rational parse(const std::string& text) {
        if (text.empty()) throw parse_error("rational: empty string");
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            long long n = parse_int(text.substr(0, slash));
            long long d = parse_int(text.substr(slash + 1));
            if (d == 0) throw parse_error("rational: zero denominator in '" + text + "'");
            return Rational(n, d);
        }
        auto dot = text.find('.');
        if (dot != std::string::npos) {
            std::string head = text.substr(0, dot);
            std::string frac = text.substr(dot + 1);
            if (frac.size() > 18) throw parse_error("rational: too many decimals in '" + text + "'");
            bool neg = !head.empty() && head[0] == '-';
            long long ipart = head.empty() || head == "-" || head == "+" ? 0 : parse_int(head);
            long long scale = 1;
            for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
            long long f = frac.empty() ? 0 : parse_int(frac);
            if (f < 0) throw parse_error("rational: malformed decimal '" + text + "'");
            __int128 n = (__int128)std::llabs(ipart) * scale + f;
            if (neg || ipart < 0) n = -n;
            return from128(n, scale);
        }
        return Rational(parse_int(text));
    }

    // Exact conversion of a binary double (every finite double is rational).
    // Fails when the reduced denominator exceeds max_den, which flags values
    // that were clearly not meant as exact fractions.
    static Rational from_double_exact(double x, long long max_den = (1LL << 40)) {
        require_finite(x, "rational");
        Rational r(0);
        double scaled = x;
        long long den = 1;
        while (scaled != std::floor(scaled)) {
            scaled *= 2;
            den *= 2;
            if (den > max_den || !std::isfinite(scaled))
                throw numeric_error("value is not exactly representable as a small rational");
        }
        if (std::abs(scaled) > 9.0e18)
            throw numeric_error("value is not exactly representable as a small rational");
        return Rational(static_cast<long long>(scaled), den);
    }

  private:
    long long num_;
    long long den_;

    void assign(long long n, long long d) {
        if (d == 0) throw numeric_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n;
        den_ = d;
    }

    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw numeric_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        constexpr __int128 kMax = 0x7fffffffffffffffLL;
        if (n > kMax || n < -kMax || d > kMax)
            throw numeric_error("rational overflow");
        Rational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    static long long parse_int(const std::string& s) {
        try {
            size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos != s.size()) throw parse_error("rational: trailing characters in '" + s + "'");
            return v;
        } catch (const std::invalid_argument&) {
            throw parse_error("rational: malformed integer '" + s + "'");
        } catch (const std::out_of_range&) {
            throw parse_error("rational: integer out of range '" + s + "'");
        }
    }
};

}  // namespace bergtol
