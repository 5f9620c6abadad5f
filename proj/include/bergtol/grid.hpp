#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "bergtol/common.hpp"

namespace bergtol {

// Polar evaluation grid on the closed unit disc: concentric rings with a
// per-ring angular count. Nodes are enumerated ring-major; node (i, k) sits
// at ring_radii[i] * exp(2 pi i k / ring_angle_counts[i]).
//
// covering_radius() returns a proven upper bound on the distance from any
// point of the closed disc to its nearest node. Grid-based sup/min bounds
// combine it with a Lipschitz constant to get one-sided certificates.
class DiskGrid {
  public:
    DiskGrid(std::vector<double> radii, std::vector<int> angle_counts,
             double boundary_gap = 0.0, std::string kind = "custom")
        : radii_(std::move(radii)),
          angles_(std::move(angle_counts)),
          boundary_gap_(boundary_gap),
          kind_(std::move(kind)) {
        validate();
        offsets_.reserve(angles_.size() + 1);
        std::size_t total = 0;
        for (int a : angles_) {
            offsets_.push_back(total);
            total += static_cast<std::size_t>(a);
        }
        offsets_.push_back(total);
    }

    std::size_t node_count() const { return offsets_.back(); }
    std::size_t ring_count() const { return radii_.size(); }
    double ring_radius(std::size_t i) const { return radii_[i]; }
    int ring_angles(std::size_t i) const { return angles_[i]; }
    double boundary_gap() const { return boundary_gap_; }
    const std::string& kind() const { return kind_; }

    Complex node(std::size_t flat) const {
        std::size_t ring = ring_of(flat);
        std::size_t k = flat - offsets_[ring];
        double theta = kTwoPi * static_cast<double>(k) / angles_[ring];
        return std::polar(radii_[ring], theta);
    }

    std::size_t ring_of(std::size_t flat) const {
        auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat);
        return static_cast<std::size_t>(it - offsets_.begin()) - 1;
    }

    std::size_t flat_index(std::size_t ring, std::size_t k) const {
        return offsets_[ring] + k;
    }

    // Half-open radial interval [lo, hi) of disc radii closest to ring i,
    // with the first interval starting at 0 and the last ending at 1. The
    // intervals tile [0, 1], which is what the area over-count relies on.
    std::pair<double, double> ring_interval(std::size_t i) const {
        double lo = i == 0 ? 0.0 : 0.5 * (radii_[i - 1] + radii_[i]);
        double hi = i + 1 == radii_.size() ? 1.0 : 0.5 * (radii_[i] + radii_[i + 1]);
        return {lo, hi};
    }

    double covering_radius() const {
        double h = 0.0;
        for (std::size_t i = 0; i < radii_.size(); ++i) {
            auto [lo, hi] = ring_interval(i);
            double radial = std::max(radii_[i] - lo, hi - radii_[i]);
            double arc = radii_[i] * kPi / angles_[i];
            h = std::max(h, radial + arc);
        }
        return h;
    }

    // Farthest a point of ring i's annulus sector can be from one of the
    // sector's two nodes; the per-ring analogue of covering_radius().
    double ring_covering_radius(std::size_t i) const {
        auto [lo, hi] = ring_interval(i);
        double radial = std::max(radii_[i] - lo, hi - radii_[i]);
        return radial + radii_[i] * kPi / angles_[i];
    }

    // Normalized area (dA = area / pi) of the annulus sector owned by one
    // node of ring i. Sector areas over a ring sum to the annulus area.
    double cell_area(std::size_t i) const {
        auto [lo, hi] = ring_interval(i);
        return (hi * hi - lo * lo) / angles_[i];
    }

    // Default layout: Chebyshev-spaced rings (clustered at 0 and 1), angular
    // counts proportional to the ring radius, plus a dedicated ring hugging
    // the boundary. All the phenomena this toolkit probes live near |z| = 1.
    static DiskGrid make_default(int rings = 256, int max_angles = 1024,
                                 double boundary_gap = 1e-6) {
        if (rings < 1 || max_angles < 8)
            throw argument_error("grid: need rings >= 1 and max_angles >= 8");
        if (!(boundary_gap > 0.0 && boundary_gap <= 1e-3))
            throw argument_error("grid: boundary_gap must lie in (0, 1e-3]");
        std::vector<double> radii;
        std::vector<int> counts;
        radii.reserve(rings + 1);
        counts.reserve(rings + 1);
        for (int j = 0; j < rings; ++j) {
            double r = 0.5 * (1.0 - std::cos(kPi * (j + 0.5) / rings));
            if (r >= 1.0 - boundary_gap) continue;
            radii.push_back(r);
            int a = static_cast<int>(std::ceil(4.0 * rings * r));
            counts.push_back(std::clamp(a, 8, max_angles));
        }
        radii.push_back(1.0 - boundary_gap);
        counts.push_back(max_angles);
        return DiskGrid(std::move(radii), std::move(counts), boundary_gap, "default-chebyshev");
    }

    // Uniform rings 1/n, 2/n, ..., r_max with arc spacing matched to the ring
    // gap. Used by the certified sup-norm bracket, where a simple covering
    // bound matters more than boundary clustering.
    static DiskGrid make_uniform(int resolution, double r_max = 1.0) {
        if (resolution < 1) throw argument_error("grid: resolution must be positive");
        std::vector<double> radii;
        std::vector<int> counts;
        for (int j = 1; j <= resolution; ++j) {
            double r = r_max * j / resolution;
            radii.push_back(r);
            counts.push_back(std::max(8, static_cast<int>(std::ceil(kTwoPi * r * resolution))));
        }
        return DiskGrid(std::move(radii), std::move(counts), 0.0, "uniform");
    }

  private:
    std::vector<double> radii_;
    std::vector<int> angles_;
    std::vector<std::size_t> offsets_;
    double boundary_gap_;
    std::string kind_;

    void validate() const {
        if (radii_.empty()) throw argument_error("grid: no rings");
        if (radii_.size() != angles_.size())
            throw argument_error("grid: ring/angle count mismatch");
        double prev = -1.0;
        for (double r : radii_) {
            if (!(r > prev)) throw argument_error("grid: ring radii must be strictly increasing");
            if (!(r >= 0.0 && r <= 1.0)) throw argument_error("grid: ring radius outside [0, 1]");
            prev = r;
        }
        for (int a : angles_)
            if (a < 1) throw argument_error("grid: angular count must be positive");
        if (boundary_gap_ != 0.0 && !(boundary_gap_ > 0.0 && boundary_gap_ <= 1e-3))
            throw argument_error("grid: boundary_gap must lie in (0, 1e-3]");
    }
};

}  // namespace bergtol
