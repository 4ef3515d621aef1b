#pragma once

#include <cstddef>
#include <vector>

#include "growthlab/poly.hpp"

namespace growthlab {

/// One ring of the polar grid: equally spaced angular nodes at a fixed
/// radius. `weight` is the total radial quadrature weight of the ring under
/// the normalized area measure dA = r dr dtheta / pi (so the full-grid weight
/// sum is 1); each node carries weight / n_theta.
struct Ring {
    double r = 0.0;
    double weight = 0.0;
    int n_theta = 1;
    int level = 0; // outer geometric level j (1..J); 0 for center/inner rings
};

/// Polar quadrature grid on the unit disc. Radial nodes are Gauss-Legendre
/// nodes inside geometric segments that accumulate at both r=0 (fixed depth,
/// for log-kernel accuracy at the center) and r=1 (depth J, where the
/// boundary behavior lives). Angular counts grow like 1/(1-r) up to a cap.
struct DiscGrid {
    int rings_J = 14;
    double angular_factor = 16.0;
    int radial_per_segment = 4;
    std::vector<Ring> rings;

    static DiscGrid standard(int J = 14, double angular_factor = 16.0, int radial_per_segment = 4);

    DiscGrid refined() const { return standard(rings_J + 1, angular_factor, radial_per_segment); }
    DiscGrid coarsened() const { return standard(rings_J - 1, angular_factor, radial_per_segment); }

    std::size_t node_count() const;
    double total_mass() const;

    Complex node(std::size_t ring, int t) const;
    double node_weight(std::size_t ring) const {
        return rings[ring].weight / rings[ring].n_theta;
    }

    /// Global lexicographic node index (ring-major, then angular position).
    std::size_t node_index(std::size_t ring, int t) const;
};

} // namespace growthlab
