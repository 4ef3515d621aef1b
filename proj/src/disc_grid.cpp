#include "growthlab/disc_grid.hpp"

#include <algorithm>
#include <cmath>

#include "growthlab/errors.hpp"
#include "growthlab/quad1d.hpp"

namespace growthlab {

namespace {
constexpr int kInnerSegments = 10; // rings accumulate at 0 down to 2^-10
constexpr int kAngularMin = 64;
constexpr int kAngularMax = 8192;
} // namespace

DiscGrid DiscGrid::standard(int J, double angular_factor, int radial_per_segment) {
    if (J < 1 || J > 30) throw DomainError("DiscGrid: J out of range");
    if (radial_per_segment < 1) throw DomainError("DiscGrid: radial_per_segment must be >= 1");
    DiscGrid g;
    g.rings_J = J;
    g.angular_factor = angular_factor;
    g.radial_per_segment = radial_per_segment;

    // Segment boundaries: 0, 2^-10, ..., 1/2, 3/4, ..., 1-2^-J, 1.
    std::vector<double> bounds;
    std::vector<int> levels;
    bounds.push_back(0.0);
    for (int j = kInnerSegments; j >= 1; --j) {
        bounds.push_back(std::pow(2.0, -j));
        levels.push_back(0);
    }
    for (int j = 2; j <= J; ++j) {
        bounds.push_back(1.0 - std::pow(2.0, -j));
        levels.push_back(j - 1);
    }
    bounds.push_back(1.0);
    levels.push_back(J);

    const GaussRule rule = gauss_legendre(radial_per_segment);

    // Center node: sup evaluations see r=0 exactly; zero quadrature weight.
    g.rings.push_back(Ring{0.0, 0.0, 1, 0});

    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
        const double lo = bounds[s], hi = bounds[s + 1];
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int i = 0; i < radial_per_segment; ++i) {
            Ring ring;
            ring.r = mid + half * rule.x[i];
            ring.weight = rule.w[i] * half * 2.0 * ring.r; // integrates 2 r dr
            const double want = std::ceil(angular_factor / (1.0 - ring.r));
            ring.n_theta = static_cast<int>(std::clamp(want, double(kAngularMin), double(kAngularMax)));
            ring.level = levels[s];
            g.rings.push_back(ring);
        }
    }
    return g;
}

std::size_t DiscGrid::node_count() const {
    std::size_t n = 0;
    for (const Ring& r : rings) n += static_cast<std::size_t>(r.n_theta);
    return n;
}

double DiscGrid::total_mass() const {
    double m = 0.0;
    for (const Ring& r : rings) m += r.weight;
    return m;
}

Complex DiscGrid::node(std::size_t ring, int t) const {
    const Ring& rg = rings[ring];
    const double th = 2.0 * M_PI * t / rg.n_theta;
    return std::polar(rg.r, th);
}

std::size_t DiscGrid::node_index(std::size_t ring, int t) const {
    std::size_t base = 0;
    for (std::size_t i = 0; i < ring; ++i) base += static_cast<std::size_t>(rings[i].n_theta);
    return base + static_cast<std::size_t>(t);
}

} // namespace growthlab
