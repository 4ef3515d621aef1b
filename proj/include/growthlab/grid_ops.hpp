#pragma once

#include <limits>
#include <optional>

#include "growthlab/disc_grid.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace growthlab {

/// Worker cap from GROWTHLAB_THREADS (0 = no cap, use the OpenMP default).
int worker_cap();
/// Number of threads the parallel kernels will actually use.
int effective_workers();
/// True when built with OpenMP and more than one worker is available.
bool parallel_default();

struct SupResult {
    double value = 0.0;
    Complex argmax{};
    std::size_t node_index = std::numeric_limits<std::size_t>::max();
    std::size_t skipped = 0;
    bool any = false;
    std::vector<double> level_sup; // indexed by ring level (0..J)
};

struct SumResult {
    double value = 0.0;
    std::size_t skipped = 0;
};

namespace gridops_detail {

// fn(z, ring, theta) -> optional<double>; nullopt counts as a skipped node.
// fn must not throw: evaluation failures are reported by returning nullopt.
template <class Fn>
SupResult sup_ring(const DiscGrid& grid, std::size_t i, const Fn& fn) {
    SupResult res;
    const Ring& ring = grid.rings[i];
    for (int t = 0; t < ring.n_theta; ++t) {
        const std::optional<double> v = fn(grid.node(i, t), i, t);
        if (!v) {
            ++res.skipped;
            continue;
        }
        if (!res.any || *v > res.value) {
            res.any = true;
            res.value = *v;
            res.argmax = grid.node(i, t);
            res.node_index = grid.node_index(i, t);
        }
    }
    return res;
}

template <class Fn>
SumResult sum_ring(const DiscGrid& grid, std::size_t i, const Fn& fn) {
    SumResult res;
    const Ring& ring = grid.rings[i];
    if (ring.weight == 0.0) return res;
    const double w = grid.node_weight(i);
    double acc = 0.0;
    for (int t = 0; t < ring.n_theta; ++t) {
        const std::optional<double> v = fn(grid.node(i, t), i, t);
        if (!v) {
            ++res.skipped;
            continue;
        }
        acc += *v;
    }
    res.value = acc * w;
    return res;
}

inline SupResult combine_sup(const DiscGrid& grid, std::vector<SupResult>&& per_ring) {
    SupResult out;
    out.level_sup.assign(static_cast<std::size_t>(grid.rings_J) + 1, 0.0);
    for (std::size_t i = 0; i < per_ring.size(); ++i) {
        const SupResult& r = per_ring[i];
        out.skipped += r.skipped;
        if (!r.any) continue;
        const std::size_t lvl = static_cast<std::size_t>(grid.rings[i].level);
        out.level_sup[lvl] = std::max(out.level_sup[lvl], r.value);
        // Ties break toward the lexicographically smallest node index.
        if (!out.any || r.value > out.value || (r.value == out.value && r.node_index < out.node_index)) {
            out.any = true;
            out.value = r.value;
            out.argmax = r.argmax;
            out.node_index = r.node_index;
        }
    }
    return out;
}

} // namespace gridops_detail

/// Serial reference reduction: supremum of fn over all grid nodes.
template <class Fn>
SupResult sup_over_grid_serial(const DiscGrid& grid, const Fn& fn) {
    std::vector<SupResult> per_ring(grid.rings.size());
    for (std::size_t i = 0; i < grid.rings.size(); ++i) per_ring[i] = gridops_detail::sup_ring(grid, i, fn);
    return gridops_detail::combine_sup(grid, std::move(per_ring));
}

/// OpenMP kernel; ring partials are combined in fixed ring order, so the
/// result matches the serial reference bit for bit when fn is deterministic.
template <class Fn>
SupResult sup_over_grid(const DiscGrid& grid, const Fn& fn) {
#ifdef _OPENMP
    std::vector<SupResult> per_ring(grid.rings.size());
    const int nw = effective_workers();
#pragma omp parallel for schedule(dynamic) num_threads(nw)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.rings.size()); ++i) {
        per_ring[static_cast<std::size_t>(i)] = gridops_detail::sup_ring(grid, static_cast<std::size_t>(i), fn);
    }
    return gridops_detail::combine_sup(grid, std::move(per_ring));
#else
    return sup_over_grid_serial(grid, fn);
#endif
}

/// Serial reference quadrature of fn against the grid weights.
template <class Fn>
SumResult integrate_over_grid_serial(const DiscGrid& grid, const Fn& fn) {
    SumResult out;
    for (std::size_t i = 0; i < grid.rings.size(); ++i) {
        const SumResult r = gridops_detail::sum_ring(grid, i, fn);
        out.value += r.value;
        out.skipped += r.skipped;
    }
    return out;
}

template <class Fn>
SumResult integrate_over_grid(const DiscGrid& grid, const Fn& fn) {
#ifdef _OPENMP
    std::vector<SumResult> per_ring(grid.rings.size());
    const int nw = effective_workers();
#pragma omp parallel for schedule(dynamic) num_threads(nw)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.rings.size()); ++i) {
        per_ring[static_cast<std::size_t>(i)] = gridops_detail::sum_ring(grid, static_cast<std::size_t>(i), fn);
    }
    SumResult out;
    for (const SumResult& r : per_ring) {
        out.value += r.value;
        out.skipped += r.skipped;
    }
    return out;
#else
    return integrate_over_grid_serial(grid, fn);
#endif
}

/// Quadrature over the subdisc D(0, radius) by scaling the unit grid:
/// the integral of g over D(0,R) equals R^2 times the integral of g(R u)
/// over the unit disc in u.
template <class Fn>
SumResult integrate_over_subdisc(const DiscGrid& grid, double radius, const Fn& fn) {
    SumResult res = integrate_over_grid(
        grid, [&](Complex u, std::size_t ring, int t) { return fn(radius * u, u, ring, t); });
    res.value *= radius * radius;
    return res;
}

} // namespace growthlab
