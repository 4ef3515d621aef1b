// Benchmark of the OpenMP grid kernels against the serial reference
// implementations: sup reduction, weighted quadrature and the full scan.
#include <chrono>
#include <cmath>
#include <cstdio>

#include "growthlab/grid_ops.hpp"
#include "growthlab/harness.hpp"
#include "growthlab/norms.hpp"
#include "growthlab/scenario.hpp"

using namespace growthlab;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class F>
double timed(const char* name, double serial_ms, F&& body) {
    const auto t0 = Clock::now();
    body();
    const double ms = ms_since(t0);
    if (serial_ms > 0.0)
        std::printf("  %-28s %9.1f ms   speedup %.2fx\n", name, ms, serial_ms / ms);
    else
        std::printf("  %-28s %9.1f ms\n", name, ms);
    return ms;
}

} // namespace

int main(int argc, char** argv) {
    const int J = argc > 1 ? std::atoi(argv[1]) : 14;
    const DiscGrid grid = DiscGrid::standard(J);
    std::printf("grid: J=%d, %zu nodes, %d workers\n", J, grid.node_count(), effective_workers());

    const MeroFn f = riccati_solution(Complex(1.1));
    const SphericalFn sph(f);
    const auto qfn = [&](Complex z, std::size_t, int) -> std::optional<double> {
        const double v = sph(z);
        return v * v * (1.0 - std::norm(z));
    };

    double svalue = 0.0, pvalue = 0.0;
    std::printf("sup kernel (alpha-normal quantity):\n");
    const double sup_serial =
        timed("serial reference", 0.0, [&] { svalue = sup_over_grid_serial(grid, qfn).value; });
    timed("openmp", sup_serial, [&] { pvalue = sup_over_grid(grid, qfn).value; });
    std::printf("  agreement: |serial - parallel| = %.3e\n", std::abs(svalue - pvalue));

    std::printf("quadrature kernel (weighted Dirichlet integrand):\n");
    const double quad_serial =
        timed("serial reference", 0.0, [&] { svalue = integrate_over_grid_serial(grid, qfn).value; });
    timed("openmp", quad_serial, [&] { pvalue = integrate_over_grid(grid, qfn).value; });
    std::printf("  agreement: rel = %.3e\n", std::abs(svalue - pvalue) / std::abs(svalue));

    std::printf("full bound-ratio scan (riccati catalog entry):\n");
    const AlgebraicODE eq = riccati_equation();
    const MVector M = minimal_M(eq);
    ScanOptions opts;
    opts.parallel = false;
    double sr1 = 0.0, sr2 = 0.0;
    const double scan_serial =
        timed("serial reference", 0.0, [&] { sr1 = theorem1_scan(eq, f, M, grid, opts).sup_ratio; });
    opts.parallel = true;
    timed("openmp", scan_serial, [&] { sr2 = theorem1_scan(eq, f, M, grid, opts).sup_ratio; });
    std::printf("  agreement: |serial - parallel| = %.3e\n", std::abs(sr1 - sr2));
    return 0;
}
