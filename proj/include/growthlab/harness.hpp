#pragma once

#include <span>

#include "growthlab/norms.hpp"
#include "growthlab/scenario.hpp"

namespace growthlab {

/// Residual gate, ratio scan and proof-functional ceiling sweep for one
/// equation scenario; expectations compare the measured sup ratio against the
/// scenario's pinned constant.
Report run_theorem1(const Scenario& s, bool parallel = true);

/// Least-squares slope of log f#(r * approach) against log(1 - r).
/// Needs at least four radii.
double estimate_boundary_exponent(const MeroFn& f, Complex approach, std::span<const double> radii);

/// Default radius ladder 1 - 2^{-j}, j = 8..18, deep enough that the
/// lower-order terms of f_p# no longer bias the slope.
std::vector<double> default_exponent_radii();

/// Power map comparison suite: pointwise identity residuals, the log-kernel
/// integral comparison A/(B+1), the omega_star-weighted comparison for the
/// constant weight, and the composed variant over Moebius centers.
Report run_theorem2_suite(const MeroFn& f, int m, const DiscGrid& grid, bool parallel = true);

/// Within the f_p family: slope estimates for f_p and f_p^m per p, the
/// admissible set under the alpha-normal test, and the implied lower bound
/// max{1 - p : mp - 1 >= -alpha} compared against [1-(1-alpha)/m, 1].
Report beta_explorer(double alpha, int m, std::span<const double> p_grid);

/// Convergence trends of the Dirichlet-type integral for f_p versus f_p^m at
/// negative alpha; p defaults to the midpoint of (-alpha/(2m), -alpha/2].
Report dirichlet_counterexample(double alpha, int m, const DiscGrid& grid,
                                std::optional<double> p_choice = std::nullopt, bool parallel = true);

/// Classification of a first order equation: runs the requested coefficient
/// conditions and aggregates verdicts plus the implied solution-class
/// conclusions.
Report classify(const AlgebraicODE& eq, std::span<const CoefficientKind> kinds, const DiscGrid& grid,
                bool parallel = true);

/// Dispatch: equation scenarios run the scan, boundary-exponent subjects run
/// the estimator.
Report run_scenario(const Scenario& s, bool parallel = true);

std::vector<Complex> default_mobius_centers();

} // namespace growthlab
