#pragma once

#include <functional>
#include <vector>

namespace growthlab {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

GaussRule gauss_legendre(int n);

/// Adaptive quadrature of f over [a, b] to the given absolute tolerance.
/// Handles integrable endpoint singularities.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-10);

} // namespace growthlab
