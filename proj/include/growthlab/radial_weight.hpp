#pragma once

#include <functional>
#include <string>

#include "growthlab/errors.hpp"

namespace growthlab {

/// Nonnegative integrable weight on [0,1), extended radially to the disc by
/// w(z) = w(|z|).
class RadialWeight {
public:
    static RadialWeight constant(double c = 1.0);
    static RadialWeight power_one_minus(double beta); // (1-r)^beta, beta > -1
    static RadialWeight standard(double alpha);       // (1-r^2)^alpha, alpha > -1
    /// Wraps an arbitrary evaluable weight; validates nonnegativity on samples
    /// and finiteness of the L1 mass numerically.
    static RadialWeight from_function(std::function<double(double)> w, std::string label);

    double operator()(double r) const { return w_(r); }
    double l1_mass() const { return l1_; } // integral of w over (0,1)
    const std::string& label() const { return label_; }

private:
    RadialWeight(std::function<double(double)> w, std::string label, double l1)
        : w_(std::move(w)), label_(std::move(label)), l1_(l1) {}
    std::function<double(double)> w_;
    std::string label_;
    double l1_;
};

/// Associated weight: omega_star(r) = integral_r^1 w(s) log(s/r) s ds.
/// Requires 0 < r < 1.
double omega_star(const RadialWeight& w, double r);

/// Increasing gauge phi on [0,1) with phi(r)(1-r) -> infinity; used for
/// phi-normal norms. The self-similarity property is sampled diagnostically
/// only, never asserted as a verdict.
class SmoothIncreasing {
public:
    static SmoothIncreasing power(double beta); // (1-r)^{-beta}, beta > 1
    static SmoothIncreasing from_function(std::function<double(double)> phi, std::string label);

    double operator()(double r) const { return phi_(r); }
    const std::string& label() const { return label_; }

    struct Diagnostic {
        bool increasing = false;
        bool gauge_condition = false;       // phi(r)(1-r) increasing over the sampled tail
        double max_ratio_deviation = 0.0;   // sampled self-similarity defect near the boundary
    };
    Diagnostic sample_diagnostic() const;

private:
    SmoothIncreasing(std::function<double(double)> phi, std::string label)
        : phi_(std::move(phi)), label_(std::move(label)) {}
    std::function<double(double)> phi_;
    std::string label_;
};

} // namespace growthlab
