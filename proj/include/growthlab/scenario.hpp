#pragma once

#include <optional>
#include <string>
#include <vector>

#include "growthlab/ade.hpp"
#include "growthlab/merofn.hpp"
#include "growthlab/report.hpp"

namespace growthlab {

struct GridSpec {
    int rings_J = 14;
    double angular_factor = 16.0;
    DiscGrid build() const { return DiscGrid::standard(rings_J, angular_factor); }
};

/// One catalog entry: an equation with a manufactured solution, or a bare
/// subject function with class expectations. Pinned constants come from
/// hand-derived closed forms where available, otherwise from a first
/// convergent run; the note field records which.
struct Scenario {
    std::string name;
    std::optional<AlgebraicODE> eq;
    MeroFn f = MeroFn::constant(Complex(0.0));
    std::optional<MVector> M;
    GridSpec grid;
    std::vector<Expectation> expect;
    std::optional<double> fp_exponent; // set for boundary-exponent subjects
    bool check_refinement_stability = false;
};

std::vector<Scenario> builtin_scenarios();
std::optional<Scenario> scenario_by_name(const std::string& name);

/// Rational members of the catalog (solution handles only), used by the
/// identity and two-circle comparison sweeps.
std::vector<std::pair<std::string, MeroFn>> rational_catalog();

// Catalog building blocks (used by tests as well).
MeroFn riccati_solution(Complex c);            // 1/(c - z)
AlgebraicODE riccati_equation();               // f' - f^2 = 0
MeroFn tangent_solution(double kappa);         // tan(kappa z)
AlgebraicODE tangent_equation(double kappa);   // f' - kappa - kappa f^2 = 0
MeroFn weierstrass_solution(Complex c);        // (z - c)^{-2}
AlgebraicODE weierstrass_equation();           // (f')^2 - 4 f^3 = 0
MeroFn tangent_order2_solution();              // tan z
AlgebraicODE tangent_order2_equation();        // f'' - 2 f - 2 f^3 = 0
MeroFn fp_subject(double p);                   // (1 - z)^{-p}

} // namespace growthlab
