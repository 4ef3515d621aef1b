#include "growthlab/scenario.hpp"

#include <cmath>

namespace growthlab {

MeroFn riccati_solution(Complex c) { return MeroFn::rational(Poly::constant(Complex(1.0)), Poly({c, Complex(-1.0)})); }

AlgebraicODE riccati_equation() {
    AlgebraicODE eq(1, 1, {{2}});
    eq.set_coefficient(ExponentMultiIndex{1, {2}}, MeroFn::constant(Complex(-1.0)));
    return eq;
}

MeroFn tangent_solution(double kappa) { return MeroFn::scaled_tan(Complex(kappa)); }

AlgebraicODE tangent_equation(double kappa) {
    AlgebraicODE eq(1, 1, {{2}});
    eq.set_coefficient(ExponentMultiIndex{1, {0}}, MeroFn::constant(Complex(-kappa)));
    eq.set_coefficient(ExponentMultiIndex{1, {2}}, MeroFn::constant(Complex(-kappa)));
    return eq;
}

MeroFn weierstrass_solution(Complex c) {
    // (z-c)^{-2} as a rational handle.
    const Poly lin({-c, Complex(1.0)});
    return MeroFn::rational(Poly::constant(Complex(1.0)), lin * lin);
}

AlgebraicODE weierstrass_equation() {
    AlgebraicODE eq(1, 2, {{0}, {3}});
    eq.set_coefficient(ExponentMultiIndex{2, {3}}, MeroFn::constant(Complex(-4.0)));
    return eq;
}

MeroFn tangent_order2_solution() { return MeroFn::scaled_tan(Complex(1.0)); }

AlgebraicODE tangent_order2_equation() {
    AlgebraicODE eq(2, 1, {{3, 0}});
    eq.set_coefficient(ExponentMultiIndex{1, {1, 0}}, MeroFn::constant(Complex(-2.0)));
    eq.set_coefficient(ExponentMultiIndex{1, {3, 0}}, MeroFn::constant(Complex(-2.0)));
    return eq;
}

MeroFn fp_subject(double p) { return MeroFn::branch_power(p); }

namespace {

Expectation eq_expect(std::string quantity, double value, double tol, std::string note) {
    return Expectation{std::move(quantity), value, tol, Expectation::Kind::Equal, std::move(note)};
}

Expectation le_expect(std::string quantity, double value, std::string note) {
    return Expectation{std::move(quantity), value, 0.0, Expectation::Kind::AtMost, std::move(note)};
}

Scenario riccati_scenario(const std::string& name, Complex c) {
    Scenario s;
    s.name = name;
    s.eq = riccati_equation();
    s.f = riccati_solution(c);
    // sup f# = 1/(1 + dist(c, disc)^2) with dist = |c| - 1, attained at c/|c|.
    const double d = std::abs(c) - 1.0;
    s.expect.push_back(eq_expect("sup_ratio", 1.0 / (1.0 + d * d), 0.02,
                                 "closed form 1/(1+(|c|-1)^2), boundary limit"));
    return s;
}

Scenario tangent_scenario(const std::string& name, double kappa) {
    Scenario s;
    s.name = name;
    s.eq = tangent_equation(kappa);
    s.f = tangent_solution(kappa);
    // f# = |kappa||1+f^2|/(1+|f|^2) <= |kappa|, equality on the real axis.
    s.expect.push_back(eq_expect("sup_ratio", 0.5, 0.02, "triangle inequality; equality on the real axis"));
    s.expect.push_back(le_expect("sup_ratio", 0.51, "f# <= |kappa|, rhs = 2|kappa|"));
    return s;
}

Scenario weierstrass_scenario(const std::string& name, Complex c) {
    Scenario s;
    s.name = name;
    s.eq = weierstrass_equation();
    s.f = weierstrass_solution(c);
    // ratio(t) = t/(1+t^4) with t = |z-c| over (|c|-1, |c|+1); interior
    // maximum at t = 3^{-1/4} when reachable, else the boundary limit.
    const double tmin = std::abs(c) - 1.0;
    const double tstar = std::pow(3.0, -0.25);
    const double t = std::max(tmin, tstar);
    const double ratio = t / (1.0 + t * t * t * t);
    s.expect.push_back(eq_expect("sup_ratio", ratio, 0.02, "closed form t/(1+t^4), monotone in t"));
    return s;
}

Scenario tangent_order2_scenario() {
    Scenario s;
    s.name = "tangent_order2";
    s.eq = tangent_order2_equation();
    s.f = tangent_order2_solution();
    s.M = MVector{{1, 0}};
    s.check_refinement_stability = true;
    // Pinned from the first convergent run (stable to 6 digits from J=12 on);
    // the refinement-stability expectation guards it.
    s.expect.push_back(eq_expect("sup_ratio", 0.407593, 0.01, "first convergent run, interior real argmax"));
    s.expect.push_back(le_expect("sup_ratio_refinement_change", 0.05, "stable under one refinement"));
    return s;
}

Scenario fp_scenario(double p) {
    Scenario s;
    s.name = "fp_p" + std::to_string(p).substr(0, 3);
    s.f = fp_subject(p);
    s.fp_exponent = p;
    s.expect.push_back(eq_expect("boundary_exponent", p - 1.0, 0.05, "f_p# comparable to |1-z|^{p-1}"));
    return s;
}

} // namespace

std::vector<Scenario> builtin_scenarios() {
    std::vector<Scenario> out;
    out.push_back(riccati_scenario("riccati_c1.1", Complex(1.1)));
    out.push_back(riccati_scenario("riccati_c1.5", Complex(1.5)));
    out.push_back(riccati_scenario("riccati_c2", Complex(2.0)));
    out.push_back(riccati_scenario("riccati_c1+i", Complex(1.0, 1.0)));
    out.push_back(tangent_scenario("tangent_k0.3", 0.3));
    out.push_back(tangent_scenario("tangent_k0.7", 0.7));
    out.push_back(tangent_scenario("tangent_k1", 1.0));
    out.push_back(weierstrass_scenario("weierstrass_c2", Complex(2.0)));
    out.push_back(weierstrass_scenario("weierstrass_c1.5+0.5i", Complex(1.5, 0.5)));
    out.push_back(tangent_order2_scenario());
    for (double p : {0.2, 0.3, 0.5, 0.8}) out.push_back(fp_scenario(p));
    return out;
}

std::optional<Scenario> scenario_by_name(const std::string& name) {
    for (Scenario& s : builtin_scenarios())
        if (s.name == name) return std::move(s);
    return std::nullopt;
}

std::vector<std::pair<std::string, MeroFn>> rational_catalog() {
    std::vector<std::pair<std::string, MeroFn>> out;
    for (Complex c : {Complex(1.1), Complex(1.5), Complex(2.0), Complex(1.0, 1.0)})
        out.emplace_back("riccati-style pole at " + std::to_string(c.real()), riccati_solution(c));
    out.emplace_back("double pole at 2", weierstrass_solution(Complex(2.0)));
    out.emplace_back("double pole at 1.5+0.5i", weierstrass_solution(Complex(1.5, 0.5)));
    return out;
}

} // namespace growthlab
