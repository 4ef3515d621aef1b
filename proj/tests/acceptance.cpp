// Acceptance suite: one pass/fail line per criterion, all tolerances pinned
// in code. Exit code = number of failed criteria.
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "growthlab/expr.hpp"
#include "growthlab/grid_ops.hpp"
#include "growthlab/harness.hpp"
#include "growthlab/quad1d.hpp"

using namespace growthlab;

namespace {

int g_failures = 0;

void criterion(int n, const char* label, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s — %s\n", ok ? "PASS" : "FAIL", n, label, detail.c_str());
    if (!ok) ++g_failures;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

double quantity(const Report& rep, const std::string& name) {
    for (const Quantity& q : rep.quantities)
        if (q.name == name) return q.value;
    return std::nan("");
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const DiscGrid grid = DiscGrid::standard(14);

    // ---- 1: power-chain identity over the rational catalog ----------------
    {
        std::mt19937 gen(11u);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::size_t triples = 0;
        double worst = 0.0;
        for (const auto& [name, f] : rational_catalog()) {
            (void)name;
            for (const int m : {2, 3}) {
                const SphericalFn base(f);
                const SphericalFn powd(power_fn(f, m));
                for (int i = 0; i < 1000; ++i) {
                    const double r = std::sqrt(unif(gen)) * 0.999;
                    const Complex z = std::polar(r, 2.0 * M_PI * unif(gen));
                    try {
                        const ExtendedValue fv = f.eval_extended(z);
                        if (fv.is_infinity()) continue;
                        const double t = std::abs(fv.value());
                        const double lhs = powd(z);
                        const double rhs = m * std::pow(t, m - 1.0) * (1.0 + t * t) /
                                           (1.0 + std::pow(t, 2.0 * m)) * base(z);
                        if (!std::isfinite(rhs)) continue;
                        worst = std::max(worst, rel(lhs, rhs));
                        ++triples;
                    } catch (const Error&) {
                        continue;
                    }
                }
            }
        }
        criterion(1, "power-chain identity", triples >= 10000 && worst < 1e-10,
                  fmt("%zu triples, max rel residual %.2e (< 1e-10)", triples, worst));
    }

    // ---- 2 & 3: theorem 1 scans and the proof-functional ceiling ----------
    {
        std::map<std::string, Report> reps;
        bool gates = true;
        bool ceiling_ok = true;
        std::string ceiling_detail;
        for (const Scenario& s : builtin_scenarios()) {
            if (!s.eq) continue;
            Report rep = run_theorem1(s);
            gates = gates && rep.status == "ok" && quantity(rep, "residual_max_scaled") < 1e-9;
            const double pmax = quantity(rep, "proof_I_max");
            const double ceil = quantity(rep, "proof_ceiling");
            if (!(pmax <= ceil)) {
                ceiling_ok = false;
                ceiling_detail += s.name + " exceeds; ";
            }
            reps.emplace(s.name, std::move(rep));
        }
        const double riccati = quantity(reps.at("riccati_c2"), "sup_ratio");
        const double tangent = quantity(reps.at("tangent_k0.7"), "sup_ratio");
        const double weier = quantity(reps.at("weierstrass_c2"), "sup_ratio");
        const double tan2 = quantity(reps.at("tangent_order2"), "sup_ratio");
        const double tan2_change = quantity(reps.at("tangent_order2"), "sup_ratio_refinement_change");
        const bool ok2 = gates && std::abs(riccati - 0.5) <= 0.02 && tangent <= 0.51 &&
                         std::abs(weier - 0.5) <= 0.02 && std::isfinite(tan2) && tan2_change <= 0.05;
        criterion(2, "theorem 1 scans", ok2,
                  fmt("riccati %.4f (0.5±0.02), tangent %.4f (<=0.51), weierstrass %.4f (0.5±0.02), "
                      "order-2 %.4f stable %.2f%%, gates %s",
                      riccati, tangent, weier, tan2, 100.0 * tan2_change, gates ? "ok" : "FAILED"));
        criterion(3, "proof-functional ceiling", ceiling_ok,
                  ceiling_ok ? "proof_I <= prod(M_l + 1) for l >= 1 at every catalog node (exact)"
                             : ceiling_detail);
    }

    // ---- 4: minimal M with exact arithmetic --------------------------------
    {
        const bool pins = minimal_M(riccati_equation()) == MVector{{0}} &&
                          minimal_M(tangent_order2_equation()) == MVector{{1, 0}} &&
                          minimal_M(weierstrass_equation()) == MVector{{0}};
        bool strict = true;
        for (const AlgebraicODE& eq :
             {riccati_equation(), tangent_order2_equation(), weierstrass_equation()}) {
            const MVector M = minimal_M(eq);
            strict = strict && satisfies_hypotheses(eq, M);
            for (std::size_t l = 0; l < M.order(); ++l) {
                MVector down = M;
                down.M[l] -= 1;
                if (down.M[l] >= 0) strict = strict && !satisfies_hypotheses(eq, down);
            }
        }
        criterion(4, "minimal M", pins && strict,
                  fmt("pinned (0), (1,0), (0) reproduced; unit decrements violate the hypotheses: %s",
                      strict ? "yes" : "no"));
    }

    // ---- 5: boundary exponents ---------------------------------------------
    {
        const std::vector<double> radii = default_exponent_radii();
        bool ok = true;
        double worst = 0.0;
        for (const double p : {0.2, 0.3, 0.5, 0.8}) {
            const double s = estimate_boundary_exponent(fp_subject(p), Complex(1.0), radii);
            worst = std::max(worst, std::abs(s - (p - 1.0)));
            ok = ok && std::abs(s - (p - 1.0)) <= 0.05;
            for (const int m : {2, 3}) {
                const double sm = estimate_boundary_exponent(power_fn(fp_subject(p), m), Complex(1.0), radii);
                worst = std::max(worst, std::abs(sm - (m * p - 1.0)));
                ok = ok && std::abs(sm - (m * p - 1.0)) <= 0.05;
            }
        }
        criterion(5, "boundary exponents", ok, fmt("max slope error %.4f (<= 0.05)", worst));
    }

    // ---- 6: quadrature pins -------------------------------------------------
    {
        const double mass = grid.total_mass();
        const RadialWeight one = RadialWeight::constant(1.0);
        const double w05 = omega_star(one, 0.5);
        const double w09 = omega_star(one, 0.9);
        const double dz = dirichlet_norm(MeroFn::var(), DirichletWeight::power(1.0), grid).value;
        const bool mass_ok = std::abs(mass - 1.0) <= 1e-6;
        const bool w_ok = std::abs(w05 - 0.159074) <= 1e-6 && std::abs(w09 - 0.005180) <= 1e-6;
        const bool d_ok = std::abs(dz - (2.0 * std::log(2.0) - 1.0)) <= 1e-4;
        criterion(6, "quadrature pins", mass_ok && w_ok && d_ok,
                  fmt("mass %.8f, omega*(0.5) %.6f, omega*(0.9) %.6f, dirichlet(z,1) %.6f vs pinned "
                      "0.386294 (independent 1-D reduction of the stated integrand gives %.6f)",
                      mass, w05, w09, dz, 1.0 - std::log(2.0)));
    }

    // ---- 7: two-circle comparison stability and Fubini consistency ----------
    {
        bool stable = true;
        double worst_change = 0.0;
        const DiscGrid fine = grid.refined();
        for (const auto& [name, f] : rational_catalog()) {
            (void)name;
            for (const int m : {2, 3}) {
                const auto [a0, b0] = yamashita_gap(f, m, 0.99, grid);
                const auto [a1, b1] = yamashita_gap(f, m, 0.99, fine);
                const double change = rel(a0 / (b0 + 1.0), a1 / (b1 + 1.0));
                worst_change = std::max(worst_change, change);
                stable = stable && change < 0.10;
            }
        }

        bool fubini = true;
        double worst_fubini = 0.0;
        const GaussRule outer = gauss_legendre(48);
        const RadialWeight one = RadialWeight::constant(1.0);
        for (const Complex c : {Complex(1.1), Complex(1.0, 1.0)}) {
            const MeroFn f = riccati_solution(c);
            const double lhs = dirichlet_norm(f, DirichletWeight::omega_star_of(one), grid).value;
            const SphericalFn sph(f);
            double rhs = 0.0;
            for (int i = 0; i < 48; ++i) {
                const double r = 0.5 + 0.5 * outer.x[static_cast<std::size_t>(i)];
                const SumResult A = integrate_over_subdisc(
                    grid, r, [&](Complex z, Complex u, std::size_t, int) -> std::optional<double> {
                        const double au = std::abs(u);
                        if (au < 1e-12) return std::nullopt;
                        const double v = sph(z);
                        return v * v * std::log(1.0 / au);
                    });
                rhs += 0.5 * outer.w[static_cast<std::size_t>(i)] * A.value * r;
            }
            worst_fubini = std::max(worst_fubini, rel(lhs, rhs));
            fubini = fubini && rel(lhs, rhs) < 1e-4;
        }
        criterion(7, "two-circle functionals", stable && fubini,
                  fmt("max ratio change %.3f%% (< 10%%), Fubini consistency rel %.2e (< 1e-4)",
                      100.0 * worst_change, worst_fubini));
    }

    // ---- 8: beta explorer ----------------------------------------------------
    {
        bool ok = true;
        std::string detail;
        for (const auto& [alpha, m] : std::vector<std::pair<double, int>>{{0.5, 2}, {0.9, 3}}) {
            std::vector<double> p_grid;
            for (int i = 1; i <= 18; ++i) p_grid.push_back(i * 0.05);
            p_grid.push_back((1.0 - alpha) / m);
            const Report rep = beta_explorer(alpha, m, p_grid);
            const double bound = quantity(rep, "family_bound");
            const double lo = 1.0 - (1.0 - alpha) / m;
            const bool in_bracket = bound >= lo - 0.02 && bound <= 1.0 + 0.02;
            ok = ok && std::abs(bound - lo) <= 0.02 && in_bracket;
            detail += fmt("(%.1f,%d): %.4f vs %.4f; ", alpha, m, bound, lo);
        }
        criterion(8, "beta explorer", ok, detail + "within 0.02 and inside the bracket");
    }

    // ---- 9: dirichlet counterexample trends -----------------------------------
    {
        const Report rep = dirichlet_counterexample(-1.0, 2, grid, 0.4);
        const double grow_f = quantity(rep, "growth_f_per_refinement");
        const double grow_fm = quantity(rep, "growth_fm_per_refinement");
        const bool diverges = grow_f > 0.20;
        const bool converges = std::abs(grow_fm) < 0.05;
        criterion(9, "dirichlet counterexample", diverges && converges,
                  fmt("f_p grows %.1f%% per refinement (> 20%%), f_p^2 changes %.2f%% (< 5%% required)",
                      100.0 * grow_f, 100.0 * grow_fm));
    }

    // ---- 10: coefficient classification ----------------------------------------
    {
        const Poly lin({Complex(1.0), Complex(-1.0)});
        CoefficientConditionConfig cfg;
        cfg.kind = CoefficientKind::HInf;

        AlgebraicODE ok_eq(1, 1, {{2}});
        ok_eq.set_coefficient(ExponentMultiIndex{1, {2}},
                              MeroFn::rational(Poly::constant(Complex(1.0)), lin));
        const bool pass1 = coefficient_condition(ok_eq, cfg, grid).all_pass;

        AlgebraicODE const_eq = riccati_equation();
        const bool pass2 = coefficient_condition(const_eq, cfg, grid).all_pass;

        AlgebraicODE bad_eq(1, 1, {{1}});
        bad_eq.set_coefficient(ExponentMultiIndex{1, {1}},
                               MeroFn::rational(Poly::constant(Complex(1.0)), lin * lin));
        const CoefficientReport bad = coefficient_condition(bad_eq, cfg, grid);

        const std::vector<CoefficientKind> kinds = {CoefficientKind::HInf, CoefficientKind::HInfPhi,
                                                    CoefficientKind::Bergman, CoefficientKind::UbcType};
        const Report cls = classify(riccati_equation(), kinds, grid);
        const bool four = cls.labels.at("conclusions") == "N,N^phi,D#_omega*,UBC";
        criterion(10, "coefficient classification",
                  pass1 && pass2 && !bad.all_pass && bad.conclusion == "withheld" && four,
                  fmt("(1-z)^-1 pass, constants pass, (1-z)^-2 fail/withheld, conclusions {%s}",
                      cls.labels.at("conclusions").c_str()));
    }

    // ---- 11: parser and the exit-code contract ----------------------------------
    {
        bool pins = true;
        try {
            pins = pins && to_merofn(parse_expr("1/(2-z)", ExprContext::Function))
                                   .eval_extended(Complex(0.0))
                                   .value()
                                   .real() == 0.5;
            const MeroFn t = to_merofn(parse_expr("tan(0.7*z)^2 + 1", ExprContext::Function));
            (void)t.derivative(2);
        } catch (const Error&) {
            pins = false;
        }
        bool ctx_violation = false;
        try {
            (void)parse_expr("powp(0.5)", ExprContext::Weight);
        } catch (const ParseError&) {
            ctx_violation = true;
        }

        std::mt19937 gen(3u);
        std::uniform_real_distribution<double> unif(-3.0, 3.0);
        int roundtrips = 0;
        bool rt_ok = true;
        while (roundtrips < 200 && rt_ok) {
            // random sums/products/powers of the call forms
            const double a = unif(gen), b = std::abs(unif(gen)), c = unif(gen);
            const int e = 1 + static_cast<int>(gen() % 3);
            const std::string text = fmt("((%.6f + %.6fi) * z + tan(0.3*z))^%d / (powp(0.4) + %.6f) - "
                                         "mobius(0.2+0.1i)(z^2) * (%.6f)",
                                         a, b, e, 2.0 + std::abs(unif(gen)), c);
            try {
                const Expr tree = parse_expr(text, ExprContext::Function);
                const Expr back = parse_expr(print_expr(tree), ExprContext::Function);
                for (int i = 0; i < 5; ++i) {
                    const Complex z = std::polar(0.4 + 0.1 * (i % 3), 0.7 * i);
                    const Complex va = eval_expr(tree, z), vb = eval_expr(back, z);
                    rt_ok = rt_ok && std::abs(va - vb) <= 1e-14 * std::max(1.0, std::abs(va));
                }
                ++roundtrips;
            } catch (const ParseError&) {
                rt_ok = false;
            }
        }

        bool exits_ok = true;
        std::string exit_detail = "cli not provided, exit-code contract unchecked";
        if (!cli.empty()) {
            const auto dir = std::filesystem::temp_directory_path() / "growthlab_acceptance";
            std::filesystem::remove_all(dir);
            std::filesystem::create_directories(dir);
            const auto shell = [&](const std::string& args) {
                const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
                const int raw = std::system(cmd.c_str());
                return raw < 0 ? raw : (raw >> 8);
            };
            const int pass_code =
                shell("scenarios --name riccati_c2 --grid-rings 8 --out " + (dir / "a").string());
            const int fail_code = shell("theorem1 --f z --order 1 --degree 1 --coeff 'k=1 j=(2) expr=\"-1\"' "
                                        "--grid-rings 6 --out " +
                                        (dir / "b").string());
            const int usage_code = shell("theorem1 --f '1/(2-' --order 1 --degree 1 "
                                         "--coeff 'k=1 j=(2) expr=\"-1\"' --out " +
                                         (dir / "c").string());
            exits_ok = pass_code == 0 && fail_code == 1 && usage_code == 2;
            exit_detail = fmt("exit codes: pass %d (=0), gate failure %d (=1), parse error %d (=2)",
                              pass_code, fail_code, usage_code);
        }
        criterion(11, "parser and exit codes", pins && ctx_violation && rt_ok && exits_ok,
                  fmt("pinned examples %s, 200 round-trips %s, %s", pins && ctx_violation ? "ok" : "FAILED",
                      rt_ok ? "ok" : "FAILED", exit_detail.c_str()));
    }

    std::printf("%d of 11 criteria passed\n", 11 - g_failures);
    return g_failures;
}
