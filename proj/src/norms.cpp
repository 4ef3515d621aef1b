#include "growthlab/norms.hpp"

#include <cmath>

#include "growthlab/grid_ops.hpp"

namespace growthlab {

namespace {

constexpr double kGreenExclusionRadius = 1e-4;

std::vector<double> tail_levels(const std::vector<double>& level_sup) {
    std::vector<double> tail;
    const std::size_t n = level_sup.size();
    for (std::size_t i = n >= 3 ? n - 3 : 0; i < n; ++i) tail.push_back(level_sup[i]);
    return tail;
}

SupEstimate finish_sup(const SupResult& sup) {
    SupEstimate est;
    est.argmax = sup.argmax;
    est.skipped = sup.skipped;
    est.tail_level_sup = tail_levels(sup.level_sup);
    est.trend = classify_trend(est.tail_level_sup);
    if (sup.value > kOverflowCap) {
        est.overflow = true;
        est.value = kOverflowCap;
    } else {
        est.value = sup.any ? sup.value : 0.0;
    }
    return est;
}

template <class Fn>
SupResult run_sup(const DiscGrid& grid, bool parallel, const Fn& fn) {
    return parallel ? sup_over_grid(grid, fn) : sup_over_grid_serial(grid, fn);
}

template <class Fn>
SumResult run_sum(const DiscGrid& grid, bool parallel, const Fn& fn) {
    return parallel ? integrate_over_grid(grid, fn) : integrate_over_grid_serial(grid, fn);
}

} // namespace

Trend classify_trend(const std::vector<double>& level_sup) {
    if (level_sup.size() < 2) return Trend::Flat;
    const double first = level_sup.front();
    const double last = level_sup.back();
    const double floor = 1e-300;
    if (last > 1.05 * std::max(first, floor)) return Trend::Growing;
    if (last < 0.95 * first) return Trend::Decaying;
    return Trend::Flat;
}

SupEstimate normal_norm(const MeroFn& f, double alpha, const DiscGrid& grid, bool parallel) {
    const SphericalFn sph(f);
    const auto fn = [&](Complex z, std::size_t, int) -> std::optional<double> {
        try {
            const double q = sph(z) * std::pow(1.0 - std::norm(z), alpha);
            return std::isfinite(q) ? std::optional<double>(q) : std::nullopt;
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    return finish_sup(run_sup(grid, parallel, fn));
}

SupEstimate phi_normal_norm(const MeroFn& f, const SmoothIncreasing& phi, const DiscGrid& grid, bool parallel) {
    const SphericalFn sph(f);
    const auto fn = [&](Complex z, std::size_t, int) -> std::optional<double> {
        try {
            const double q = sph(z) / phi(std::abs(z));
            return std::isfinite(q) ? std::optional<double>(q) : std::nullopt;
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    return finish_sup(run_sup(grid, parallel, fn));
}

std::string DirichletWeight::label() const {
    if (kind == Kind::PowerAlpha) return "alpha:" + std::to_string(alpha);
    return "omega_star(" + omega->label() + ")";
}

namespace {

// omega_star is radial: precompute per ring instead of per node.
std::vector<double> ring_weights(const DirichletWeight& w, const DiscGrid& grid) {
    std::vector<double> out(grid.rings.size(), 0.0);
    for (std::size_t i = 0; i < grid.rings.size(); ++i) {
        const double r = grid.rings[i].r;
        if (w.kind == DirichletWeight::Kind::PowerAlpha)
            out[i] = std::pow(1.0 - r * r, w.alpha);
        else
            out[i] = (r > 0.0 && r < 1.0) ? omega_star(*w.omega, r) : 0.0;
    }
    return out;
}

double dirichlet_value(const MeroFn& f, const DirichletWeight& w, const DiscGrid& grid, bool parallel,
                       std::size_t* skipped) {
    const SphericalFn sph(f);
    const std::vector<double> rw = ring_weights(w, grid);
    const auto fn = [&](Complex z, std::size_t ring, int) -> std::optional<double> {
        try {
            const double s = sph(z);
            const double v = s * s * rw[ring];
            return std::isfinite(v) ? std::optional<double>(v) : std::nullopt;
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    const SumResult res = run_sum(grid, parallel, fn);
    if (skipped) *skipped = res.skipped;
    return res.value;
}

} // namespace

IntegralEstimate dirichlet_norm(const MeroFn& f, const DirichletWeight& w, const DiscGrid& grid, bool parallel) {
    IntegralEstimate est;
    est.value = dirichlet_value(f, w, grid, parallel, &est.skipped);
    if (grid.rings_J > 2) {
        const double coarse = dirichlet_value(f, w, grid.coarsened(), parallel, nullptr);
        est.refinement_change = std::abs(est.value - coarse) / std::max(std::abs(est.value), 1e-300);
    }
    return est;
}

UbcEstimate ubc_norm(const MeroFn& f, std::span<const Complex> a_samples, const DiscGrid& grid, UbcKernel kernel,
                     bool parallel) {
    const SphericalFn sph(f);
    UbcEstimate best;
    bool any = false;
    for (const Complex a : a_samples) {
        if (!(std::abs(a) < 1.0)) throw DomainError("ubc_norm: sample center must satisfy |a| < 1");
        const auto fn = [&](Complex z, std::size_t, int) -> std::optional<double> {
            try {
                const double t = std::abs(mobius(a, z));
                double kv;
                if (kernel == UbcKernel::Green) {
                    if (std::abs(z - a) < kGreenExclusionRadius) return std::nullopt;
                    kv = std::log(1.0 / t);
                } else {
                    kv = 1.0 - t * t;
                }
                const double s = sph(z);
                const double v = s * s * kv;
                return std::isfinite(v) ? std::optional<double>(v) : std::nullopt;
            } catch (const Error&) {
                return std::nullopt;
            }
        };
        const SumResult res = run_sum(grid, parallel, fn);
        double err = 0.0;
        if (kernel == UbcKernel::Green) {
            // Mass of the excluded disc D(a, rho): the kernel behaves like
            // log((1-|a|^2)/|z-a|) there; the integral of log(1/|z-a|) over
            // the disc is rho^2 log(1/rho) + rho^2/2 under normalized area.
            const double rho = kGreenExclusionRadius;
            double fa = 0.0;
            try {
                fa = sph(a);
            } catch (const Error&) {
                fa = 0.0;
            }
            const double kernel_mass =
                rho * rho * (std::log(1.0 / rho) + 0.5 + std::max(0.0, std::log(1.0 - std::norm(a))));
            err = fa * fa * kernel_mass;
        }
        if (!any || res.value > best.value) {
            any = true;
            best.value = res.value;
            best.argmax_a = a;
            best.exclusion_error_bar = err;
            best.skipped = res.skipped;
        }
    }
    if (!any) throw DomainError("ubc_norm: empty sample set");
    return best;
}

std::pair<double, double> yamashita_gap(const MeroFn& f, int m, double r, const DiscGrid& grid, bool parallel) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("yamashita_gap: r must lie in (0,1)");
    if (m < 2) throw DomainError("yamashita_gap: m must be >= 2");
    const SphericalFn base(f);
    const SphericalFn powd(power_fn(f, m));
    const auto make_fn = [&](const SphericalFn& s) {
        return [&grid, &s, r](Complex z, Complex u, std::size_t, int) -> std::optional<double> {
            const double au = std::abs(u);
            if (au < 1e-12) return std::nullopt; // kernel singularity at the center
            try {
                const double v = s(z);
                const double val = v * v * std::log(1.0 / au);
                return std::isfinite(val) ? std::optional<double>(val) : std::nullopt;
            } catch (const Error&) {
                return std::nullopt;
            }
        };
    };
    // log(r/|z|) with z = r u equals log(1/|u|): same unit grid, scaled nodes.
    const auto run = [&](const SphericalFn& s) {
        const auto fn = make_fn(s);
        if (parallel) return integrate_over_subdisc(grid, r, fn);
        SumResult res = integrate_over_grid_serial(
            grid, [&](Complex u, std::size_t ring, int t) { return fn(r * u, u, ring, t); });
        res.value *= r * r;
        return res;
    };
    return {run(base).value, run(powd).value};
}

std::string coefficient_kind_name(CoefficientKind k) {
    switch (k) {
    case CoefficientKind::HInf: return "hinf";
    case CoefficientKind::HInfPhi: return "hinf-phi";
    case CoefficientKind::Bergman: return "bergman";
    case CoefficientKind::UbcType: return "ubc-type";
    }
    return "?";
}

namespace {

std::vector<Complex> default_a_samples() {
    return {Complex(0.0), Complex(0.5, 0.0), Complex(-0.5, 0.0), Complex(0.0, 0.5),
            Complex(0.9, 0.0), Complex(0.0, -0.9)};
}

std::string conclusion_for(CoefficientKind k) {
    switch (k) {
    case CoefficientKind::HInf: return "N";
    case CoefficientKind::HInfPhi: return "N^phi";
    case CoefficientKind::Bergman: return "D#_omega*";
    case CoefficientKind::UbcType: return "UBC";
    }
    return "?";
}

} // namespace

CoefficientReport coefficient_condition(const AlgebraicODE& eq, const CoefficientConditionConfig& cfg,
                                        const DiscGrid& grid, bool parallel) {
    if (eq.order() != 1)
        throw DomainError("coefficient_condition: stated for first order equations only");
    if (cfg.kind == CoefficientKind::HInfPhi && !cfg.phi)
        throw DomainError("coefficient_condition: hinf-phi requires a gauge");
    if (cfg.kind == CoefficientKind::Bergman && !cfg.omega)
        throw DomainError("coefficient_condition: bergman requires a weight");

    CoefficientReport rep;
    rep.kind = cfg.kind;
    const std::vector<Complex> samples = cfg.a_samples.empty() ? default_a_samples() : cfg.a_samples;

    for (const auto& [idx, a] : eq.coefficients()) {
        CoefficientVerdict v;
        v.idx = idx;
        const double k = static_cast<double>(idx.k);
        switch (cfg.kind) {
        case CoefficientKind::HInf:
        case CoefficientKind::HInfPhi: {
            const auto fn = [&](Complex z, std::size_t, int) -> std::optional<double> {
                try {
                    const double av = std::abs(a.eval_extended(z).value());
                    const double gauge = cfg.kind == CoefficientKind::HInf
                                             ? std::pow(1.0 - std::abs(z), k)
                                             : std::pow((*cfg.phi)(std::abs(z)), -k);
                    const double q = av * gauge;
                    return std::isfinite(q) ? std::optional<double>(q) : std::nullopt;
                } catch (const Error&) {
                    return std::nullopt;
                }
            };
            const SupResult sup = parallel ? sup_over_grid(grid, fn) : sup_over_grid_serial(grid, fn);
            v.value = std::min(sup.value, kOverflowCap);
            v.trend = classify_trend(tail_levels(sup.level_sup));
            v.pass = v.trend != Trend::Growing && sup.value <= kOverflowCap;
            break;
        }
        case CoefficientKind::Bergman: {
            const DirichletWeight w = DirichletWeight::omega_star_of(*cfg.omega);
            const std::vector<double> rw = ring_weights(w, grid);
            const std::vector<double> rw_coarse = ring_weights(w, grid.coarsened());
            const auto integrand = [&](const DiscGrid& g, const std::vector<double>& rws) {
                const auto fn = [&](Complex z, std::size_t ring, int) -> std::optional<double> {
                    try {
                        const double av = std::abs(a.eval_extended(z).value());
                        const double q = std::pow(av, 2.0 / k) * rws[ring];
                        return std::isfinite(q) ? std::optional<double>(q) : std::nullopt;
                    } catch (const Error&) {
                        return std::nullopt;
                    }
                };
                return (parallel ? integrate_over_grid(g, fn) : integrate_over_grid_serial(g, fn)).value;
            };
            const double fine = integrand(grid, rw);
            const double coarse = integrand(grid.coarsened(), rw_coarse);
            v.value = fine;
            v.refinement_change = std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
            v.trend = v.refinement_change > 0.05 ? Trend::Growing : Trend::Flat;
            v.pass = v.trend != Trend::Growing && std::isfinite(fine) && fine <= kOverflowCap;
            break;
        }
        case CoefficientKind::UbcType: {
            const auto one = [&](const DiscGrid& g) {
                double worst = 0.0;
                for (const Complex s : samples) {
                    const auto fn = [&](Complex z, std::size_t, int) -> std::optional<double> {
                        try {
                            const double t = std::abs(mobius(s, z));
                            if (std::abs(z - s) < kGreenExclusionRadius) return std::nullopt;
                            const double av = std::abs(a.eval_extended(z).value());
                            const double q = std::pow(av, 2.0 / k) * std::log(1.0 / t);
                            return std::isfinite(q) ? std::optional<double>(q) : std::nullopt;
                        } catch (const Error&) {
                            return std::nullopt;
                        }
                    };
                    const double val = (parallel ? integrate_over_grid(g, fn) : integrate_over_grid_serial(g, fn)).value;
                    worst = std::max(worst, val);
                }
                return worst;
            };
            const double fine = one(grid);
            const double coarse = one(grid.coarsened());
            v.value = fine;
            v.refinement_change = std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
            v.trend = v.refinement_change > 0.05 ? Trend::Growing : Trend::Flat;
            v.pass = v.trend != Trend::Growing && std::isfinite(fine) && fine <= kOverflowCap;
            break;
        }
        }
        rep.all_pass = rep.all_pass && v.pass;
        rep.verdicts.push_back(std::move(v));
    }
    rep.conclusion = rep.all_pass ? conclusion_for(cfg.kind) : "withheld";
    return rep;
}

} // namespace growthlab
