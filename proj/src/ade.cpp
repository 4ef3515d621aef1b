#include "growthlab/ade.hpp"

#include <cmath>

#include "growthlab/errors.hpp"
#include "growthlab/grid_ops.hpp"

namespace growthlab {

namespace {

Complex ipow_c(Complex v, int m) {
    Complex acc(1.0);
    Complex base = v;
    for (int e = m; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        base *= base;
    }
    return acc;
}

} // namespace

AlgebraicODE::AlgebraicODE(int order_N, int degree_n, std::vector<std::vector<int>> caps)
    : N_(order_N), n_(degree_n), caps_(std::move(caps)) {
    if (N_ < 1) throw DomainError("AlgebraicODE: order must be >= 1");
    if (n_ < 1) throw DomainError("AlgebraicODE: degree must be >= 1");
    if (caps_.size() != static_cast<std::size_t>(n_))
        throw DomainError("AlgebraicODE: caps must have one row per k = 1..n");
    for (auto& row : caps_) {
        if (row.size() != static_cast<std::size_t>(N_))
            throw DomainError("AlgebraicODE: each caps row needs N entries");
        for (int m : row)
            if (m < 0) throw DomainError("AlgebraicODE: caps must be nonnegative");
    }
}

void AlgebraicODE::set_coefficient(ExponentMultiIndex idx, MeroFn a) {
    if (idx.k < 1 || idx.k > n_) throw DomainError("set_coefficient: k out of range");
    if (idx.j.size() != static_cast<std::size_t>(N_))
        throw DomainError("set_coefficient: index needs N exponents");
    for (int l = 0; l < N_; ++l) {
        if (idx.j[static_cast<std::size_t>(l)] < 0 || idx.j[static_cast<std::size_t>(l)] > cap(idx.k, l))
            throw DomainError("set_coefficient: exponent exceeds the cap m_{k,l}");
    }
    coeffs_.insert_or_assign(std::move(idx), std::move(a));
}

bool AlgebraicODE::coefficients_analytic_on(const DiscGrid& grid) const {
    for (const auto& [idx, a] : coeffs_) {
        for (std::size_t i = 0; i < grid.rings.size(); ++i) {
            const int step = std::max(1, grid.rings[i].n_theta / 16);
            for (int t = 0; t < grid.rings[i].n_theta; t += step) {
                try {
                    if (a.eval_extended(grid.node(i, t)).is_infinity()) return false;
                } catch (const Error&) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool satisfies_hypotheses(const AlgebraicODE& eq, const MVector& M) {
    if (M.order() != static_cast<std::size_t>(eq.order())) return false;
    for (int l = 0; l < eq.order(); ++l) {
        const int Ml = M.M[static_cast<std::size_t>(l)];
        if (Ml < 0) return false;
        const int offset = (l == 0) ? 2 : 1;
        for (int k = 1; k <= eq.degree(); ++k) {
            // M_l >= m_{k,l}/k - offset  <=>  k (M_l + offset) >= m_{k,l}
            if (k * (Ml + offset) < eq.cap(k, l)) return false;
        }
    }
    return true;
}

MVector minimal_M(const AlgebraicODE& eq) {
    MVector out;
    out.M.assign(static_cast<std::size_t>(eq.order()), 0);
    for (int l = 0; l < eq.order(); ++l) {
        const int offset = (l == 0) ? 2 : 1;
        int m = 0;
        for (int k = 1; k <= eq.degree(); ++k) {
            // least integer >= m_{k,l}/k - offset, via ceiling division
            const int num = eq.cap(k, l) - offset * k;
            if (num > 0) m = std::max(m, (num + k - 1) / k);
        }
        out.M[static_cast<std::size_t>(l)] = m;
    }
    return out;
}

namespace {

struct DerivativeValues {
    std::vector<Complex> v; // f, f', ..., f^(N)
    bool pole = false;
};

DerivativeValues eval_derivatives(const std::vector<MeroFn>& ds, Complex z) {
    DerivativeValues out;
    out.v.reserve(ds.size());
    for (const MeroFn& d : ds) {
        const ExtendedValue e = d.eval_extended(z);
        if (e.is_infinity()) {
            out.pole = true;
            return out;
        }
        out.v.push_back(e.value());
    }
    return out;
}

std::vector<MeroFn> derivative_chain(const MeroFn& f, int up_to) {
    std::vector<MeroFn> ds;
    ds.reserve(static_cast<std::size_t>(up_to) + 1);
    for (int l = 0; l <= up_to; ++l) ds.push_back(f.derivative(l));
    return ds;
}

} // namespace

ExtendedValue eval_P(const AlgebraicODE& eq, int k, const MeroFn& f, Complex z) {
    if (k < 1 || k > eq.degree()) throw DomainError("eval_P: k out of range");
    const auto ds = derivative_chain(f, eq.order() - 1);
    const DerivativeValues dv = eval_derivatives(ds, z);
    if (dv.pole) throw PoleAtEvaluationError("eval_P: derivative pole at the evaluation point");
    Complex sum(0.0);
    for (const auto& [idx, a] : eq.coefficients()) {
        if (idx.k != k) continue;
        Complex term = a.eval_extended(z).value();
        for (int l = 0; l < eq.order(); ++l)
            term *= ipow_c(dv.v[static_cast<std::size_t>(l)], idx.j[static_cast<std::size_t>(l)]);
        sum += term;
    }
    return ExtendedValue::finite(sum);
}

ExtendedValue residual(const AlgebraicODE& eq, const MeroFn& f, Complex z) {
    const auto ds = derivative_chain(f, eq.order());
    const DerivativeValues dv = eval_derivatives(ds, z);
    if (dv.pole) throw PoleAtEvaluationError("residual: derivative pole at the evaluation point");
    const Complex fN = dv.v[static_cast<std::size_t>(eq.order())];
    Complex res = ipow_c(fN, eq.degree());
    for (const auto& [idx, a] : eq.coefficients()) {
        Complex term = a.eval_extended(z).value();
        for (int l = 0; l < eq.order(); ++l)
            term *= ipow_c(dv.v[static_cast<std::size_t>(l)], idx.j[static_cast<std::size_t>(l)]);
        res += term * ipow_c(fN, eq.degree() - idx.k);
    }
    return ExtendedValue::finite(res);
}

double bound_rhs(const AlgebraicODE& eq, Complex z) {
    double sum = 0.0;
    for (const auto& [idx, a] : eq.coefficients()) {
        const ExtendedValue av = a.eval_extended(z);
        sum += std::pow(std::abs(av.value()), 1.0 / idx.k);
    }
    return sum;
}

double bound_lhs(const MeroFn& f, const MVector& M, Complex z) {
    double prod = 1.0;
    for (std::size_t l = 0; l < M.order(); ++l) {
        const MeroFn g = power_fn(f.derivative(static_cast<int>(l)), M.M[l] + 1);
        prod *= g.spherical(z);
    }
    return prod;
}

double proof_I(const AlgebraicODE& eq, const ExponentMultiIndex& idx, const MeroFn& f, const MVector& M,
               Complex z) {
    const int N = eq.order();
    if (idx.j.size() != static_cast<std::size_t>(N)) throw DomainError("proof_I: index order mismatch");
    const auto ds = derivative_chain(f, N - 1);
    const DerivativeValues dv = eval_derivatives(ds, z);
    if (dv.pole) throw PoleAtEvaluationError("proof_I: derivative pole at the evaluation point");

    double out = 1.0;
    for (int l = 0; l < N; ++l) {
        const int jl = idx.j[static_cast<std::size_t>(l)];
        if (jl != 0)
            out *= std::pow(std::abs(dv.v[static_cast<std::size_t>(l)]),
                            static_cast<double>(jl) / static_cast<double>(idx.k));
    }
    for (int l = 0; l <= N - 2; ++l) {
        const MeroFn g = power_fn(ds[static_cast<std::size_t>(l)], M.M[static_cast<std::size_t>(l)] + 1);
        out *= g.spherical(z);
    }
    const double t = std::abs(dv.v[static_cast<std::size_t>(N - 1)]);
    const int Mn = M.M[static_cast<std::size_t>(N - 1)];
    out *= std::pow(t, static_cast<double>(Mn)) / (1.0 + std::pow(t, 2.0 * (Mn + 1)));
    return out;
}

ResidualStats residual_stats(const AlgebraicODE& eq, const MeroFn& f, const DiscGrid& grid, bool parallel) {
    const int N = eq.order();
    const int n = eq.degree();
    const std::vector<MeroFn> ds = derivative_chain(f, N);

    struct Term {
        int k;
        std::vector<int> j;
        MeroFn a;
    };
    std::vector<Term> terms;
    for (const auto& [idx, a] : eq.coefficients()) terms.push_back(Term{idx.k, idx.j, a});

    struct RingStat {
        double max_scaled = 0.0;
        double sum_scaled = 0.0;
        std::size_t evaluated = 0;
        std::size_t skipped = 0;
    };
    std::vector<RingStat> stats(grid.rings.size());
    const auto residual_node = [&](Complex z, std::size_t ring, int) -> std::optional<double> {
        RingStat& st = stats[ring];
        try {
            std::vector<Complex> dv(static_cast<std::size_t>(N) + 1);
            for (int l = 0; l <= N; ++l) {
                const ExtendedValue e = ds[static_cast<std::size_t>(l)].eval_extended(z);
                if (e.is_infinity()) {
                    ++st.skipped;
                    return std::nullopt;
                }
                dv[static_cast<std::size_t>(l)] = e.value();
            }
            const Complex fN = dv[static_cast<std::size_t>(N)];
            Complex res = ipow_c(fN, n);
            const double lead = std::abs(res);
            for (const Term& t : terms) {
                Complex term = t.a.eval_extended(z).value();
                for (int l = 0; l < N; ++l) term *= ipow_c(dv[static_cast<std::size_t>(l)], t.j[static_cast<std::size_t>(l)]);
                res += term * ipow_c(fN, n - t.k);
            }
            const double scaled = std::abs(res) / (1.0 + lead);
            st.max_scaled = std::max(st.max_scaled, scaled);
            st.sum_scaled += scaled;
            ++st.evaluated;
            return scaled;
        } catch (const Error&) {
            ++st.skipped;
            return std::nullopt;
        }
    };
    if (parallel)
        (void)sup_over_grid(grid, residual_node);
    else
        (void)sup_over_grid_serial(grid, residual_node);

    ResidualStats out;
    double sum = 0.0;
    for (const RingStat& st : stats) {
        out.max_scaled = std::max(out.max_scaled, st.max_scaled);
        sum += st.sum_scaled;
        out.evaluated += st.evaluated;
        out.skipped_pole += st.skipped;
    }
    out.mean_scaled = out.evaluated ? sum / static_cast<double>(out.evaluated) : 0.0;
    return out;
}

ScanReport theorem1_scan(const AlgebraicODE& eq, const MeroFn& f, const MVector& M, const DiscGrid& grid,
                         const ScanOptions& opts) {
    if (!satisfies_hypotheses(eq, M)) throw DomainError("theorem1_scan: M violates the growth hypotheses");
    const int N = eq.order();

    const std::vector<MeroFn> ds = derivative_chain(f, N);

    // Flattened coefficient table for the hot loop.
    struct Term {
        int k;
        std::vector<int> j;
        MeroFn a;
    };
    std::vector<Term> terms;
    for (const auto& [idx, a] : eq.coefficients()) terms.push_back(Term{idx.k, idx.j, a});

    ScanReport rep;
    rep.nodes_total = grid.node_count();

    // Pass 1: residual gate, scale-aware.
    const ResidualStats rs = residual_stats(eq, f, grid, opts.parallel);
    rep.residual_max_scaled = rs.max_scaled;
    rep.residual_mean_scaled = rs.mean_scaled;
    rep.skipped_pole = rs.skipped_pole;
    if (rs.evaluated == 0) throw NotASolutionError("theorem1_scan: no evaluable grid node");
    if (rs.max_scaled > opts.residual_tol)
        throw NotASolutionError("theorem1_scan: residual gate failed, max scaled residual = " +
                                std::to_string(rs.max_scaled));

    // Pass 2: ratio scan.
    std::vector<SphericalFn> sph;
    for (int l = 0; l < N; ++l)
        sph.emplace_back(power_fn(ds[static_cast<std::size_t>(l)], M.M[static_cast<std::size_t>(l)] + 1));

    struct SmallRhs {
        std::size_t count = 0;
        double max_lhs = 0.0;
    };
    std::vector<SmallRhs> small(grid.rings.size());
    const auto ratio_node = [&](Complex z, std::size_t ring, int) -> std::optional<double> {
        try {
            double lhs = 1.0;
            for (const SphericalFn& s : sph) lhs *= s(z);
            double rhs = 0.0;
            for (const Term& t : terms) rhs += std::pow(std::abs(t.a.eval_extended(z).value()), 1.0 / t.k);
            if (rhs <= opts.rhs_floor) {
                SmallRhs& sr = small[ring];
                ++sr.count;
                sr.max_lhs = std::max(sr.max_lhs, lhs);
                return std::nullopt;
            }
            return lhs / rhs;
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    const SupResult sup = opts.parallel ? sup_over_grid(grid, ratio_node) : sup_over_grid_serial(grid, ratio_node);

    rep.sup_ratio = sup.value;
    rep.argmax = sup.argmax;
    rep.argmax_index = sup.node_index;
    for (const SmallRhs& sr : small) {
        rep.small_rhs_nodes += sr.count;
        rep.small_rhs_max_lhs = std::max(rep.small_rhs_max_lhs, sr.max_lhs);
    }
    return rep;
}

} // namespace growthlab
