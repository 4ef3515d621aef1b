#pragma once

#include <map>
#include <optional>
#include <vector>

#include "growthlab/disc_grid.hpp"
#include "growthlab/merofn.hpp"

namespace growthlab {

/// Index (k, j_0, ..., j_{N-1}) of one coefficient term: row k of the degree
/// sum, exponents j_l on the derivatives f^(l).
struct ExponentMultiIndex {
    int k = 1;
    std::vector<int> j;

    friend bool operator==(const ExponentMultiIndex& a, const ExponentMultiIndex& b) = default;
    friend bool operator<(const ExponentMultiIndex& a, const ExponentMultiIndex& b) {
        if (a.k != b.k) return a.k < b.k;
        return a.j < b.j;
    }
};

/// The tuple (M_0, ..., M_{N-1}) of nonnegative integers from the growth
/// hypotheses: M_0 >= max_k m_{k,0}/k - 2 and M_l >= max_k m_{k,l}/k - 1.
struct MVector {
    std::vector<int> M;
    std::size_t order() const { return M.size(); }
    friend bool operator==(const MVector&, const MVector&) = default;
};

/// N-th order algebraic differential equation
///   (f^(N))^n + sum_k P_k(f) (f^(N))^{n-k} = 0,
/// P_k a polynomial in f, f', ..., f^(N-1) with analytic coefficients.
/// Absent coefficient entries mean the zero coefficient. Immutable once the
/// coefficients are in place; freely shareable between threads.
class AlgebraicODE {
public:
    /// caps[k-1][l] = m_{k,l}; caps must have n rows of N entries each.
    AlgebraicODE(int order_N, int degree_n, std::vector<std::vector<int>> caps);

    int order() const { return N_; }
    int degree() const { return n_; }
    int cap(int k, int l) const { return caps_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l)]; }

    void set_coefficient(ExponentMultiIndex idx, MeroFn a);
    const std::map<ExponentMultiIndex, MeroFn>& coefficients() const { return coeffs_; }

    /// Diagnostic: no coefficient pole detected on the grid.
    bool coefficients_analytic_on(const DiscGrid& grid) const;

private:
    int N_;
    int n_;
    std::vector<std::vector<int>> caps_;
    std::map<ExponentMultiIndex, MeroFn> coeffs_;
};

/// Exact integer-arithmetic check of the growth hypotheses for M.
bool satisfies_hypotheses(const AlgebraicODE& eq, const MVector& M);

/// Componentwise smallest nonnegative M satisfying the hypotheses; exact
/// rational arithmetic on m_{k,l}/k, no floating point.
MVector minimal_M(const AlgebraicODE& eq);

/// P_k(f)(z) = sum over stored indices with first component k of
/// a(z) * prod_l f^(l)(z)^{j_l}. Throws PoleAtEvaluationError when a needed
/// derivative value is infinite.
ExtendedValue eval_P(const AlgebraicODE& eq, int k, const MeroFn& f, Complex z);

/// (f^(N)(z))^n + sum_k P_k(f)(z) (f^(N)(z))^{n-k}.
ExtendedValue residual(const AlgebraicODE& eq, const MeroFn& f, Complex z);

/// sum_k sum_{indices of row k} |a(z)|^{1/k}.
double bound_rhs(const AlgebraicODE& eq, Complex z);

/// prod_l (( f^(l) )^{M_l + 1})#(z).
double bound_lhs(const MeroFn& f, const MVector& M, Complex z);

/// The proof functional
///   I = prod_l |f^(l)|^{j_l/k} * prod_{l<=N-2} ((f^(l))^{M_l+1})#
///       * |f^(N-1)|^{M_{N-1}} / (1 + |f^(N-1)|^{2(M_{N-1}+1)});
/// empty products are 1 (first order case).
double proof_I(const AlgebraicODE& eq, const ExponentMultiIndex& idx, const MeroFn& f, const MVector& M,
               Complex z);

struct ScanOptions {
    double residual_tol = 1e-9;      // scale-aware: |res| <= tol * (1 + |f^(N)|^n)
    double rhs_floor = 1e-9;         // nodes with bound_rhs below it are reported, not ratioed
    bool parallel = true;
};

struct ResidualStats {
    double max_scaled = 0.0;
    double mean_scaled = 0.0;
    std::size_t evaluated = 0;
    std::size_t skipped_pole = 0;
};

/// Scale-aware residual statistics of f against the equation over the grid;
/// pole nodes are skipped and counted.
ResidualStats residual_stats(const AlgebraicODE& eq, const MeroFn& f, const DiscGrid& grid,
                             bool parallel = true);

struct ScanReport {
    double sup_ratio = 0.0;
    Complex argmax{};
    std::size_t argmax_index = 0;
    std::size_t nodes_total = 0;
    std::size_t skipped_pole = 0;     // nodes where f or a derivative has a pole
    std::size_t small_rhs_nodes = 0;  // nodes with bound_rhs <= floor
    double small_rhs_max_lhs = 0.0;   // max bound_lhs over those nodes
    double residual_max_scaled = 0.0;
    double residual_mean_scaled = 0.0;
    double skipped_fraction() const {
        return nodes_total ? static_cast<double>(skipped_pole) / static_cast<double>(nodes_total) : 0.0;
    }
};

/// Verifies the residual gate first (throws NotASolutionError on failure),
/// then reports the supremum of bound_lhs/bound_rhs over the grid. Grid nodes
/// may be evaluated in parallel; the reduction is order-independent and
/// argmax ties break toward the lexicographically smallest node index.
ScanReport theorem1_scan(const AlgebraicODE& eq, const MeroFn& f, const MVector& M, const DiscGrid& grid,
                         const ScanOptions& opts = {});

} // namespace growthlab
