#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "growthlab/ade.hpp"
#include "growthlab/disc_grid.hpp"
#include "growthlab/merofn.hpp"
#include "growthlab/radial_weight.hpp"

namespace growthlab {

/// Values above this are reported through the overflow sentinel instead of a
/// floating infinity, keeping reports serializable and comparisons total.
constexpr double kOverflowCap = 1e12;

enum class Trend { Decaying, Flat, Growing };

/// A sup-type norm estimate: value at the finest grid plus the tail trend;
/// finiteness of a supremum is not decidable from samples, so the trend
/// carries the membership evidence.
struct SupEstimate {
    double value = 0.0;
    Complex argmax{};
    bool overflow = false;
    std::vector<double> tail_level_sup; // per-level sups of the last three outer levels
    Trend trend = Trend::Flat;
    std::size_t skipped = 0;
};

/// sup over the grid of f#(z) (1-|z|^2)^alpha.
SupEstimate normal_norm(const MeroFn& f, double alpha, const DiscGrid& grid, bool parallel = true);

/// sup over the grid of f#(z) / phi(|z|).
SupEstimate phi_normal_norm(const MeroFn& f, const SmoothIncreasing& phi, const DiscGrid& grid,
                            bool parallel = true);

struct DirichletWeight {
    enum class Kind { PowerAlpha, OmegaStar } kind = Kind::PowerAlpha;
    double alpha = 1.0;
    std::optional<RadialWeight> omega;
    static DirichletWeight power(double a) { return DirichletWeight{Kind::PowerAlpha, a, std::nullopt}; }
    static DirichletWeight omega_star_of(RadialWeight w) {
        return DirichletWeight{Kind::OmegaStar, 0.0, std::move(w)};
    }
    std::string label() const;
};

struct IntegralEstimate {
    double value = 0.0;
    double refinement_change = 0.0; // relative change from the next-coarser grid
    std::size_t skipped = 0;
};

/// Quadrature of f#^2 against (1-|z|^2)^alpha or omega_star(|z|) over the
/// grid, with a convergence estimate from the two finest refinements.
/// omega_star values are precomputed once per radial ring.
IntegralEstimate dirichlet_norm(const MeroFn& f, const DirichletWeight& w, const DiscGrid& grid,
                                bool parallel = true);

enum class UbcKernel { Green, OneMinusSquare };

struct UbcEstimate {
    double value = 0.0;
    Complex argmax_a{};
    double exclusion_error_bar = 0.0; // bound on the mass of the excluded disc around a
    std::size_t skipped = 0;
};

/// max over the sample centers a of the quadrature of f#^2 against
/// log(1/|phi_a|) (Green) or 1-|phi_a|^2. The Green kernel's integrable
/// singularity is handled by excluding the disc |z-a| < 1e-4 and reporting
/// the analytic small-disc bound as an error bar.
UbcEstimate ubc_norm(const MeroFn& f, std::span<const Complex> a_samples, const DiscGrid& grid,
                     UbcKernel kernel, bool parallel = true);

/// Both sides of the two-circle comparison: (A, B) with
///   A = integral over D(0,r) of f#^2 log(r/|z|) dA,
///   B = the same for f^m.
std::pair<double, double> yamashita_gap(const MeroFn& f, int m, double r, const DiscGrid& grid,
                                        bool parallel = true);

enum class CoefficientKind { HInf, HInfPhi, Bergman, UbcType };

std::string coefficient_kind_name(CoefficientKind k);

struct CoefficientConditionConfig {
    CoefficientKind kind = CoefficientKind::HInf;
    std::optional<SmoothIncreasing> phi;  // HInfPhi
    std::optional<RadialWeight> omega;    // Bergman
    std::vector<Complex> a_samples;       // UbcType; defaults used when empty
};

struct CoefficientVerdict {
    ExponentMultiIndex idx;
    double value = 0.0;
    Trend trend = Trend::Flat;
    double refinement_change = 0.0; // integral kinds only
    bool pass = false;
};

struct CoefficientReport {
    CoefficientKind kind = CoefficientKind::HInf;
    std::vector<CoefficientVerdict> verdicts;
    bool all_pass = true;
    std::string conclusion; // implied solution class, or "withheld"
};

/// Per-coefficient class membership evidence for first order equations:
/// sup |a|(1-|z|)^k, sup |a|/phi^k, the omega_star-weighted integral of
/// |a|^{2/k}, or the Green-kernel UBC-type condition. Throws DomainError for
/// higher order equations.
CoefficientReport coefficient_condition(const AlgebraicODE& eq, const CoefficientConditionConfig& cfg,
                                        const DiscGrid& grid, bool parallel = true);

/// Trend of the last three outer-level sups: > +5 percent over the window is
/// Growing, < -5 percent Decaying, otherwise Flat.
Trend classify_trend(const std::vector<double>& level_sup);

} // namespace growthlab
