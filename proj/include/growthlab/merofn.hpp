#pragma once

#include <memory>
#include <vector>

#include "growthlab/poly.hpp"

namespace growthlab {

/// Value on the Riemann sphere: a finite complex number or the point at infinity.
class ExtendedValue {
public:
    static ExtendedValue finite(Complex v) { return ExtendedValue(false, v); }
    static ExtendedValue infinity() { return ExtendedValue(true, Complex(0.0)); }

    bool is_infinity() const { return inf_; }
    Complex value() const {
        if (inf_) throw PoleAtEvaluationError("value() called on the point at infinity");
        return v_;
    }

private:
    ExtendedValue(bool inf, Complex v) : inf_(inf), v_(v) {}
    bool inf_;
    Complex v_;
};

/// Disc automorphism phi_a(z) = (a - z)/(1 - conj(a) z).
Complex mobius(Complex a, Complex z);

namespace detail {
struct Node;
}

/// Immutable handle to a meromorphic function on the unit disc, built from a
/// closed expression family: polynomials, rationals, the branch power
/// (1-z)^{-p}, scaled tangents tan(k z), Moebius pre/post composition, integer
/// powers, sums, products, quotients and scalar multiples.
///
/// All instances are immutable after construction and safe to share between
/// threads; every operation is a pure function of its inputs.
class MeroFn {
public:
    static MeroFn constant(Complex c);
    static MeroFn var(); // z
    static MeroFn polynomial(std::vector<Complex> coeffs);
    static MeroFn rational(Poly num, Poly den); // den must not be the zero polynomial
    static MeroFn branch_power(double p);       // (1-z)^{-p}, principal branch
    static MeroFn scaled_tan(Complex kappa);    // tan(kappa z)
    static MeroFn mobius_precompose(const MeroFn& f, Complex a);  // z -> f(phi_a(z))
    static MeroFn mobius_postcompose(const MeroFn& f, Complex a); // z -> phi_a(f(z))

    MeroFn pow(int m) const; // m >= 0; pow(0) == 1, pow(1) == *this
    MeroFn scaled(Complex c) const;
    MeroFn reciprocal() const;

    friend MeroFn operator+(const MeroFn& a, const MeroFn& b);
    friend MeroFn operator-(const MeroFn& a, const MeroFn& b);
    friend MeroFn operator*(const MeroFn& a, const MeroFn& b);
    friend MeroFn operator/(const MeroFn& a, const MeroFn& b);

    /// Exact symbolic derivative. Throws UnsupportedOrderError when
    /// order > max_derivative_order().
    MeroFn derivative(int order = 1) const;
    int max_derivative_order() const;
    MeroFn with_max_derivative_order(int n) const;

    /// f(z) in the extended sense; requires |z| < 1. A pole yields the
    /// infinity variant, 0/0 throws IndeterminateError.
    ExtendedValue eval_extended(Complex z) const;

    /// Spherical derivative f#(z) = |f'|/(1+|f|^2); pole-safe via the
    /// reciprocal identity once |f(z)| > 1. One-shot convenience; use
    /// SphericalFn for evaluation over many points.
    double spherical(Complex z) const;

private:
    explicit MeroFn(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::Node> node_;
    friend class SphericalFn;
};

/// The map f -> f^m; requires m >= 1.
MeroFn power_fn(const MeroFn& f, int m);

/// Precomputed evaluator for f#; builds f, f', 1/f and (1/f)' once so that
/// grid sweeps do not re-derive the expression tree per node.
class SphericalFn {
public:
    explicit SphericalFn(const MeroFn& f);
    double operator()(Complex z) const;

private:
    MeroFn f_, df_, g_, dg_;
};

} // namespace growthlab
