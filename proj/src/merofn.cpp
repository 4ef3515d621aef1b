#include "growthlab/merofn.hpp"

#include <cmath>

namespace growthlab {

namespace {

// Scale-aware pole threshold: |den| < kPoleTol * (1 + |num|) classifies the
// quotient as a pole; a numerator below kPoleTol as well means 0/0.
constexpr double kPoleTol = 1e-12;
constexpr int kDefaultMaxOrder = 64;

Complex ipow(Complex v, int m) {
    Complex acc(1.0);
    Complex base = v;
    for (int e = m; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        base *= base;
    }
    return acc;
}

} // namespace

Complex mobius(Complex a, Complex z) { return (a - z) / (1.0 - std::conj(a) * z); }

namespace detail {

enum class Kind { Polynomial, Rational, BranchPower, Tan, Pow, Sum, Product, Quotient, Scaled, MobiusPre, MobiusPost };

struct Node {
    Kind kind;
    Poly p, q;        // Polynomial: p; Rational: p/q
    double bp = 0.0;  // BranchPower exponent
    Complex c{};      // Tan kappa / Scaled factor / Moebius a
    int m = 0;        // Pow exponent
    std::shared_ptr<const Node> a, b;
    int max_order = kDefaultMaxOrder;
};

using NodePtr = std::shared_ptr<const Node>;

struct Ext {
    enum class Tag { Fin, Inf, Indet } tag;
    Complex v{};
    static Ext fin(Complex x) { return {Tag::Fin, x}; }
    static Ext inf() { return {Tag::Inf, {}}; }
    static Ext indet() { return {Tag::Indet, {}}; }
    bool is_fin() const { return tag == Tag::Fin; }
    bool is_inf() const { return tag == Tag::Inf; }
    bool is_indet() const { return tag == Tag::Indet; }
};

Ext ext_ratio(Complex num, Complex den) {
    const double an = std::abs(num);
    if (std::abs(den) < kPoleTol * (1.0 + an)) {
        if (an <= kPoleTol) return Ext::indet();
        return Ext::inf();
    }
    return Ext::fin(num / den);
}

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

NodePtr make_poly(Poly p, int mo = kDefaultMaxOrder) {
    Node n;
    n.kind = Kind::Polynomial;
    n.p = std::move(p);
    n.max_order = mo;
    return make(std::move(n));
}

NodePtr make_const(Complex c) { return make_poly(Poly::constant(c)); }

Ext eval_node(const Node& n, Complex z) {
    switch (n.kind) {
    case Kind::Polynomial:
        return Ext::fin(n.p.eval(z));
    case Kind::Rational:
        return ext_ratio(n.p.eval(z), n.q.eval(z));
    case Kind::BranchPower:
        // (1-z)^{-p} = exp(-p Log(1-z)); Re(1-z) > 0 on the disc, so the
        // principal branch has no cut here.
        return Ext::fin(std::exp(-n.bp * std::log(1.0 - z)));
    case Kind::Tan: {
        const Complex w = n.c * z;
        return ext_ratio(std::sin(w), std::cos(w));
    }
    case Kind::Pow: {
        Ext a = eval_node(*n.a, z);
        if (!a.is_fin()) return a;
        return Ext::fin(ipow(a.v, n.m));
    }
    case Kind::Sum: {
        Ext a = eval_node(*n.a, z);
        if (a.is_indet()) return a;
        Ext b = eval_node(*n.b, z);
        if (b.is_indet()) return b;
        if (a.is_inf() && b.is_inf()) return Ext::indet(); // possible cancellation
        if (a.is_inf() || b.is_inf()) return Ext::inf();
        return Ext::fin(a.v + b.v);
    }
    case Kind::Product: {
        Ext a = eval_node(*n.a, z);
        if (a.is_indet()) return a;
        Ext b = eval_node(*n.b, z);
        if (b.is_indet()) return b;
        if (a.is_inf() && b.is_inf()) return Ext::inf();
        if (a.is_inf() || b.is_inf()) {
            const Complex fin = a.is_inf() ? b.v : a.v;
            if (std::abs(fin) <= kPoleTol) return Ext::indet();
            return Ext::inf();
        }
        return Ext::fin(a.v * b.v);
    }
    case Kind::Quotient: {
        Ext a = eval_node(*n.a, z);
        if (a.is_indet()) return a;
        Ext b = eval_node(*n.b, z);
        if (b.is_indet()) return b;
        if (a.is_inf() && b.is_inf()) return Ext::indet();
        if (a.is_inf()) return Ext::inf();
        if (b.is_inf()) return Ext::fin(Complex(0.0));
        return ext_ratio(a.v, b.v);
    }
    case Kind::Scaled: {
        Ext a = eval_node(*n.a, z);
        if (a.is_indet()) return a;
        if (a.is_inf()) {
            if (std::abs(n.c) <= kPoleTol) return Ext::indet();
            return Ext::inf();
        }
        return Ext::fin(n.c * a.v);
    }
    case Kind::MobiusPre:
        return eval_node(*n.a, mobius(n.c, z));
    case Kind::MobiusPost: {
        Ext a = eval_node(*n.a, z);
        if (a.is_indet()) return a;
        if (a.is_inf()) {
            if (n.c == Complex(0.0)) return Ext::inf(); // phi_0(z) = -z
            return Ext::fin(1.0 / std::conj(n.c));
        }
        return ext_ratio(n.c - a.v, 1.0 - std::conj(n.c) * a.v);
    }
    }
    return Ext::indet();
}

NodePtr pow_node(NodePtr f, int m);
NodePtr scaled_node(NodePtr f, Complex c);
NodePtr sum_node(NodePtr a, NodePtr b);
NodePtr product_node(NodePtr a, NodePtr b);
NodePtr quotient_node(NodePtr a, NodePtr b);

NodePtr derive_once(const NodePtr& n) {
    switch (n->kind) {
    case Kind::Polynomial:
        return make_poly(n->p.derivative(), n->max_order);
    case Kind::Rational: {
        Node d;
        d.kind = Kind::Rational;
        d.p = n->p.derivative() * n->q - n->p * n->q.derivative();
        d.q = n->q * n->q;
        d.max_order = n->max_order;
        return make(std::move(d));
    }
    case Kind::BranchPower: {
        // d/dz (1-z)^{-p} = p (1-z)^{-p-1}
        Node b;
        b.kind = Kind::BranchPower;
        b.bp = n->bp + 1.0;
        b.max_order = n->max_order;
        return scaled_node(make(std::move(b)), Complex(n->bp));
    }
    case Kind::Tan:
        // d/dz tan(kz) = k (1 + tan(kz)^2)
        return scaled_node(sum_node(make_const(Complex(1.0)), pow_node(n, 2)), n->c);
    case Kind::Pow: {
        if (n->m == 1) return derive_once(n->a);
        return scaled_node(product_node(pow_node(n->a, n->m - 1), derive_once(n->a)),
                           Complex(static_cast<double>(n->m)));
    }
    case Kind::Sum:
        return sum_node(derive_once(n->a), derive_once(n->b));
    case Kind::Product:
        return sum_node(product_node(derive_once(n->a), n->b), product_node(n->a, derive_once(n->b)));
    case Kind::Quotient: {
        NodePtr num = sum_node(product_node(derive_once(n->a), n->b),
                               scaled_node(product_node(n->a, derive_once(n->b)), Complex(-1.0)));
        return quotient_node(num, pow_node(n->b, 2));
    }
    case Kind::Scaled:
        return scaled_node(derive_once(n->a), n->c);
    case Kind::MobiusPre: {
        // (f o phi_a)' = (f' o phi_a) * phi_a',  phi_a'(z) = (|a|^2-1)/(1-conj(a)z)^2
        Node inner;
        inner.kind = Kind::MobiusPre;
        inner.a = derive_once(n->a);
        inner.c = n->c;
        inner.max_order = n->max_order;
        const Complex ac = std::conj(n->c);
        Node phi_d;
        phi_d.kind = Kind::Rational;
        phi_d.p = Poly::constant(std::norm(n->c) - 1.0);
        phi_d.q = Poly({Complex(1.0), -ac}) * Poly({Complex(1.0), -ac});
        phi_d.max_order = n->max_order;
        return product_node(make(std::move(inner)), make(std::move(phi_d)));
    }
    case Kind::MobiusPost: {
        // (phi_a o f)' = (|a|^2-1)/(1-conj(a)f)^2 * f'
        NodePtr den = pow_node(sum_node(make_const(Complex(1.0)), scaled_node(n->a, -std::conj(n->c))), 2);
        NodePtr fac = quotient_node(make_const(Complex(std::norm(n->c) - 1.0)), den);
        return product_node(fac, derive_once(n->a));
    }
    }
    return make_const(Complex(0.0));
}

NodePtr reciprocal_node(const NodePtr& n) {
    switch (n->kind) {
    case Kind::Polynomial: {
        Node r;
        r.kind = Kind::Rational;
        r.p = Poly::constant(Complex(1.0));
        r.q = n->p;
        r.max_order = n->max_order;
        return make(std::move(r));
    }
    case Kind::Rational: {
        Node r;
        r.kind = Kind::Rational;
        r.p = n->q;
        r.q = n->p;
        r.max_order = n->max_order;
        return make(std::move(r));
    }
    case Kind::BranchPower: {
        Node r;
        r.kind = Kind::BranchPower;
        r.bp = -n->bp;
        r.max_order = n->max_order;
        return make(std::move(r));
    }
    case Kind::Pow: {
        Node r;
        r.kind = Kind::Pow;
        r.a = reciprocal_node(n->a);
        r.m = n->m;
        r.max_order = n->max_order;
        return make(std::move(r));
    }
    case Kind::Quotient:
        return quotient_node(n->b, n->a);
    case Kind::Scaled:
        if (std::abs(n->c) > 0.0) return scaled_node(reciprocal_node(n->a), 1.0 / n->c);
        break;
    case Kind::MobiusPre: {
        Node r;
        r.kind = Kind::MobiusPre;
        r.a = reciprocal_node(n->a);
        r.c = n->c;
        r.max_order = n->max_order;
        return make(std::move(r));
    }
    default:
        break;
    }
    return quotient_node(make_const(Complex(1.0)), n);
}

NodePtr pow_node(NodePtr f, int m) {
    if (m < 0) throw DomainError("pow: negative exponent on a MeroFn node");
    if (m == 0) return make_const(Complex(1.0));
    if (m == 1) return f;
    Node n;
    n.kind = Kind::Pow;
    n.max_order = f->max_order;
    n.a = std::move(f);
    n.m = m;
    return make(std::move(n));
}

NodePtr scaled_node(NodePtr f, Complex c) {
    Node n;
    n.kind = Kind::Scaled;
    n.max_order = f->max_order;
    n.a = std::move(f);
    n.c = c;
    return make(std::move(n));
}

NodePtr binary(Kind k, NodePtr a, NodePtr b) {
    Node n;
    n.kind = k;
    n.max_order = std::min(a->max_order, b->max_order);
    n.a = std::move(a);
    n.b = std::move(b);
    return make(std::move(n));
}

NodePtr sum_node(NodePtr a, NodePtr b) { return binary(Kind::Sum, std::move(a), std::move(b)); }
NodePtr product_node(NodePtr a, NodePtr b) { return binary(Kind::Product, std::move(a), std::move(b)); }
NodePtr quotient_node(NodePtr a, NodePtr b) { return binary(Kind::Quotient, std::move(a), std::move(b)); }

} // namespace detail

using detail::Ext;
using detail::Kind;
using detail::Node;
using detail::NodePtr;

MeroFn MeroFn::constant(Complex c) { return MeroFn(detail::make_const(c)); }
MeroFn MeroFn::var() { return MeroFn(detail::make_poly(Poly::identity())); }
MeroFn MeroFn::polynomial(std::vector<Complex> coeffs) { return MeroFn(detail::make_poly(Poly(std::move(coeffs)))); }

MeroFn MeroFn::rational(Poly num, Poly den) {
    if (den.is_zero()) throw DomainError("rational: denominator is the zero polynomial");
    Node n;
    n.kind = Kind::Rational;
    n.p = std::move(num);
    n.q = std::move(den);
    return MeroFn(detail::make(std::move(n)));
}

MeroFn MeroFn::branch_power(double p) {
    Node n;
    n.kind = Kind::BranchPower;
    n.bp = p;
    return MeroFn(detail::make(std::move(n)));
}

MeroFn MeroFn::scaled_tan(Complex kappa) {
    Node n;
    n.kind = Kind::Tan;
    n.c = kappa;
    return MeroFn(detail::make(std::move(n)));
}

MeroFn MeroFn::mobius_precompose(const MeroFn& f, Complex a) {
    if (std::abs(a) >= 1.0) throw DomainError("mobius_precompose: |a| must be < 1");
    Node n;
    n.kind = Kind::MobiusPre;
    n.a = f.node_;
    n.c = a;
    n.max_order = f.node_->max_order;
    return MeroFn(detail::make(std::move(n)));
}

MeroFn MeroFn::mobius_postcompose(const MeroFn& f, Complex a) {
    if (std::abs(a) >= 1.0) throw DomainError("mobius_postcompose: |a| must be < 1");
    Node n;
    n.kind = Kind::MobiusPost;
    n.a = f.node_;
    n.c = a;
    n.max_order = f.node_->max_order;
    return MeroFn(detail::make(std::move(n)));
}

MeroFn MeroFn::pow(int m) const { return MeroFn(detail::pow_node(node_, m)); }
MeroFn MeroFn::scaled(Complex c) const { return MeroFn(detail::scaled_node(node_, c)); }
MeroFn MeroFn::reciprocal() const { return MeroFn(detail::reciprocal_node(node_)); }

MeroFn operator+(const MeroFn& a, const MeroFn& b) { return MeroFn(detail::sum_node(a.node_, b.node_)); }
MeroFn operator-(const MeroFn& a, const MeroFn& b) {
    return MeroFn(detail::sum_node(a.node_, detail::scaled_node(b.node_, Complex(-1.0))));
}
MeroFn operator*(const MeroFn& a, const MeroFn& b) { return MeroFn(detail::product_node(a.node_, b.node_)); }
MeroFn operator/(const MeroFn& a, const MeroFn& b) { return MeroFn(detail::quotient_node(a.node_, b.node_)); }

MeroFn MeroFn::derivative(int order) const {
    if (order < 0) throw DomainError("derivative: negative order");
    if (order > node_->max_order)
        throw UnsupportedOrderError("derivative order " + std::to_string(order) + " exceeds supported maximum " +
                                    std::to_string(node_->max_order));
    NodePtr cur = node_;
    for (int i = 0; i < order; ++i) cur = detail::derive_once(cur);
    return MeroFn(cur);
}

int MeroFn::max_derivative_order() const { return node_->max_order; }

MeroFn MeroFn::with_max_derivative_order(int n) const {
    Node copy = *node_;
    copy.max_order = n;
    return MeroFn(detail::make(std::move(copy)));
}

MeroFn power_fn(const MeroFn& f, int m) {
    if (m < 1) throw DomainError("power_fn: m must be >= 1");
    return f.pow(m);
}

namespace {

void require_in_disc(Complex z) {
    if (!(std::abs(z) < 1.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("evaluation point must satisfy |z| < 1");
}

} // namespace

ExtendedValue MeroFn::eval_extended(Complex z) const {
    require_in_disc(z);
    Ext e = detail::eval_node(*node_, z);
    if (e.is_indet()) throw IndeterminateError("indeterminate point (0/0); perturb or rebuild the representation");
    if (e.is_inf()) return ExtendedValue::infinity();
    return ExtendedValue::finite(e.v);
}

double MeroFn::spherical(Complex z) const { return SphericalFn(*this)(z); }

SphericalFn::SphericalFn(const MeroFn& f)
    : f_(f), df_(f.derivative()), g_(f.reciprocal()), dg_(g_.derivative()) {}

double SphericalFn::operator()(Complex z) const {
    require_in_disc(z);
    Ext v = detail::eval_node(*f_.node_, z);
    if (v.is_indet()) throw IndeterminateError("spherical: indeterminate point");
    if (v.is_inf() || std::abs(v.v) > 1.0) {
        // Reciprocal branch keeps all intermediate magnitudes O(1) near poles.
        Ext gv = detail::eval_node(*g_.node_, z);
        Ext gd = detail::eval_node(*dg_.node_, z);
        if (!gv.is_fin() || !gd.is_fin())
            throw IndeterminateError("spherical: reciprocal branch did not evaluate finitely");
        return std::abs(gd.v) / (1.0 + std::norm(gv.v));
    }
    Ext d = detail::eval_node(*df_.node_, z);
    if (!d.is_fin()) throw IndeterminateError("spherical: derivative did not evaluate finitely");
    return std::abs(d.v) / (1.0 + std::norm(v.v));
}

} // namespace growthlab
