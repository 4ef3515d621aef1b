#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "growthlab/expr.hpp"
#include "test_util.hpp"

using namespace growthlab;
using namespace growthlab::testutil;

TEST_CASE("pinned parse examples") {
    // rational node, value 0.5 at z = 0
    const Expr e1 = parse_expr("1/(2-z)", ExprContext::Function);
    const MeroFn f1 = to_merofn(e1);
    CHECK(f1.eval_extended(Complex(0.0)).value().real() == doctest::Approx(0.5));

    // grammar exercise; derivative order 2 supported
    const Expr e2 = parse_expr("tan(0.7*z)^2 + 1", ExprContext::Function);
    const MeroFn f2 = to_merofn(e2);
    CHECK_NOTHROW((void)f2.derivative(2));
    CHECK(f2.eval_extended(Complex(0.0)).value().real() == doctest::Approx(1.0));

    // context violation
    CHECK_THROWS_AS((void)parse_expr("powp(0.5)", ExprContext::Weight), ParseError);
}

TEST_CASE("parse errors carry line and column") {
    try {
        (void)parse_expr("1/(2-", ExprContext::Function);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 6);
    }
    try {
        (void)parse_expr("z + $", ExprContext::Function);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.column == 5);
    }
    CHECK_THROWS_AS((void)parse_expr("z z", ExprContext::Function), ParseError);
    CHECK_THROWS_AS((void)parse_expr("", ExprContext::Function), ParseError);
    CHECK_THROWS_AS((void)parse_expr("foo(z)", ExprContext::Function), ParseError);
    CHECK_THROWS_AS((void)parse_expr("z^1.5", ExprContext::Function), ParseError);
}

TEST_CASE("context rules") {
    CHECK_THROWS_AS((void)parse_expr("z + 1", ExprContext::Weight), ParseError);
    CHECK_THROWS_AS((void)parse_expr("1 - 2i", ExprContext::Weight), ParseError);
    CHECK_THROWS_AS((void)parse_expr("tan(r)", ExprContext::Weight), ParseError);
    CHECK_THROWS_AS((void)parse_expr("r", ExprContext::Function), ParseError);
    CHECK_NOTHROW((void)parse_expr("(1-r)*(1-r)", ExprContext::Weight));
}

TEST_CASE("complex literals and signs") {
    const Expr e = parse_expr("-2 + 3i", ExprContext::Function);
    CHECK(std::abs(eval_expr(e, Complex(0.0)) - Complex(-2.0, 3.0)) < 1e-15);
    const Expr e2 = parse_expr("1-2i", ExprContext::Function);
    CHECK(std::abs(eval_expr(e2, Complex(0.0)) - Complex(1.0, -2.0)) < 1e-15);
    const Expr e3 = parse_expr("i*z", ExprContext::Function);
    CHECK(std::abs(eval_expr(e3, Complex(0.5)) - Complex(0.0, 0.5)) < 1e-15);
}

TEST_CASE("mobius and recip forms") {
    const Expr e = parse_expr("mobius(0.5)(z^2)", ExprContext::Function);
    const MeroFn f = to_merofn(e);
    // substitutes phi_a(z): at z = 0, phi_{0.5}(0) = 0.5, squared = 0.25
    CHECK(f.eval_extended(Complex(0.0)).value().real() == doctest::Approx(0.25));

    const MeroFn r = to_merofn(parse_expr("recip(2-z)", ExprContext::Function));
    CHECK(r.eval_extended(Complex(0.0)).value().real() == doctest::Approx(0.5));

    // negative powers go through the reciprocal
    const MeroFn n = to_merofn(parse_expr("(2-z)^-2", ExprContext::Function));
    CHECK(n.eval_extended(Complex(0.0)).value().real() == doctest::Approx(0.25));
}

TEST_CASE("tan argument restriction") {
    CHECK_NOTHROW((void)to_merofn(parse_expr("tan(0.3*z)", ExprContext::Function)));
    CHECK_NOTHROW((void)to_merofn(parse_expr("tan(z/2)", ExprContext::Function)));
    CHECK_NOTHROW((void)to_merofn(parse_expr("tan(0.5)", ExprContext::Function))); // constant fold
    CHECK_THROWS_AS((void)to_merofn(parse_expr("tan(z^2)", ExprContext::Function)), ParseError);
    CHECK_THROWS_AS((void)to_merofn(parse_expr("tan(z+1)", ExprContext::Function)), ParseError);
}

namespace {

Expr random_expr(Rng& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
    Expr e;
    switch (pick(rng.gen)) {
    case 0:
        e.kind = Expr::Kind::Var;
        e.var = 'z';
        return e;
    case 1: {
        e.kind = Expr::Kind::Literal;
        std::uniform_int_distribution<int> d(-4, 4);
        e.lit = rng.uniform(0.0, 1.0) < 0.3 ? Complex(0.0, d(rng.gen)) : Complex(d(rng.gen), 0.0);
        return e;
    }
    case 2:
    case 3: {
        e.kind = pick(rng.gen) % 2 ? Expr::Kind::Add : Expr::Kind::Sub;
        e.kids.push_back(random_expr(rng, depth - 1));
        e.kids.push_back(random_expr(rng, depth - 1));
        return e;
    }
    case 4: {
        e.kind = rng.uniform(0.0, 1.0) < 0.5 ? Expr::Kind::Mul : Expr::Kind::Div;
        e.kids.push_back(random_expr(rng, depth - 1));
        e.kids.push_back(random_expr(rng, depth - 1));
        return e;
    }
    case 5: {
        e.kind = Expr::Kind::Pow;
        std::uniform_int_distribution<int> d(-3, 3);
        e.ipow = d(rng.gen);
        e.kids.push_back(random_expr(rng, depth - 1));
        return e;
    }
    case 6: {
        e.kind = Expr::Kind::Neg;
        e.kids.push_back(random_expr(rng, depth - 1));
        return e;
    }
    default: {
        const double roll = rng.uniform(0.0, 1.0);
        if (roll < 0.4) {
            e.kind = Expr::Kind::Tan;
            Expr arg;
            arg.kind = Expr::Kind::Mul;
            Expr k;
            k.kind = Expr::Kind::Literal;
            k.lit = Complex(rng.uniform(0.1, 0.9), 0.0);
            Expr v;
            v.kind = Expr::Kind::Var;
            v.var = 'z';
            arg.kids = {k, v};
            e.kids.push_back(arg);
        } else if (roll < 0.7) {
            e.kind = Expr::Kind::Powp;
            e.preal = rng.uniform(0.1, 0.9);
        } else {
            e.kind = Expr::Kind::Mobius;
            e.center = Complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
            e.kids.push_back(random_expr(rng, depth - 1));
        }
        return e;
    }
    }
}

} // namespace

TEST_CASE("round-trip: printing and re-parsing evaluates identically") {
    Rng rng(7u);
    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 200; ++trial) {
        const Expr e = random_expr(rng, 4);
        const std::string text = print_expr(e);
        Expr back;
        try {
            back = parse_expr(text, ExprContext::Function);
        } catch (const ParseError&) {
            FAIL("printed expression failed to parse: ", text);
            continue;
        }
        int points = 0;
        for (int i = 0; i < 40 && points < 20; ++i) {
            const Complex z = rng.point_in_disc(0.8);
            const Complex a = eval_expr(e, z);
            const Complex b = eval_expr(back, z);
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || std::abs(a) > 1e6) continue;
            CHECK(rel_err(a, b) < 1e-14);
            ++points;
        }
        if (points > 0) ++tested;
    }
    CHECK(tested >= 200);
}

TEST_CASE("weight conversion") {
    const RadialWeight w = to_weight(parse_expr("1", ExprContext::Weight));
    CHECK(w(0.3) == doctest::Approx(1.0));
    CHECK(w.l1_mass() == doctest::Approx(1.0));
    const RadialWeight q = to_weight(parse_expr("(1-r)^2", ExprContext::Weight));
    CHECK(q(0.5) == doctest::Approx(0.25));
    // negative weights are rejected at construction
    CHECK_THROWS_AS((void)to_weight(parse_expr("r - 1", ExprContext::Weight)), DomainError);
}
