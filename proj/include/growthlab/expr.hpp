#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "growthlab/merofn.hpp"
#include "growthlab/radial_weight.hpp"

namespace growthlab {

enum class ExprContext { Function, Weight };

/// Parsed expression tree. Grammar (whitespace insensitive, left associative):
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ('^' int)?
///   atom   := var | literal | '(' expr ')' | call
///   call   := tan(expr) | powp(p) | mobius(a)(expr) | recip(expr)
/// The variable is `z` in function context and `r` in weight context; calls
/// and imaginary literals are context violations in weight context.
struct Expr {
    enum class Kind { Var, Literal, Add, Sub, Mul, Div, Pow, Neg, Tan, Powp, Mobius, Recip };
    Kind kind = Kind::Var;
    char var = 'z';    // 'z' in function context, 'r' in weight context
    Complex lit{};     // Literal
    int ipow = 0;      // Pow exponent
    double preal = 0;  // Powp argument
    Complex center{};  // Mobius center
    std::vector<Expr> kids;
    int line = 1, col = 1;
};

Expr parse_expr(std::string_view source, ExprContext ctx);

/// Canonical printable form; parsing the output yields a tree that evaluates
/// identically to the input.
std::string print_expr(const Expr& e);

/// Direct AST evaluation (no pole handling) for round-trip checks and weights.
Complex eval_expr(const Expr& e, Complex z);

/// Function-context conversion. tan arguments must reduce to a linear
/// monomial k*z (that is the supported tangent family).
MeroFn to_merofn(const Expr& e);

/// Weight-context conversion; validates nonnegativity and integrability.
RadialWeight to_weight(const Expr& e);

} // namespace growthlab
