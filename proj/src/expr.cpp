#include "growthlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>

namespace growthlab {

namespace {

struct Token {
    enum class Kind { Number, Imag, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind = Kind::End;
    double num = 0.0;
    std::string ident;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;

    int cur() const { return pos_ < src_.size() ? static_cast<unsigned char>(src_[pos_]) : -1; }

    void bump() {
        if (pos_ < src_.size()) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void advance() {
        while (std::isspace(cur())) bump();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        const int c = cur();
        if (c < 0) {
            tok_.kind = Token::Kind::End;
            return;
        }
        if (std::isdigit(c) || c == '.') {
            std::string num;
            while (std::isdigit(cur()) || cur() == '.') {
                num += static_cast<char>(cur());
                bump();
            }
            if (cur() == 'e' || cur() == 'E') {
                num += static_cast<char>(cur());
                bump();
                if (cur() == '+' || cur() == '-') {
                    num += static_cast<char>(cur());
                    bump();
                }
                while (std::isdigit(cur())) {
                    num += static_cast<char>(cur());
                    bump();
                }
            }
            try {
                tok_.num = std::stod(num);
            } catch (const std::exception&) {
                throw ParseError("malformed number '" + num + "'", tok_.line, tok_.col);
            }
            if (cur() == 'i') {
                bump();
                tok_.kind = Token::Kind::Imag;
            } else {
                tok_.kind = Token::Kind::Number;
            }
            return;
        }
        if (std::isalpha(c) || c == '_') {
            std::string id;
            while (std::isalnum(cur()) || cur() == '_') {
                id += static_cast<char>(cur());
                bump();
            }
            if (id == "i") {
                tok_.kind = Token::Kind::Imag;
                tok_.num = 1.0;
            } else {
                tok_.kind = Token::Kind::Ident;
                tok_.ident = std::move(id);
            }
            return;
        }
        bump();
        switch (c) {
        case '+': tok_.kind = Token::Kind::Plus; return;
        case '-': tok_.kind = Token::Kind::Minus; return;
        case '*': tok_.kind = Token::Kind::Star; return;
        case '/': tok_.kind = Token::Kind::Slash; return;
        case '^': tok_.kind = Token::Kind::Caret; return;
        case '(': tok_.kind = Token::Kind::LParen; return;
        case ')': tok_.kind = Token::Kind::RParen; return;
        default:
            throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", tok_.line,
                             tok_.col);
        }
    }
};

class Parser {
public:
    Parser(std::string_view src, ExprContext ctx) : lex_(src), ctx_(ctx) {}

    Expr parse() {
        Expr e = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End)
            throw ParseError("trailing input after expression", t.line, t.col);
        return e;
    }

private:
    Lexer lex_;
    ExprContext ctx_;

    [[noreturn]] void fail(const std::string& msg, const Token& t) { throw ParseError(msg, t.line, t.col); }

    Expr mk(Expr::Kind k, const Token& t) {
        Expr e;
        e.kind = k;
        e.line = t.line;
        e.col = t.col;
        return e;
    }

    Expr expr() {
        Expr lhs;
        if (lex_.peek().kind == Token::Kind::Minus) {
            const Token t = lex_.next();
            lhs = mk(Expr::Kind::Neg, t);
            lhs.kids.push_back(term());
        } else {
            lhs = term();
        }
        while (lex_.peek().kind == Token::Kind::Plus || lex_.peek().kind == Token::Kind::Minus) {
            const Token t = lex_.next();
            Expr node = mk(t.kind == Token::Kind::Plus ? Expr::Kind::Add : Expr::Kind::Sub, t);
            node.kids.push_back(std::move(lhs));
            node.kids.push_back(term());
            lhs = std::move(node);
        }
        return lhs;
    }

    Expr term() {
        Expr lhs = factor();
        while (lex_.peek().kind == Token::Kind::Star || lex_.peek().kind == Token::Kind::Slash) {
            const Token t = lex_.next();
            Expr node = mk(t.kind == Token::Kind::Star ? Expr::Kind::Mul : Expr::Kind::Div, t);
            node.kids.push_back(std::move(lhs));
            node.kids.push_back(factor());
            lhs = std::move(node);
        }
        return lhs;
    }

    Expr factor() {
        Expr base = atom();
        if (lex_.peek().kind == Token::Kind::Caret) {
            const Token t = lex_.next();
            int sign = 1;
            if (lex_.peek().kind == Token::Kind::Minus) {
                lex_.next();
                sign = -1;
            }
            const Token n = lex_.next();
            if (n.kind != Token::Kind::Number || n.num != std::floor(n.num))
                fail("power exponent must be an integer literal", n);
            Expr node = mk(Expr::Kind::Pow, t);
            node.ipow = sign * static_cast<int>(n.num);
            node.kids.push_back(std::move(base));
            return node;
        }
        return base;
    }

    void expect(Token::Kind k, const char* what) {
        const Token t = lex_.next();
        if (t.kind != k) fail(std::string("expected ") + what, t);
    }

    Complex complex_literal() {
        // [-] number [i] [(+|-) number i]
        double sign = 1.0;
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.next();
            sign = -1.0;
        }
        Token t = lex_.next();
        if (t.kind != Token::Kind::Number && t.kind != Token::Kind::Imag) fail("expected a complex literal", t);
        Complex v = t.kind == Token::Kind::Imag ? Complex(0.0, sign * t.num) : Complex(sign * t.num, 0.0);
        if (t.kind == Token::Kind::Number &&
            (lex_.peek().kind == Token::Kind::Plus || lex_.peek().kind == Token::Kind::Minus)) {
            const double s2 = lex_.next().kind == Token::Kind::Plus ? 1.0 : -1.0;
            const Token im = lex_.next();
            if (im.kind != Token::Kind::Imag) fail("expected the imaginary part of a complex literal", im);
            v += Complex(0.0, s2 * im.num);
        }
        return v;
    }

    Expr atom() {
        const Token t = lex_.peek();
        switch (t.kind) {
        case Token::Kind::Number: {
            lex_.next();
            Expr e = mk(Expr::Kind::Literal, t);
            e.lit = Complex(t.num, 0.0);
            return e;
        }
        case Token::Kind::Imag: {
            lex_.next();
            if (ctx_ == ExprContext::Weight)
                fail("context violation: imaginary literal in a weight expression", t);
            Expr e = mk(Expr::Kind::Literal, t);
            e.lit = Complex(0.0, t.num);
            return e;
        }
        case Token::Kind::LParen: {
            lex_.next();
            Expr e = expr();
            expect(Token::Kind::RParen, "')'");
            return e;
        }
        case Token::Kind::Ident:
            return call_or_var();
        default:
            fail("expected a value", t);
        }
    }

    Expr call_or_var() {
        const Token t = lex_.next();
        const std::string& id = t.ident;
        if (id == "z") {
            if (ctx_ == ExprContext::Weight)
                fail("context violation: variable 'z' in a weight expression", t);
            Expr e = mk(Expr::Kind::Var, t);
            e.var = 'z';
            return e;
        }
        if (id == "r") {
            if (ctx_ == ExprContext::Function)
                fail("variable 'r' is only available in weight expressions", t);
            Expr e = mk(Expr::Kind::Var, t);
            e.var = 'r';
            return e;
        }
        if (id == "tan" || id == "powp" || id == "mobius" || id == "recip") {
            if (ctx_ == ExprContext::Weight)
                fail("context violation: call '" + id + "' in a weight expression", t);
            if (id == "tan") {
                expect(Token::Kind::LParen, "'('");
                Expr e = mk(Expr::Kind::Tan, t);
                e.kids.push_back(expr());
                expect(Token::Kind::RParen, "')'");
                return e;
            }
            if (id == "powp") {
                expect(Token::Kind::LParen, "'('");
                double sign = 1.0;
                if (lex_.peek().kind == Token::Kind::Minus) {
                    lex_.next();
                    sign = -1.0;
                }
                const Token n = lex_.next();
                if (n.kind != Token::Kind::Number) fail("powp argument must be a real literal", n);
                expect(Token::Kind::RParen, "')'");
                Expr e = mk(Expr::Kind::Powp, t);
                e.preal = sign * n.num;
                return e;
            }
            if (id == "mobius") {
                expect(Token::Kind::LParen, "'('");
                const Complex a = complex_literal();
                expect(Token::Kind::RParen, "')'");
                expect(Token::Kind::LParen, "'('");
                Expr e = mk(Expr::Kind::Mobius, t);
                e.center = a;
                e.kids.push_back(expr());
                expect(Token::Kind::RParen, "')'");
                return e;
            }
            expect(Token::Kind::LParen, "'('");
            Expr e = mk(Expr::Kind::Recip, t);
            e.kids.push_back(expr());
            expect(Token::Kind::RParen, "')'");
            return e;
        }
        fail("unknown identifier '" + id + "'", t);
    }
};

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_complex(Complex v) {
    if (v.imag() == 0.0) return fmt_real(v.real());
    if (v.real() == 0.0) return fmt_real(v.imag()) + "i";
    if (v.imag() < 0.0) return fmt_real(v.real()) + "-" + fmt_real(-v.imag()) + "i";
    return fmt_real(v.real()) + "+" + fmt_real(v.imag()) + "i";
}

// Partial polynomialization, used to recognize linear tangent arguments.
std::optional<Poly> as_poly(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Var: return Poly::identity();
    case Expr::Kind::Literal: return Poly::constant(e.lit);
    case Expr::Kind::Neg: {
        auto k = as_poly(e.kids[0]);
        if (!k) return std::nullopt;
        return k->scaled(Complex(-1.0));
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
        auto a = as_poly(e.kids[0]), b = as_poly(e.kids[1]);
        if (!a || !b) return std::nullopt;
        return e.kind == Expr::Kind::Add ? *a + *b : *a - *b;
    }
    case Expr::Kind::Mul: {
        auto a = as_poly(e.kids[0]), b = as_poly(e.kids[1]);
        if (!a || !b) return std::nullopt;
        return *a * *b;
    }
    case Expr::Kind::Div: {
        auto a = as_poly(e.kids[0]), b = as_poly(e.kids[1]);
        if (!a || !b || b->degree() != 0) return std::nullopt;
        return a->scaled(1.0 / b->coeffs()[0]);
    }
    case Expr::Kind::Pow: {
        auto a = as_poly(e.kids[0]);
        if (!a || e.ipow < 0) return std::nullopt;
        Poly acc = Poly::constant(Complex(1.0));
        for (int i = 0; i < e.ipow; ++i) acc = acc * *a;
        return acc;
    }
    default: return std::nullopt;
    }
}

} // namespace

Expr parse_expr(std::string_view source, ExprContext ctx) { return Parser(source, ctx).parse(); }

std::string print_expr(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Var: return std::string(1, e.var);
    case Expr::Kind::Literal: {
        const std::string s = fmt_complex(e.lit);
        return s.find_first_of("+-") != std::string::npos ? "(" + s + ")" : s;
    }
    case Expr::Kind::Add: return "(" + print_expr(e.kids[0]) + " + " + print_expr(e.kids[1]) + ")";
    case Expr::Kind::Sub: return "(" + print_expr(e.kids[0]) + " - " + print_expr(e.kids[1]) + ")";
    case Expr::Kind::Mul: return "(" + print_expr(e.kids[0]) + " * " + print_expr(e.kids[1]) + ")";
    case Expr::Kind::Div: return "(" + print_expr(e.kids[0]) + " / " + print_expr(e.kids[1]) + ")";
    case Expr::Kind::Pow: return "(" + print_expr(e.kids[0]) + ")^" + std::to_string(e.ipow);
    case Expr::Kind::Neg: return "(-" + print_expr(e.kids[0]) + ")";
    case Expr::Kind::Tan: return "tan(" + print_expr(e.kids[0]) + ")";
    case Expr::Kind::Powp: return "powp(" + fmt_real(e.preal) + ")";
    case Expr::Kind::Mobius: return "mobius(" + fmt_complex(e.center) + ")(" + print_expr(e.kids[0]) + ")";
    case Expr::Kind::Recip: return "recip(" + print_expr(e.kids[0]) + ")";
    }
    return "?";
}

Complex eval_expr(const Expr& e, Complex z) {
    switch (e.kind) {
    case Expr::Kind::Var: return z;
    case Expr::Kind::Literal: return e.lit;
    case Expr::Kind::Add: return eval_expr(e.kids[0], z) + eval_expr(e.kids[1], z);
    case Expr::Kind::Sub: return eval_expr(e.kids[0], z) - eval_expr(e.kids[1], z);
    case Expr::Kind::Mul: return eval_expr(e.kids[0], z) * eval_expr(e.kids[1], z);
    case Expr::Kind::Div: return eval_expr(e.kids[0], z) / eval_expr(e.kids[1], z);
    case Expr::Kind::Pow: {
        const Complex b = eval_expr(e.kids[0], z);
        return std::pow(b, e.ipow);
    }
    case Expr::Kind::Neg: return -eval_expr(e.kids[0], z);
    case Expr::Kind::Tan: return std::tan(eval_expr(e.kids[0], z));
    case Expr::Kind::Powp: return std::exp(-e.preal * std::log(1.0 - z));
    case Expr::Kind::Mobius: return eval_expr(e.kids[0], mobius(e.center, z));
    case Expr::Kind::Recip: return 1.0 / eval_expr(e.kids[0], z);
    }
    return Complex(0.0);
}

MeroFn to_merofn(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Var: return MeroFn::var();
    case Expr::Kind::Literal: return MeroFn::constant(e.lit);
    case Expr::Kind::Add: return to_merofn(e.kids[0]) + to_merofn(e.kids[1]);
    case Expr::Kind::Sub: return to_merofn(e.kids[0]) - to_merofn(e.kids[1]);
    case Expr::Kind::Mul: return to_merofn(e.kids[0]) * to_merofn(e.kids[1]);
    case Expr::Kind::Div: return to_merofn(e.kids[0]) / to_merofn(e.kids[1]);
    case Expr::Kind::Pow: {
        const MeroFn base = to_merofn(e.kids[0]);
        if (e.ipow >= 0) return base.pow(e.ipow);
        return base.pow(-e.ipow).reciprocal();
    }
    case Expr::Kind::Neg: return to_merofn(e.kids[0]).scaled(Complex(-1.0));
    case Expr::Kind::Tan: {
        const std::optional<Poly> p = as_poly(e.kids[0]);
        if (p && p->degree() <= 0)
            return MeroFn::constant(std::tan(p->is_zero() ? Complex(0.0) : p->coeffs()[0]));
        if (p && p->degree() == 1 && p->coeffs()[0] == Complex(0.0))
            return MeroFn::scaled_tan(p->coeffs()[1]);
        throw ParseError("tan argument must reduce to a linear monomial k*z", e.line, e.col);
    }
    case Expr::Kind::Powp: return MeroFn::branch_power(e.preal);
    case Expr::Kind::Mobius: return MeroFn::mobius_precompose(to_merofn(e.kids[0]), e.center);
    case Expr::Kind::Recip: return to_merofn(e.kids[0]).reciprocal();
    }
    throw ParseError("unsupported expression", e.line, e.col);
}

RadialWeight to_weight(const Expr& e) {
    auto fn = [e](double r) { return eval_expr(e, Complex(r, 0.0)).real(); };
    return RadialWeight::from_function(fn, print_expr(e));
}

} // namespace growthlab
