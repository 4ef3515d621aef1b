#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "growthlab/errors.hpp"

namespace growthlab {

using Complex = std::complex<double>;

/// Dense polynomial with complex coefficients, index = power of z.
/// The zero polynomial is the empty coefficient list.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(Complex c) { return Poly({c}); }
    static Poly identity() { return Poly({Complex(0.0), Complex(1.0)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const std::vector<Complex>& coeffs() const { return c_; }

    Complex eval(Complex z) const {
        Complex acc(0.0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Complex> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
        return Poly(std::move(d));
    }

    Poly scaled(Complex s) const {
        std::vector<Complex> d(c_);
        for (auto& v : d) v *= s;
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Complex> d(std::max(a.c_.size(), b.c_.size()), Complex(0.0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) d[i] += b.c_[i];
        return Poly(std::move(d));
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + b.scaled(Complex(-1.0)); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Complex> d(a.c_.size() + b.c_.size() - 1, Complex(0.0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(d));
    }

private:
    std::vector<Complex> c_;

    // Exact zero trim only; no tolerance-based simplification.
    void trim() {
        while (!c_.empty() && c_.back() == Complex(0.0)) c_.pop_back();
    }
};

} // namespace growthlab
