#pragma once

#include <functional>
#include <random>

#include "growthlab/merofn.hpp"

namespace growthlab::testutil {

inline double rel_err(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

inline double rel_err(Complex a, Complex b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

// Independent derivative oracle: central differences along the real
// direction with one Richardson extrapolation step. Test-only; the library
// differentiates symbolically.
inline Complex fd_derivative(const std::function<Complex(Complex)>& f, Complex z, double h = 1e-5) {
    const auto central = [&](double hh) { return (f(z + hh) - f(z - hh)) / (2.0 * hh); };
    const Complex d1 = central(h);
    const Complex d2 = central(h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

inline Complex fd_second_derivative(const std::function<Complex(Complex)>& f, Complex z, double h = 1e-5) {
    return (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h);
}

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed = 20240811u) : gen(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }

    Complex point_in_disc(double max_r = 0.9) {
        const double r = std::sqrt(uniform(0.0, 1.0)) * max_r;
        const double th = uniform(0.0, 2.0 * M_PI);
        return std::polar(r, th);
    }

    Complex small_int_complex() {
        std::uniform_int_distribution<int> d(-3, 3);
        return Complex(d(gen), d(gen));
    }

    Poly poly(int max_deg) {
        std::uniform_int_distribution<int> dd(0, max_deg);
        const int deg = dd(gen);
        std::vector<Complex> c(static_cast<std::size_t>(deg) + 1);
        for (auto& v : c) v = small_int_complex();
        if (c.back() == Complex(0.0)) c.back() = Complex(1.0);
        return Poly(c);
    }

    // Random rational with nonzero denominator; poles may land anywhere.
    MeroFn rational(int max_deg = 3) {
        Poly num = poly(max_deg);
        Poly den = poly(max_deg);
        if (den.is_zero()) den = Poly::constant(Complex(1.0));
        return MeroFn::rational(num, den);
    }
};

} // namespace growthlab::testutil
