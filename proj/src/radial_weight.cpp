#include "growthlab/radial_weight.hpp"

#include <cmath>
#include <complex>

#include "growthlab/quad1d.hpp"

namespace growthlab {

namespace {

double checked_l1(const std::function<double(double)>& w, const std::string& label) {
    for (int i = 1; i < 64; ++i) {
        const double r = i / 64.0;
        const double v = w(r);
        if (!std::isfinite(v) && r < 63.0 / 64.0)
            throw DomainError("radial weight '" + label + "' is not finite at r=" + std::to_string(r));
        if (v < 0.0) throw DomainError("radial weight '" + label + "' is negative at r=" + std::to_string(r));
    }
    const double mass = integrate_adaptive([&](double s) { return w(s); }, 0.0, 1.0, 1e-10);
    if (!std::isfinite(mass) || mass > 1e12)
        throw DomainError("radial weight '" + label + "' does not have finite L1 mass");
    return mass;
}

} // namespace

RadialWeight RadialWeight::constant(double c) {
    if (c < 0.0) throw DomainError("constant weight must be nonnegative");
    return RadialWeight([c](double) { return c; }, "const:" + std::to_string(c), c);
}

RadialWeight RadialWeight::power_one_minus(double beta) {
    if (beta <= -1.0) throw DomainError("power weight (1-r)^beta requires beta > -1");
    return RadialWeight([beta](double r) { return std::pow(1.0 - r, beta); },
                        "power:" + std::to_string(beta), 1.0 / (beta + 1.0));
}

RadialWeight RadialWeight::standard(double alpha) {
    if (alpha <= -1.0) throw DomainError("standard weight (1-r^2)^alpha requires alpha > -1");
    auto fn = [alpha](double r) { return std::pow(1.0 - r * r, alpha); };
    const double mass = integrate_adaptive(fn, 0.0, 1.0, 1e-10);
    return RadialWeight(fn, "standard:" + std::to_string(alpha), mass);
}

RadialWeight RadialWeight::from_function(std::function<double(double)> w, std::string label) {
    const double mass = checked_l1(w, label);
    return RadialWeight(std::move(w), std::move(label), mass);
}

double omega_star(const RadialWeight& w, double r) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("omega_star: r must lie in (0,1)");
    return integrate_adaptive([&w, r](double s) { return w(s) * std::log(s / r) * s; }, r, 1.0, 1e-10);
}

SmoothIncreasing SmoothIncreasing::power(double beta) {
    if (beta <= 1.0) throw DomainError("smoothly increasing power gauge requires beta > 1");
    return SmoothIncreasing([beta](double r) { return std::pow(1.0 - r, -beta); },
                            "power:" + std::to_string(beta));
}

SmoothIncreasing SmoothIncreasing::from_function(std::function<double(double)> phi, std::string label) {
    for (int i = 0; i < 32; ++i) {
        const double r = i / 32.0;
        if (!(phi(r) > 0.0)) throw DomainError("gauge '" + label + "' must be positive on [0,1)");
    }
    return SmoothIncreasing(std::move(phi), std::move(label));
}

SmoothIncreasing::Diagnostic SmoothIncreasing::sample_diagnostic() const {
    Diagnostic d;
    d.increasing = true;
    d.gauge_condition = true;
    double prev_phi = phi_(0.0);
    double prev_gauge = 0.0;
    for (int j = 1; j <= 16; ++j) {
        const double r = 1.0 - std::pow(2.0, -j);
        const double p = phi_(r);
        if (p < prev_phi) d.increasing = false;
        const double g = p * (1.0 - r);
        if (j >= 8 && g < prev_gauge) d.gauge_condition = false;
        prev_phi = p;
        prev_gauge = g;
    }
    // Self-similarity sampler: phi(|a + w/phi(|a|)|)/phi(|a|) near |a| = 1.
    for (int j = 10; j <= 14; ++j) {
        const double a = 1.0 - std::pow(2.0, -j);
        const double pa = phi_(a);
        for (int t = 0; t < 8; ++t) {
            const std::complex<double> w = std::polar(0.5, 2.0 * M_PI * t / 8.0);
            const double arg = std::abs(std::complex<double>(a, 0.0) + w / pa);
            if (arg >= 1.0) continue;
            d.max_ratio_deviation = std::max(d.max_ratio_deviation, std::abs(phi_(arg) / pa - 1.0));
        }
    }
    return d;
}

} // namespace growthlab
