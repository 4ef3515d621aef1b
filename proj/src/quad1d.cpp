#include "growthlab/quad1d.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "growthlab/errors.hpp"

namespace growthlab {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    // Newton iteration on Legendre polynomials, symmetric pairs.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    return rule;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw DomainError("integrate_adaptive: requires a <= b");
    }
    boost::math::quadrature::tanh_sinh<double> quad;
    const double term = std::clamp(abs_tol / 100.0, 1e-14, 1e-6);
    double error = 0.0, l1 = 0.0;
    const double v = quad.integrate(f, a, b, term, &error, &l1);
    if (!std::isfinite(v)) throw DomainError("integrate_adaptive: integral did not converge");
    return v;
}

} // namespace growthlab
