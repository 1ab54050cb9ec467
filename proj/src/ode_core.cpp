#include "clefour/ode_core.hpp"

#include <cmath>

namespace clefour {

namespace {

constexpr double kSnapTol = 1e-12;

const double kSnapTargets[] = {2.0,       8.0 / 3.0, 4.0, 24.0 / 5.0, 5.0,
                               16.0 / 3.0, 6.0,       7.0, 8.0};

} // namespace

KappaParams make_params(double kappa) {
    if (!(kappa > 0.0 && kappa <= 8.0)) throw DomainError("kappa must lie in (0,8]");
    for (double t : kSnapTargets)
        if (std::fabs(kappa - t) < kSnapTol) kappa = t;
    return {kappa, 8.0 / kappa - 1.0, 3.0 / kappa - 0.5};
}

double poly_eval(const Poly& p, double x) {
    double r = 0.0;
    for (std::size_t j = p.size(); j-- > 0;) r = r * x + p[j];
    return r;
}

OdeSpec boundary_ode(double kappa) {
    const double k = make_params(kappa).kappa;
    const double c = k * k * (3.0 * k - 16.0);
    const double e = 18.0 * k * k - 212.0 * k + 608.0;
    const double k3 = k * k * k;
    OdeSpec s;
    s.p[3] = {0.0, 0.0, k3 / 2.0, -k3, k3 / 2.0};
    s.p[2] = {0.0, c, -3.0 * c, 2.0 * c};
    s.p[1] = {3.0 * k * (k - 4.0) * (k - 8.0), -k * e, k * e};
    s.p[0] = {-6.0 * (k - 4.0) * (k - 8.0) * (k - 8.0), 12.0 * (k - 4.0) * (k - 8.0) * (k - 8.0)};
    return s;
}

OdeSpec bulk_ode(double kappa, double alpha) {
    const double k = make_params(kappa).kappa;
    const double a = alpha;
    const double A = 3.0 * k - 8.0;
    const double B = 3.0 * k - 16.0;
    const double D = -8.0 * a * k + 6.0 * k * k - 40.0 * k + 64.0;
    const double E = -4.0 * (k - 6.0) * (3.0 * k - 8.0);
    const double F = 6.0 * (k - 4.0) * (k - 8.0);
    OdeSpec s;
    s.p[3] = {0.0, 0.0, k * k, -3.0 * k * k, 3.0 * k * k, -k * k};
    s.p[2] = {0.0, 2.0 * k * B, -2.0 * k * (A + 2.0 * B), 2.0 * k * (2.0 * A + B), -2.0 * k * A};
    s.p[1] = {F, E - F, D - E, -D};
    s.p[0] = {0.0, 16.0 * a * (8.0 - k), -8.0 * a * (8.0 - k)};
    return s;
}

double bulk_alpha(double kappa) {
    const double k = make_params(kappa).kappa;
    return (3.0 * k - 8.0) * (8.0 - k) / (32.0 * k);
}

double ode_residual(const OdeSpec& spec, const Jet& jet, double lambda) {
    const double deriv[4] = {jet.v, jet.d1, jet.d2, jet.d3};
    double sum = 0.0, scale = 0.0, coef = 0.0, amp = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double term = poly_eval(spec.p[k], lambda) * deriv[k];
        sum += term;
        scale = std::max(scale, std::fabs(term));
        coef = std::max(coef, std::fabs(poly_eval(spec.p[k], lambda)));
        amp = std::max(amp, std::fabs(deriv[k]));
    }
    // at isolated points every product can vanish identically (a symmetric
    // solution at lambda = 1/2 meets coefficient zeros there); floor the scale
    // so the ratio reports the noise level instead of noise / noise
    scale = std::max(scale, 1e-3 * coef * amp);
    if (scale == 0.0) return 0.0;
    return std::fabs(sum) / scale;
}

} // namespace clefour
