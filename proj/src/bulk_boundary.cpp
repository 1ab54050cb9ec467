#include "clefour/bulk_boundary.hpp"

#include <cmath>

#include "clefour/ode_core.hpp"
#include "clefour/special_functions.hpp"

namespace clefour {

double bulk_green(double kappa, const BulkPoint& p) {
    const KappaParams kp = make_params(kappa);
    if (!(p.z.imag() > 0.0)) throw DomainError("bulk point must lie in the upper half-plane");
    const double h = kp.h;
    const double alpha = bulk_alpha(kp.kappa);
    return std::pow(std::fabs(p.x2 - p.x1), -h) * std::pow(p.z.imag(), h - alpha) *
           std::pow(std::abs(p.z - p.x1), -h) * std::pow(std::abs(p.z - p.x2), -h);
}

std::complex<double> bulk_cross_ratio(const BulkPoint& p) {
    const std::complex<double> zb = std::conj(p.z);
    return (p.x2 - p.x1) * (zb - p.z) / ((p.z - p.x1) * (zb - p.x2));
}

double mobius_deviation(double kappa, const BulkPoint& p, const std::array<double, 4>& abcd) {
    const KappaParams kp = make_params(kappa);
    const double a = abcd[0], b = abcd[1], c = abcd[2], d = abcd[3];
    const double det = a * d - b * c;
    if (det <= 0.0) throw DomainError("map must preserve the upper half-plane");
    auto map = [&](std::complex<double> w) { return (a * w + b) / (c * w + d); };
    auto dmap = [&](std::complex<double> w) { return det / ((c * w + d) * (c * w + d)); };

    const BulkPoint q{map(p.x1).real(), map(p.x2).real(), map(p.z)};
    const double h = kp.h;
    const double alpha = bulk_alpha(kp.kappa);
    const double weight = std::pow(std::abs(dmap(p.x1)), h) * std::pow(std::abs(dmap(p.x2)), h) *
                          std::pow(std::abs(dmap(p.z)), alpha);
    return std::fabs(bulk_green(kappa, q) * weight / bulk_green(kappa, p) - 1.0);
}

Jet bulk_solution_jet(double kappa, double c1, double c2, double c3, double lambda) {
    const double k = make_params(kappa).kappa;
    if (!(lambda > 0.0) || std::fabs(1.0 - lambda) > 0.6)
        throw DomainError("bulk solution jet needs lambda > 0 with |1-lambda| <= 0.6");
    if (std::fabs(1.0 - lambda) < 1e-12)
        throw DomainError("bulk solution jet is singular at lambda = 1");
    const double q = (k - 8.0) / k;
    const Jet lam = jet_var(lambda);
    const Jet arg = 1.0 - lam;                                    // hypergeometric argument
    const Jet am = lambda < 1.0 ? 1.0 - lam : lam - 1.0;          // |1 - lambda|
    const Jet t1 = pow(lam, -q) * pow(am, 0.5 * q);
    const Jet t2 = pow(am, q) * hyp2f1_series(2.0 * q, 1.5 * q, (3.0 * k - 8.0) / (2.0 * k), arg);
    const Jet t3 = pow(am, 0.5 * q) * hyp2f1_series(q, 1.5 * q, (k + 8.0) / (2.0 * k), arg);
    return c1 * t1 + c2 * t2 + c3 * t3;
}

} // namespace clefour
