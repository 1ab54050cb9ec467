#include "clefour/fusion.hpp"

#include <algorithm>
#include <cmath>

namespace clefour {

namespace {

long double g0_value(const Series& U, long double h2, long double u, long double x1,
                     long double x2, long double x3) {
    const long double num = (x1 - u) * (x3 - x2);
    const long double lam = num / ((x3 - x1) * (x2 - u));
    return powl(1.0L - lam, -h2) * eval_value_ld(U, lam) / powl(num, h2);
}

} // namespace

double fusion_pde_residual(double kappa, const Series& U, const FusionConfig& cfg) {
    const KappaParams p = make_params(kappa);
    if (!(cfg.u < cfg.x1 && cfg.x1 < cfg.x2 && cfg.x2 < cfg.x3))
        throw DomainError("configuration must be ordered u < x1 < x2 < x3");
    const long double h = p.h;
    const long double k = p.kappa;

    const double pts[4] = {cfg.u, cfg.x1, cfg.x2, cfg.x3};
    double min_gap = 1e300;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) min_gap = std::min(min_gap, std::fabs(pts[i] - pts[j]));
    const long double d = 1e-4L * min_gap;

    const long double u = cfg.u;
    const long double X[3] = {cfg.x1, cfg.x2, cfg.x3};
    auto g = [&](long double uu, int i = -1, long double xi = 0.0L) {
        long double xs[3] = {X[0], X[1], X[2]};
        if (i >= 0) xs[i] = xi;
        return g0_value(U, 2.0L * h, uu, xs[0], xs[1], xs[2]);
    };

    const long double d3u = (g(u + 2 * d) - 2 * g(u + d) + 2 * g(u - d) - g(u - 2 * d)) / (2 * d * d * d);
    const long double du = (-g(u + 2 * d) + 8 * g(u + d) - 8 * g(u - d) + g(u - 2 * d)) / (12 * d);
    const long double g00 = g(u);

    long double s2 = 0.0L, s3 = 0.0L;
    for (int i = 0; i < 3; ++i) {
        const long double xi = X[i];
        const long double dxi =
            (-g(u, i, xi + 2 * d) + 8 * g(u, i, xi + d) - 8 * g(u, i, xi - d) + g(u, i, xi - 2 * d)) /
            (12 * d);
        const long double duxi = (g(u + d, i, xi + d) - g(u + d, i, xi - d) - g(u - d, i, xi + d) +
                                  g(u - d, i, xi - d)) /
                                 (4 * d * d);
        const long double r = xi - u;
        s2 += 4 * dxi / (r * r) - 8 * h * g00 / (r * r * r);
        s3 += 4 * duxi / r - 4 * h * du / (r * r);
    }

    const long double terms[3] = {k / 4 * d3u, 0.5L * (1 - 8 / k) * s2, s3};
    const long double total = terms[0] + terms[1] + terms[2];
    long double scale = 0.0L;
    for (long double t : terms) scale = std::max(scale, std::fabs(t));
    if (scale == 0.0L) return 0.0;
    return static_cast<double>(std::fabs(total) / scale);
}

} // namespace clefour
