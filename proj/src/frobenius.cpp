#include "clefour/frobenius.hpp"

#include <algorithm>
#include <cmath>

namespace clefour {

namespace {

// Falling factorial s(s-1)...(s-k+1) and its s-derivative, k <= 3.
double fall(double s, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (s - i);
    return r;
}

double fall_ds(double s, int k) {
    switch (k) {
        case 0: return 0.0;
        case 1: return 1.0;
        case 2: return 2.0 * s - 1.0;
        default: return 3.0 * s * s - 6.0 * s + 2.0;
    }
}

double coeff(const Poly& p, int j) {
    return (j >= 0 && j < static_cast<int>(p.size())) ? p[j] : 0.0;
}

// phi_d(s) = sum_k coeff(p_k, k+d) * fall(s,k): the operator applied to t^s
// picks up t^{s+d} with this factor.
double phi(const OdeSpec& spec, int d, double s) {
    double r = 0.0;
    for (int k = 0; k < 4; ++k) r += coeff(spec.p[k], k + d) * fall(s, k);
    return r;
}

double phi_ds(const OdeSpec& spec, int d, double s) {
    double r = 0.0;
    for (int k = 0; k < 4; ++k) r += coeff(spec.p[k], k + d) * fall_ds(s, k);
    return r;
}

int max_shift(const OdeSpec& spec) {
    int d = 0;
    for (int k = 0; k < 4; ++k)
        d = std::max(d, static_cast<int>(spec.p[k].size()) - 1 - k);
    return d;
}

} // namespace

std::array<double, 3> indicial_roots(const OdeSpec& spec) {
    // I(s) = s * (a s^2 + b s + c) with coefficients read off the arrays.
    const double c3 = coeff(spec.p[3], 2);
    const double c2 = coeff(spec.p[2], 1);
    const double c1 = coeff(spec.p[1], 0);
    const double a = c3;
    const double b = -3.0 * c3 + c2;
    const double c = 2.0 * c3 - c2 + c1;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) throw UnsupportedError("complex indicial roots");
    const double sq = std::sqrt(disc);
    std::array<double, 3> roots = {0.0, (-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)};
    std::sort(roots.begin(), roots.end());
    return roots;
}

Series expand(const OdeSpec& spec, double rho, int nterms) {
    const auto roots = indicial_roots(spec);
    const int D = max_shift(spec);

    int mres = -1, gaps = 0;
    for (double r : roots) {
        const double diff = r - rho;
        if (diff > 0.5 && std::fabs(diff - std::round(diff)) < 1e-9) {
            mres = static_cast<int>(std::round(diff));
            ++gaps;
        }
    }
    if (gaps > 1) throw UnsupportedError("multiple resonant gaps above this exponent");

    Series s;
    s.rho = rho;
    s.a.assign(nterms + 1, 0.0);
    std::vector<double> lg(nterms + 1, 0.0);  // signed log basis during recurrence
    s.a[0] = 1.0;

    for (int n = 1; n <= nterms; ++n) {
        const double sn = rho + n;
        const double In = phi(spec, -1, sn);
        double pw = 0.0, lgsum = 0.0;
        for (int d = 0; d <= D; ++d) {
            const int idx = n - 1 - d;
            if (idx < 0) continue;
            pw += phi(spec, d, rho + idx) * s.a[idx];
            pw += phi_ds(spec, d, rho + idx) * lg[idx];
            lgsum += phi(spec, d, rho + idx) * lg[idx];
        }
        if (n == mres) {
            const double Ip = phi_ds(spec, -1, sn);
            lg[n] = -pw / Ip;
            s.a[n] = 0.0;  // fixes the admixture of the resonant partner
        } else {
            if (std::fabs(In) < 1e-9)
                throw UnsupportedError("unexpected vanishing of the indicial factor");
            lg[n] = -lgsum / In;
            s.a[n] = -(pw + phi_ds(spec, -1, sn) * lg[n]) / In;
        }
    }

    s.l.resize(lg.size());
    for (std::size_t i = 0; i < lg.size(); ++i) s.l[i] = -lg[i];  // store |log| coefficients
    return s;
}

Jet eval_jet(const Series& s, double t) {
    if (!(t > 0.0 && t <= kTrustRadius + 1e-12))
        throw DomainError("series evaluation outside the trust region");
    const double lt = std::log(t);
    double out[4] = {0, 0, 0, 0};
    const int N = static_cast<int>(s.a.size()) - 1;
    // Horner in t over combined power/log parts, highest order first.
    for (int k = 0; k < 4; ++k) {
        double accA = 0.0, accL = 0.0;
        for (int n = N; n >= 0; --n) {
            const double sn = s.rho + n;
            accA = accA * t + s.a[n] * fall(sn, k) - s.l[n] * fall_ds(sn, k);
            accL = accL * t + s.l[n] * fall(sn, k);
        }
        out[k] = std::pow(t, s.rho - k) * (accA - accL * lt);
    }
    return {out[0], out[1], out[2], out[3]};
}

long double eval_value_ld(const Series& s, long double t) {
    if (!(t > 0.0L && t <= static_cast<long double>(kTrustRadius) + 1e-12L))
        throw DomainError("series evaluation outside the trust region");
    long double accA = 0.0L, accL = 0.0L;
    for (int n = static_cast<int>(s.a.size()) - 1; n >= 0; --n) {
        accA = accA * t + static_cast<long double>(s.a[n]);
        accL = accL * t + static_cast<long double>(s.l[n]);
    }
    return powl(t, static_cast<long double>(s.rho)) * (accA - accL * logl(t));
}

Jet reflect(const Jet& j) { return {j.v, -j.d1, j.d2, -j.d3}; }

} // namespace clefour
