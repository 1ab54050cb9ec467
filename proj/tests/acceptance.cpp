// Acceptance gate: one line per criterion, first failure aborts with exit 1.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "clefour/bulk_boundary.hpp"
#include "clefour/closed_forms.hpp"
#include "clefour/connection.hpp"
#include "clefour/errors.hpp"
#include "clefour/frobenius.hpp"
#include "clefour/fusion.hpp"
#include "clefour/ode_core.hpp"
#include "clefour/perc_mc.hpp"
#include "clefour/special_functions.hpp"

namespace {

#define REQUIRE(cond, msg)                                                      \
    do {                                                                        \
        if (!(cond)) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg \
                      << "\n";                                                  \
            std::exit(1);                                                       \
        }                                                                       \
    } while (0)

using clock_t_ = std::chrono::steady_clock;

double seconds_since(clock_t_::time_point t0) {
    return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

void pass(int n, const std::string& msg) {
    std::cout << "[PASS] criterion " << n << ": " << msg << "\n";
}

std::string num(double v, const char* f = "%.3e") {
    char buf[48];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const std::vector<double> kKappaGrid{4.5, 24.0 / 5.0, 5.0, 16.0 / 3.0, 6.0, 7.0, 7.5};

std::vector<double> lambda_scan() {
    std::vector<double> xs;
    for (int i = 1; i <= 12; ++i) xs.push_back(0.05 * i);
    return xs;
}

}  // namespace

int main() {
    using namespace clefour;
    const double pi = std::numbers::pi;

    // 1. series solutions solve the equation across kappa and lambda
    {
        const auto t0 = clock_t_::now();
        double worst = 0.0;
        for (double kappa : kKappaGrid) {
            const OdeSpec spec = boundary_ode(kappa);
            for (double rho : indicial_roots(spec)) {
                const Series s = expand(spec, rho, 200);
                for (double lam : lambda_scan()) {
                    const double r = ode_residual(spec, eval_jet(s, lam), lam);
                    REQUIRE(r <= 1e-8, "series residual " << num(r) << " at kappa=" << kappa
                                                          << " rho=" << rho << " lambda=" << lam);
                    worst = std::max(worst, r);
                }
            }
        }
        const double dt = seconds_since(t0);
        REQUIRE(dt < 5.0, "series scan took " << dt << " s (budget 5 s)");
        pass(1, "series residual <= 1e-8 over 7 kappa x 3 solutions x 12 lambda (max " +
                    num(worst) + ", " + num(dt, "%.2f") + " s)");
    }

    // 2. leading expansion coefficients at kappa=6
    {
        const OdeSpec spec = boundary_ode(6.0);
        const Series v0 = expand(spec, 0.0, 40);
        const Series vh = expand(spec, 1.0 / 3.0, 40);
        const Series v2 = expand(spec, 2.0, 40);
        REQUIRE(std::fabs(v0.a[1] + 2.0 / 3.0) <= 1e-10, "a1(V0) != -2/3");
        REQUIRE(std::fabs(v0.l[2] - 8.0 / 45.0) <= 1e-10, "l2(V0) != 8/45");
        REQUIRE(std::fabs(vh.a[1] + 0.5) <= 1e-10, "a1(V_{1/3}) != -1/2");
        REQUIRE(std::fabs(v2.a[1] - 1.0 / 3.0) <= 1e-10, "a1(V2) != 1/3");
        pass(2, "kappa=6 coefficients a1(V0)=-2/3, l2(V0)=8/45, a1(V_{1/3})=-1/2, a1(V2)=1/3");
    }

    // 3. amplitude at kappa=6: small-lambda extrapolation vs closed form
    {
        const ConnectionData cd = connect(6.0);
        const double closed = 8.0 * std::sqrt(3.0) * pi * std::sin(2.0 * pi / 9.0) /
                              (135.0 * std::cos(5.0 * pi / 18.0));
        const double lam = 5e-4;
        const double a_est = universal_ratio(cd, lam) / (lam * lam) / (1.0 + lam);
        REQUIRE(std::fabs(a_est - closed) <= 1e-6,
                "A extrapolation off by " << num(std::fabs(a_est - closed)));

        // next-order coefficient of R/(A lambda^2) = 1 + lambda + ...
        const double q1 = universal_ratio(cd, 0.004) / (0.004 * 0.004) / closed;
        const double q2 = universal_ratio(cd, 0.008) / (0.008 * 0.008) / closed;
        const double slope = (q2 - q1) / 0.004;
        REQUIRE(std::fabs(slope - 1.0) <= 0.02,
                "linear coefficient " << num(slope) << " not within 2% of 1");
        pass(3, "A(6) = " + num(a_est, "%.9f") + " matches the closed form (diff " +
                    num(std::fabs(a_est - closed)) + "); +lambda coefficient " +
                    num(slope, "%.4f"));
    }

    // 4. normalization constant of the edge-touching density
    {
        const auto t0 = clock_t_::now();
        const double afk = a_fk();
        const double dt = seconds_since(t0);
        REQUIRE(std::fabs(afk - 1.19948) <= 2e-5,
                "A_FK = " << num(afk, "%.8f") << " vs 1.19948");
        REQUIRE(dt < 2.0, "A_FK took " << dt << " s (budget 2 s)");
        pass(4, "A_FK = " + num(afk, "%.8f") + " within 2e-5 of 1.19948 (" + num(dt, "%.2f") +
                    " s)");
    }

    // 5. edge expansion of the ratio near lambda=1
    {
        const FkFit fit = fk_singularity_fit();
        const double c0 = 64.0 / (21.0 * pi), c1 = 16.0 / (21.0 * pi), cL = 2.0 / (5.0 * pi);
        REQUIRE(std::fabs(fit.c0 / c0 - 1.0) <= 0.01, "c0 off by " << num(fit.c0 / c0 - 1.0));
        REQUIRE(std::fabs(fit.c1 / c1 - 1.0) <= 0.03, "c1 off by " << num(fit.c1 / c1 - 1.0));
        REQUIRE(std::fabs(fit.cL / cL - 1.0) <= 0.10, "cL off by " << num(fit.cL / cL - 1.0));
        pass(5, "edge fit: c0 err " + num(std::fabs(fit.c0 / c0 - 1.0)) + ", c1 err " +
                    num(std::fabs(fit.c1 / c1 - 1.0)) + ", cL err " +
                    num(std::fabs(fit.cL / cL - 1.0)));
    }

    // 6. identification constants of the glued bases
    {
        for (double kappa : {6.0, 16.0 / 3.0, 24.0 / 5.0}) {
            const double beta = connect(kappa).beta;
            REQUIRE(std::fabs(beta) <= 1e-8,
                    "beta(" << kappa << ") = " << num(beta) << " not ~ 0");
        }
        for (double kappa : {5.0, 7.0}) {
            const double dev = dual_match_deviation(kappa);
            REQUIRE(dev <= 1e-7, "matching-point drift " << num(dev) << " at kappa=" << kappa);
        }
        double worst_inv = 0.0;
        for (double kappa : kKappaGrid)
            worst_inv = std::max(worst_inv, connect(kappa).involution_err);
        REQUIRE(worst_inv <= 1e-8, "involution defect " << num(worst_inv));
        pass(6, "beta = 0 at the three resonant kappa; dual-match <= 1e-7; involution defect " +
                    num(worst_inv));
    }

    // 7. decay rate of the normalized two-sided partition function
    {
        const auto grid = default_tau_grid();
        std::string detail;
        for (double kappa : {5.0, 16.0 / 3.0, 6.0, 7.0}) {
            const double s = z_check(kappa, grid);
            if (std::isinf(s)) {
                // deviation identically at machine zero: faster than any power
                REQUIRE(kappa == 6.0, "unexpected exact flatness at kappa=" << kappa);
                detail += "k=6: exact; ";
                continue;
            }
            REQUIRE(s >= 1.9 && s <= 2.1,
                    "decay exponent " << num(s, "%.4f") << " at kappa=" << kappa);
            detail += "k=" + num(kappa, "%.4g") + ": " + num(s, "%.3f") + "; ";
        }
        pass(7, "tau-decay exponents in [1.9,2.1] (" + detail + ")");
    }

    // 8. collapsed-point equation holds for the series solutions
    {
        const ConnectionData cd = connect(6.0);
        const FusionConfig cfgs[3] = {{-1.0, 0.0, 1.0, 3.0},
                                      {-1.5, 0.0, 1.0, 2.5},
                                      {-2.0, -0.5, 1.0, 2.2}};
        double worst = 0.0;
        for (const FusionConfig& cfg : cfgs) {
            for (int idx : {0, 2}) {
                const double r = fusion_pde_residual(6.0, cd.sols[idx], cfg);
                REQUIRE(r <= 1e-4, "collapsed-point residual " << num(r) << " for solution "
                                                               << idx);
                worst = std::max(worst, r);
            }
        }
        pass(8, "collapsed-point residual <= 1e-4 for V0 and V2 on 3 configurations (max " +
                    num(worst) + ")");
    }

    // 9. every closed form solves its equation; reflected identity at 24/5
    {
        double worst_exact = 0.0, worst_quad = 0.0;
        for (double kappa : {2.0, 8.0 / 3.0, 4.0, 24.0 / 5.0, 16.0 / 3.0, 6.0, 8.0}) {
            const OdeSpec spec = boundary_ode(kappa);
            for (const ClosedForm& f : closed_forms(kappa)) {
                const double bound = f.quadrature_based ? 1e-4 : 1e-9;
                for (double lam : {0.1, 0.25, 0.4, 0.55, 0.7, 0.85}) {
                    const double r = ode_residual(spec, f.f(lam), lam);
                    REQUIRE(r <= bound, "closed form " << f.name << " at kappa=" << kappa
                                                       << ": residual " << num(r));
                    double& slot = f.quadrature_based ? worst_quad : worst_exact;
                    slot = std::max(slot, r);
                }
            }
        }
        const auto forms = closed_forms(24.0 / 5.0);
        const ClosedForm *v0 = nullptr, *v23 = nullptr, *v3 = nullptr;
        for (const ClosedForm& f : forms) {
            if (f.name == "V0") v0 = &f;
            if (f.name == "V_{2/3}") v23 = &f;
            if (f.name == "V3") v3 = &f;
        }
        REQUIRE(v0 && v23 && v3, "missing closed forms at kappa=24/5");
        for (double lam : {0.1, 0.33, 0.61, 0.9}) {
            const double gap =
                std::fabs(v3->f(lam).v - (v0->f(lam).v - 4.0 / 3.0 * v23->f(1.0 - lam).v));
            REQUIRE(gap <= 1e-10, "reflected identity off by " << num(gap));
        }
        pass(9, "closed-form residuals <= 1e-9 (quadrature-backed <= 1e-4; max " +
                    num(worst_exact) + " / " + num(worst_quad) +
                    "); kappa=24/5 reflected identity <= 1e-10");
    }

    // 10. bulk equation: pinned weight exponent, sensitivity, Moebius covariance
    {
        REQUIRE(bulk_alpha(6.0) == 5.0 / 48.0, "alpha(6) != 5/48 exactly");
        double worst = 0.0, worst_mob = 0.0;
        for (double kappa : kKappaGrid) {
            const double alpha = bulk_alpha(kappa);
            const OdeSpec good = bulk_ode(kappa, alpha);
            const OdeSpec detuned = bulk_ode(kappa, alpha + 1e-3);
            double detuned_max = 0.0;
            for (double lam : {0.5, 0.9, 1.3}) {
                const Jet t1 = bulk_solution_jet(kappa, 1, 0, 0, lam);
                const double r = ode_residual(good, t1, lam);
                REQUIRE(r <= 1e-8, "bulk residual " << num(r) << " at kappa=" << kappa);
                worst = std::max(worst, r);
                detuned_max = std::max(detuned_max, ode_residual(detuned, t1, lam));
            }
            REQUIRE(detuned_max > 1e-4,
                    "detuned weight exponent went unnoticed at kappa=" << kappa);
            const BulkPoint p{-1.0, 1.0, {0.3, 1.1}};
            const double dev = std::max(mobius_deviation(kappa, p, {2.0, 0.3, 0.0, 1.0}),
                                        mobius_deviation(kappa, p, {1.0, 0.5, 0.4, 2.0}));
            REQUIRE(dev <= 1e-10, "Moebius covariance defect " << num(dev));
            worst_mob = std::max(worst_mob, dev);
        }
        pass(10, "bulk residual <= 1e-8 (max " + num(worst) +
                     "), alpha-detuning detected, Moebius defect <= 1e-10 (max " +
                     num(worst_mob) + "), alpha(6) = 5/48");
    }

    // 11. lattice sampling against the analytic ratio
    {
        const auto t0 = clock_t_::now();
        const ConnectionData cd = connect(6.0);
        const int L = 512, W = 1024, w = 3;
        const long samples = 200000;
        std::string detail;
        double prev_ratio = -1.0;
        for (double target : {0.3, 0.5, 0.7}) {
            const auto [a, b] = choose_offsets(target, w, 40, 90);
            ConnectivityParams p;
            p.L = L;
            p.width = W;
            p.a = a;
            p.b = b;
            p.w = w;
            p.samples = samples;
            p.seed = 20260823;
            const ConnectivityResult res = run_connectivity(p);
            REQUIRE(res.n_13_24 == 0, "forbidden pairing occurred "
                                          << res.n_13_24 << " times at lambda=" << target);
            const double ref = universal_ratio(cd, res.lambda());
            const double rel = std::fabs(res.ratio() / ref - 1.0);
            REQUIRE(rel <= 0.10, "ratio " << num(res.ratio(), "%.5f") << " vs " << num(ref, "%.5f")
                                          << " (" << num(100 * rel, "%.1f")
                                          << "% off) at lambda=" << res.lambda());
            REQUIRE(res.ratio() > prev_ratio, "ratio not increasing in lambda");
            prev_ratio = res.ratio();
            detail += num(res.lambda(), "%.3f") + ": " + num(100 * rel, "%.1f") + "%; ";
        }

        // segment-width sweep documents the w-bias at the midpoint
        for (int ws : {2, 4}) {
            const auto [a, b] = choose_offsets(0.5, ws, 40, 90);
            ConnectivityParams p;
            p.L = L;
            p.width = W;
            p.a = a;
            p.b = b;
            p.w = ws;
            p.samples = 30000;
            p.seed = 918273;
            const ConnectivityResult res = run_connectivity(p);
            REQUIRE(res.n_13_24 == 0, "forbidden pairing in the width sweep");
            std::cout << "  [info] width sweep w=" << ws << ": ratio "
                      << num(res.ratio(), "%.4f") << " (+-" << num(res.ratio_stderr(), "%.4f")
                      << ") vs analytic " << num(universal_ratio(cd, res.lambda()), "%.4f")
                      << "\n";
        }

        const long cross_n = 20000;
        const double pc = crossing_probability(256, cross_n, 442);
        const double se = std::sqrt(pc * (1.0 - pc) / cross_n);
        REQUIRE(std::fabs(pc - 0.5) <= 3.0 * se,
                "crossing probability " << num(pc, "%.5f") << " not within 3 stderr of 1/2");

        const OneArmFit arm = one_arm_exponent({64, 128, 256, 512}, 30000, 5150);
        REQUIRE(arm.exponent >= 0.30 && arm.exponent <= 0.36,
                "one-arm exponent " << num(arm.exponent, "%.4f") << " outside [0.30, 0.36]");

        const double dt = seconds_since(t0);
        const unsigned hc = std::max(1u, std::thread::hardware_concurrency());
        const double budget = 900.0 * 4.0 / std::min(4u, hc);
        REQUIRE(dt <= budget, "lattice stage took " << num(dt, "%.0f") << " s (budget "
                                                    << num(budget, "%.0f") << " s on "
                                                    << hc << " threads)");
        pass(11, "lattice ratios within 10% (" + detail + "), no forbidden pairing, crossing " +
                     num(pc, "%.4f") + ", one-arm exponent " + num(arm.exponent, "%.3f") +
                     ", " + num(dt, "%.0f") + " s");
    }

    // 12. the two independent pipelines at kappa=16/3 agree
    {
        const ConnectionData cd = connect(16.0 / 3.0);
        double worst = 0.0;
        for (int i = 2; i <= 18; ++i) {
            const double lam = 0.05 * i;
            const double gap = std::fabs(universal_ratio(cd, lam) - r_fk(lam));
            REQUIRE(gap <= 1e-7, "pipelines differ by " << num(gap) << " at lambda=" << lam);
            worst = std::max(worst, gap);
        }
        pass(12, "series and closed-form ratios agree within 1e-7 on [0.1, 0.9] (max " +
                     num(worst) + ")");
    }

    std::cout << "acceptance: all 12 criteria passed\n";
    return 0;
}
