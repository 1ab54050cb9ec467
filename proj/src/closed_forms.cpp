#include "clefour/closed_forms.hpp"

#include <cmath>
#include <limits>

#include "clefour/connection.hpp"
#include "clefour/special_functions.hpp"

namespace clefour {

namespace {

Jet reflect_at(const std::function<Jet(double)>& f, double lambda) {
    const Jet j = f(1.0 - lambda);
    return {j.v, -j.d1, j.d2, -j.d3};
}

// kappa = 8/3 logarithmic bracket shared by the pair-crossing form and the
// non-intersection probability.
Jet bracket_83(const Jet& lam) {
    const Jet d = lam - 1.0;
    return 5.0 * lam * lam - 5.0 * lam - 5.0 / (d * d) - 5.0 / d - 24.0 * log(1.0 - lam) +
           7.0 * (-lam - 1.0) / (lam * lam - lam + 1.0) + 7.0;
}

Jet u0_83(const Jet& lam) {
    const Jet om = 1.0 - lam;
    return lam * lam * om * om * (1.0 + lam * lam + om * om);
}

Jet fs_6(double l) {
    const Jet lam = jet_var(l);
    const Jet arg = 4.0 * lam * (1.0 - lam);
    if (arg.v >= 0.995) throw DomainError("pair-hull form needs |lambda - 1/2| > 0.035");
    const Jet pre = lam * lam * (1.0 - lam) * (1.0 - lam);
    return pre * hyp3f2_series(4.0 / 3.0, 1.5, 7.0 / 3.0, 8.0 / 3.0, 3.0, arg);
}

const ConnectionData& fk_connection() {
    static const ConnectionData cd = connect(16.0 / 3.0);
    return cd;
}

double g_fk_series(double x) {
    // valid while the direct hypergeometric series still converge (x < ~0.6)
    const double f1 = hyp2f1_series(1.5, 3.5, 3.0, x);
    const double f2 = hyp2f1_series(2.5, 4.5, 4.0, x);
    const double bracket = (4.0 * x - 2.0) * f1 - 3.0 * x * (1.0 - x) * f2;
    const double q = 1.0 - x + x * x;
    return -std::pow(x * (1.0 - x), 1.5) * bracket / (2.0 * q * q);
}

// g at x = 1 - t written in the reflected variable so t never suffers the
// 1 - (1 - t) round trip; needed because g ~ C/sqrt(t) amplifies that loss.
double g_fk_reflected(double t) {
    const auto& cd = fk_connection();
    double s52v = 0, s52d = 0, s0v = 0, s0d = 0;
    for (int i = 0; i < 3; ++i) {
        const Jet j = eval_jet(cd.sols[i], t);
        s52v += cd.M[i][2] * j.v;
        s52d += cd.M[i][2] * j.d1;
        s0v += cd.M[i][0] * j.v;
        s0d += cd.M[i][0] * j.d1;
    }
    // d/dx = -d/dt
    return -0.4 * (s52d * s0v - s52v * s0d) / (s0v * s0v);
}

double g_fk_pipeline(double x) {
    // (2/5) d/dx of V_{5/2}/V_0 through the connection representation
    return g_fk_reflected(1.0 - x);
}

// int over [lo, 1] of g via x = 1 - v^2 (removes the inverse-sqrt edge).
double fk_tail(double lo) {
    const double vmax = std::sqrt(1.0 - lo);
    return integrate([](double v) { return 2.0 * v * g_fk_reflected(v * v); }, 0.0, vmax, 1e-13)
        .value;
}

void solve_dense(std::vector<std::vector<double>>& A, std::vector<double>& b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            const double f = A[r][col] / A[col][col];
            for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        for (int c = r + 1; c < n; ++c) b[r] -= A[r][c] * b[c];
        b[r] /= A[r][r];
    }
}

} // namespace

std::vector<ClosedForm> closed_forms(double kappa) {
    const double k = make_params(kappa).kappa;
    std::vector<ClosedForm> out;
    auto add = [&out](std::string name, bool conj, bool quad, std::function<Jet(double)> f) {
        out.push_back({std::move(name), conj, quad, std::move(f)});
    };

    if (k == 6.0) {
        add("V2", false, false, fs_6);
    } else if (k == 16.0 / 3.0) {
        add("V0", false, false, [](double l) {
            const Jet lam = jet_var(l);
            return 1.0 - lam + lam * lam;
        });
        add("V_{5/2}", false, true, [](double l) {
            // (5/2) V0 * int_0^lambda g; inner derivatives of the integral come
            // from g itself, outer ones from finite differences of g.
            const double hstep = 1e-3;
            const double g0 = g_fk(l);
            const double g1 = (-g_fk(l + 2 * hstep) + 8 * g_fk(l + hstep) - 8 * g_fk(l - hstep) +
                               g_fk(l - 2 * hstep)) /
                              (12 * hstep);
            const double g2 = (-g_fk(l + 2 * hstep) + 16 * g_fk(l + hstep) - 30 * g0 +
                               16 * g_fk(l - hstep) - g_fk(l - 2 * hstep)) /
                              (12 * hstep * hstep);
            const Jet I{fk_integral(l), g0, g1, g2};
            const Jet lam = jet_var(l);
            return 2.5 * (1.0 - lam + lam * lam) * I;
        });
    } else if (k == 24.0 / 5.0) {
        add("V0", false, false, [](double l) {
            const Jet lam = jet_var(l);
            return 1.0 - (4.0 / 3.0) * lam + (4.0 / 3.0) * lam * lam;
        });
        add("V_{2/3}", false, false, [](double l) {
            const Jet lam = jet_var(l);
            return pow(lam, 2.0 / 3.0) * (1.0 - lam + 0.75 * lam * lam);
        });
        add("V3", false, false, [](double l) {
            const Jet lam = jet_var(l);
            const Jet om = 1.0 - lam;
            const Jet v0 = 1.0 - (4.0 / 3.0) * lam + (4.0 / 3.0) * lam * lam;
            const Jet v23m = pow(om, 2.0 / 3.0) * (1.0 - om + 0.75 * om * om);
            return v0 - (4.0 / 3.0) * v23m;
        });
    } else if (k == 8.0) {
        add("one", false, false, [](double) { return jet_const(1.0); });
        add("log_right", false, false,
            [](double l) { return -log(1.0 - jet_var(l)); });  // |ln(1-lambda)|
        add("log_left", false, false, [](double l) { return -log(jet_var(l)); });
    } else if (k == 4.0) {
        add("one", true, false, [](double) { return jet_const(1.0); });
        add("cubic", true, false, [](double l) {
            const Jet lam = jet_var(l);
            return lam - 1.5 * lam * lam + lam * lam * lam;
        });
        add("quartic", true, false, [](double l) {
            const Jet lam = jet_var(l);
            return lam * lam * lam * lam;
        });
    } else if (k == 8.0 / 3.0) {
        add("U0", true, false, [](double l) { return u0_83(jet_var(l)); });
        add("U1", true, false, [](double l) {
            const Jet lam = jet_var(l);
            return bracket_83(lam) * u0_83(lam);
        });
        add("U2", true, false, [](double l) {
            return reflect_at(
                [](double x) {
                    const Jet lam = jet_var(x);
                    return bracket_83(lam) * u0_83(lam);
                },
                l);
        });
    } else if (k == 2.0) {
        add("U0", true, false, [](double l) {
            const Jet lam = jet_var(l);
            return 6.0 * lam * lam - 6.0 * lam + 1.0;
        });
        add("U1", true, false, [](double l) {
            const Jet lam = jet_var(l);
            return pow(lam, 10.0) * (lam * lam - 6.0 * lam + 6.0);
        });
        add("U2", true, false, [](double l) {
            return reflect_at(
                [](double x) {
                    const Jet lam = jet_var(x);
                    return pow(lam, 10.0) * (lam * lam - 6.0 * lam + 6.0);
                },
                l);
        });
    } else {
        throw UnsupportedError("no closed forms recorded at this kappa");
    }
    return out;
}

double g_fk(double x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("g is defined on (0,1)");
    return x <= 0.5 ? g_fk_series(x) : g_fk_pipeline(x);
}

double fk_integral(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("integral limit outside [0,1]");
    if (lambda == 0.0) return 0.0;
    if (lambda <= 0.5)
        return integrate([](double x) { return g_fk(x); }, 0.0, lambda, 1e-13).value;
    static const double first_half =
        integrate([](double x) { return g_fk(x); }, 0.0, 0.5, 1e-13).value;
    return first_half + fk_tail(0.5) - (lambda < 1.0 ? fk_tail(lambda) : 0.0);
}

double a_fk() {
    static const double value = 1.0 / fk_integral(1.0);
    return value;
}

double r_fk(double lambda) { return a_fk() * fk_integral(lambda); }

FkFit fk_singularity_fit() {
    // y(eps) = tail(1-eps)/sqrt(eps) = c0 + c1 eps + eps^2 (cL |log eps| + cc);
    // 4-parameter least squares over 5 log-spaced eps (the model needs all four
    // parameters identified, so more points than the three checked downstream).
    const double eps_grid[5] = {1e-2, std::pow(10.0, -2.5), 1e-3, std::pow(10.0, -3.5), 1e-4};
    std::vector<std::vector<double>> ata(4, std::vector<double>(4, 0.0));
    std::vector<double> atb(4, 0.0);
    for (double eps : eps_grid) {
        const double y = fk_tail(1.0 - eps) / std::sqrt(eps);
        const double row[4] = {1.0, eps, eps * eps * std::fabs(std::log(eps)), eps * eps};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) ata[i][j] += row[i] * row[j];
            atb[i] += row[i] * y;
        }
    }
    solve_dense(ata, atb);
    return {atb[0], atb[1], atb[2], atb[3]};
}

double brownian_p(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0,1)");
    const double l = lambda;
    const double B = 5 * l * l - 5 * l - 5 / ((l - 1) * (l - 1)) - 5 / (l - 1) -
                     24 * std::log(1 - l) + 7 * (-l - 1) / (l * l - l + 1) + 7;
    return -((1 - l) * (1 - l) / (5 * l * l)) * (l * l - l + 1) * B;
}

double f_partition(double kappa, double x) {
    const KappaParams p = make_params(kappa);
    if (!(p.kappa > 4.0 && p.kappa < 8.0)) throw DomainError("partition block needs kappa in (4,8)");
    if (!(x > 0.0 && x < 1.0)) throw DomainError("argument outside (0,1)");
    const double a = 4.0 / p.kappa, b = 1.0 - 4.0 / p.kappa, c = 8.0 / p.kappa;
    return std::pow(x, 2.0 / p.kappa) * std::pow(1.0 - x, 1.0 - 6.0 / p.kappa) *
           hyp2f1(a, b, c, x) / gauss_2f1_at_1(a, b, c);
}

std::vector<double> default_tau_grid() {
    std::vector<double> g;
    for (int i = 0; i < 9; ++i) g.push_back(std::pow(10.0, -3.0 + 0.25 * i));
    return g;
}

double z_check(double kappa, const std::vector<double>& tau_grid) {
    const KappaParams p = make_params(kappa);
    const double factor = 1.0 / (-2.0 * std::cos(4.0 * M_PI / p.kappa));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double tau : tau_grid) {
        const double z = f_partition(p.kappa, 1.0 - tau) + factor * f_partition(p.kappa, tau);
        const double dev = std::fabs(std::pow(tau, 2.0 * p.b) * z - 1.0);
        if (dev < 1e-13) continue;  // below double-precision resolution
        const double lx = std::log(tau), ly = std::log(dev);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::infinity();  // identically-zero deviation
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace clefour
