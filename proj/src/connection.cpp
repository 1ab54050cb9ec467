#include "clefour/connection.hpp"

#include <cmath>

namespace clefour {

std::array<double, 3> solve3(Mat3 A, std::array<double, 3> rhs) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        std::swap(rhs[col], rhs[piv]);
        if (A[col][col] == 0.0) throw ConvergenceError("singular basis matrix");
        for (int r = col + 1; r < 3; ++r) {
            const double f = A[r][col] / A[col][col];
            for (int c = col; c < 3; ++c) A[r][c] -= f * A[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::array<double, 3> x{};
    for (int r = 2; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < 3; ++c) s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return x;
}

namespace {

Mat3 build_connection(const std::array<Series, 3>& sols, double match, double* involution_err) {
    Mat3 B{};
    for (int j = 0; j < 3; ++j) {
        const Jet jet = eval_jet(sols[j], match);
        B[0][j] = jet.v;
        B[1][j] = jet.d1;
        B[2][j] = jet.d2;
    }
    Mat3 M{};
    for (int j = 0; j < 3; ++j) {
        const Jet jet = reflect(eval_jet(sols[j], 1.0 - match));
        const auto col = solve3(B, {jet.v, jet.d1, jet.d2});
        for (int i = 0; i < 3; ++i) M[i][j] = col[i];
    }
    if (involution_err) {
        double dev = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += M[i][k] * M[k][j];
                dev = std::max(dev, std::fabs(s - (i == j ? 1.0 : 0.0)));
            }
        *involution_err = dev;
    }
    return M;
}

} // namespace

ConnectionData connect(double kappa, int nterms, double match) {
    ConnectionData cd;
    cd.p = make_params(kappa);
    if (!(cd.p.kappa > 4.0 && cd.p.kappa < 8.0))
        throw DomainError("series pipeline covers kappa in (4,8)");
    if (!(match >= 0.4 && match <= 0.6))
        throw DomainError("matching point must lie in both trust regions");

    const OdeSpec spec = boundary_ode(cd.p.kappa);
    cd.roots = indicial_roots(spec);
    for (int i = 0; i < 3; ++i) cd.sols[i] = expand(spec, cd.roots[i], nterms);
    cd.match = match;

    cd.M = build_connection(cd.sols, match, &cd.involution_err);
    cd.beta = -cd.M[1][0] / cd.M[1][2];

    // Resonant case: fold the partner into the lowest solution so the
    // reflected normalization V_0(1-l) + beta V_{3h+1}(1-l) -> 1 holds with
    // beta = 0.
    const double gap = cd.roots[2] - cd.roots[0];
    if (std::fabs(gap - std::round(gap)) < 1e-9) {
        const int m = static_cast<int>(std::round(gap));
        const double braw = cd.beta;
        Series& v0 = cd.sols[0];
        const Series& v2 = cd.sols[2];
        for (std::size_t n = 0; n + m < v0.a.size() && n < v2.a.size(); ++n) {
            v0.a[n + m] += braw * v2.a[n];
            v0.l[n + m] += braw * v2.l[n];
        }
        cd.M = build_connection(cd.sols, match, &cd.involution_err);
        cd.beta = -cd.M[1][0] / cd.M[1][2];
    }

    cd.a_hat = (cd.M[0][0] + cd.beta * cd.M[0][2]) / cd.M[0][2];
    cd.c1_over_c2 = 1.0 / cd.M[0][2];
    cd.identity_err = std::fabs(cd.M[0][0] + cd.beta * cd.M[0][2] - 1.0);
    return cd;
}

Jet eval_solution_jet(const ConnectionData& cd, int idx, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0,1)");
    if (lambda <= 0.5) return eval_jet(cd.sols[idx], lambda);
    const double t = 1.0 - lambda;
    Jet total{};
    for (int i = 0; i < 3; ++i) {
        const Jet j = reflect(eval_jet(cd.sols[i], t));
        total = total + cd.M[i][idx] * j;
    }
    return total;
}

double eval_solution(const ConnectionData& cd, int idx, double lambda) {
    return eval_solution_jet(cd, idx, lambda).v;
}

double universal_ratio(const ConnectionData& cd, double lambda) {
    const double v0 = eval_solution(cd, 0, lambda);
    const double v31 = eval_solution(cd, 2, lambda);
    return cd.a_hat * v31 / (v0 + cd.beta * v31);
}

double dual_match_deviation(double kappa, int nterms, double match_a, double match_b) {
    const ConnectionData ca = connect(kappa, nterms, match_a);
    const ConnectionData cb = connect(kappa, nterms, match_b);
    return std::max(std::fabs(ca.beta - cb.beta), std::fabs(ca.a_hat - cb.a_hat));
}

} // namespace clefour
