#pragma once

#include <array>

#include "clefour/frobenius.hpp"

namespace clefour {

using Mat3 = std::array<std::array<double, 3>, 3>;

std::array<double, 3> solve3(Mat3 A, std::array<double, 3> rhs);

// Series bases at both endpoints glued at an interior matching point.
// M expresses each reflected solution in the lambda=0 basis; columns follow the
// ascending-exponent order of the roots.  For resonant kappa the lowest
// solution is re-normalized by its resonant partner so that the symmetric
// combination has no partner admixture (beta = 0).
struct ConnectionData {
    KappaParams p;
    std::array<double, 3> roots;   // {0, h, 3h+1}
    std::array<Series, 3> sols;
    Mat3 M;
    double beta;                   // -M[1][0] / M[1][2]
    double a_hat;                  // (M[0][0] + beta M[0][2]) / M[0][2]
    double c1_over_c2;             // 1 / M[0][2]
    double match;
    double involution_err;         // max |(M^2 - I)_{ij}|
    double identity_err;           // |M[0][0] + beta M[0][2] - 1|, predicted to vanish
};

ConnectionData connect(double kappa, int nterms = 200, double match = 0.5);

// Value / full jet of basis solution idx anywhere on (0,1); evaluation switches
// to the reflected representation past the midpoint.
double eval_solution(const ConnectionData& cd, int idx, double lambda);
Jet eval_solution_jet(const ConnectionData& cd, int idx, double lambda);

// Conditional-probability ratio  a_hat V_{3h+1} / (V_0 + beta V_{3h+1}).
double universal_ratio(const ConnectionData& cd, double lambda);

// Max deviation of (beta, a_hat) between two matching points; a consistency
// probe of the gluing itself.
double dual_match_deviation(double kappa, int nterms = 200, double match_a = 0.5,
                            double match_b = 0.45);

} // namespace clefour
