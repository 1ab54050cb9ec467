#pragma once

#include <array>
#include <complex>

#include "clefour/jet.hpp"

namespace clefour {

// One bulk point z in the upper half-plane plus two boundary points.
struct BulkPoint {
    double x1, x2;
    std::complex<double> z;
};

// Factorized one-bulk/two-boundary connectivity density.
double bulk_green(double kappa, const BulkPoint& p);

// (x2-x1)(conj(z)-z) / ((z-x1)(conj(z)-x2)); lies on the circle |w-1| = 1.
std::complex<double> bulk_cross_ratio(const BulkPoint& p);

// |G(phi(points)) * |phi'(x1)|^h |phi'(x2)|^h |phi'(z)|^alpha / G(points) - 1|
// for the real Moebius map w -> (a w + b)/(c w + d), ad - bc > 0.
double mobius_deviation(double kappa, const BulkPoint& p, const std::array<double, 4>& abcd);

// Jet of c1*t1 + c2*t2 + c3*t3, the local solution family of the bulk equation
// around lambda = 1; valid for |1 - lambda| <= 0.6, lambda > 0.
Jet bulk_solution_jet(double kappa, double c1, double c2, double c3, double lambda);

} // namespace clefour
