#pragma once

#include <functional>
#include <string>
#include <vector>

#include "clefour/jet.hpp"
#include "clefour/ode_core.hpp"

namespace clefour {

// One explicit solution of the third-order equation at a special kappa.
struct ClosedForm {
    std::string name;
    bool conjectural{false};      // stated outside the proven kappa range
    bool quadrature_based{false}; // jet rests on numerically differentiated quadrature
    std::function<Jet(double)> f;
};

// Supported: kappa in {2, 8/3, 4, 24/5, 16/3, 6, 8}.
std::vector<ClosedForm> closed_forms(double kappa);

// Density of the boundary-touching measure at kappa = 16/3.  Direct series for
// x <= 1/2, series-pipeline representation beyond; ~1/sqrt(1-x) growth at 1.
double g_fk(double x);

double fk_integral(double lambda);  // int_0^lambda g
double a_fk();                      // 1 / int_0^1 g
double r_fk(double lambda);         // a_fk * int_0^lambda g, the kappa=16/3 ratio

// Least-squares recovery of the edge expansion
//   1 - r_fk(1-eps) = a_fk * sqrt(eps) * (c0 + c1 eps + eps^2 (cL |log eps| + cc))
// over a log-spaced eps grid.
struct FkFit {
    double c0, c1, cL, cc;
};
FkFit fk_singularity_fit();

// kappa=8/3 conditional non-intersection probability (conjectural range).
double brownian_p(double lambda);

// Normalized interval two-point block and its two-sided combination.
double f_partition(double kappa, double x);

// Log-log decay slope of |tau^{2b} Z(tau) - 1|.  Points below the double
// precision noise floor are excluded; if fewer than two remain the deviation
// vanishes identically and +infinity is returned.
double z_check(double kappa, const std::vector<double>& tau_grid);
std::vector<double> default_tau_grid();  // 9 log-spaced points in [1e-3, 1e-1]

} // namespace clefour
