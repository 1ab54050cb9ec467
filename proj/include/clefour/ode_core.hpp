#pragma once

#include <array>
#include <vector>

#include "clefour/errors.hpp"
#include "clefour/jet.hpp"

namespace clefour {

// Kappa with the derived exponents used throughout.  Values within 1e-12 of the
// distinguished rationals are snapped so resonance detection stays exact.
struct KappaParams {
    double kappa;
    double h;  // 8/kappa - 1, the boundary exponent
    double b;  // 3/kappa - 1/2, the partition-function decay exponent
};

KappaParams make_params(double kappa);

using Poly = std::vector<double>;  // coefficients, ascending powers

double poly_eval(const Poly& p, double x);

// Third-order linear ODE  sum_k p[k](lambda) V^(k)(lambda) = 0.
struct OdeSpec {
    std::array<Poly, 4> p;
};

// Equation satisfied by the boundary four-point connectivity functions.
OdeSpec boundary_ode(double kappa);

// Equation satisfied by the one-bulk/two-boundary functions; alpha is the bulk
// exponent weight.
OdeSpec bulk_ode(double kappa, double alpha);

double bulk_alpha(double kappa);  // (3k-8)(8-k)/(32k)

// |sum_k p_k V^(k)| / max_k |p_k V^(k)|; zero when every term vanishes.
double ode_residual(const OdeSpec& spec, const Jet& jet, double lambda);

} // namespace clefour
