#pragma once

#include "clefour/frobenius.hpp"

namespace clefour {

// Collapsed-point configuration u < x1 < x2 < x3 for the third-order PDE that
// the fused correlation g0 satisfies in the four marked coordinates.
struct FusionConfig {
    double u, x1, x2, x3;
};

// Normalized finite-difference residual of the PDE applied to
//   g0 = (1-lambda)^{-2h} U(lambda) / ((x1-u)(x3-x2))^{2h},
// with U a series solution of the boundary equation.  Stencils are 5-point
// with step 1e-4 * (minimal pairwise gap); g0 itself is evaluated in extended
// precision so the third-derivative stencil stays above rounding noise.
double fusion_pde_residual(double kappa, const Series& U, const FusionConfig& cfg);

} // namespace clefour
