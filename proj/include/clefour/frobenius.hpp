#pragma once

#include <array>
#include <vector>

#include "clefour/ode_core.hpp"

namespace clefour {

// Local series solution t^rho * (sum a_n t^n + |log t| * sum l_n t^n) at the
// regular singular point t = 0.  l is identically zero off resonance.
struct Series {
    double rho{0};
    std::vector<double> a;
    std::vector<double> l;

    bool has_log() const {
        for (double x : l)
            if (x != 0.0) return true;
        return false;
    }
};

// The three local exponents, ascending.  One root is always 0 for the equations
// produced here; the others solve a quadratic read off the coefficient arrays.
std::array<double, 3> indicial_roots(const OdeSpec& spec);

// Coefficient recurrence with the logarithmic ladder.  When another root
// exceeds rho by an integer m the order-m coefficient switches to the log
// branch (a_m = 0 convention).  More than one integer gap is not supported.
Series expand(const OdeSpec& spec, double rho, int nterms);

// 4-jet of the series at t in (0, trust_radius]; derivatives are with respect
// to t.
Jet eval_jet(const Series& s, double t);

// Value-only evaluation in extended precision (summing the stored
// double-precision coefficients); used where downstream finite differences
// would otherwise drown in rounding noise.
long double eval_value_ld(const Series& s, long double t);

// Chain rule for the substitution t = 1 - lambda: flips odd derivatives.
Jet reflect(const Jet& j);

constexpr double kTrustRadius = 0.6;

} // namespace clefour
