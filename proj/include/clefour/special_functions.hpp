#pragma once

#include <cmath>
#include <functional>

#include "clefour/errors.hpp"
#include "clefour/jet.hpp"

namespace clefour {

inline double mag(double x) { return std::fabs(x); }
inline long double mag(long double x) { return std::fabs(x); }
inline double mag(const Jet& j) {
    return std::fabs(j.v) + std::fabs(j.d1) + std::fabs(j.d2) + std::fabs(j.d3);
}

// Direct hypergeometric series sum(n) (a)_n (b)_n / ((c)_n n!) x^n.
// T may be double, long double, or Jet; callers keep |x| away from 1.
template <class T>
T hyp2f1_series(double a, double b, double c, const T& x, int max_terms = 20000) {
    T sum = x - x;  // zero of the right shape
    sum = sum + 1.0;
    T term = sum;
    for (int n = 0; n < max_terms; ++n) {
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1.0))) * x;
        sum = sum + term;
        if (mag(term) <= 1e-17 * (1.0 + mag(sum)) && n > 2) return sum;
    }
    throw ConvergenceError("hyp2f1 series did not converge");
}

template <class T>
T hyp3f2_series(double a1, double a2, double a3, double b1, double b2, const T& x,
                int max_terms = 40000) {
    T sum = x - x;
    sum = sum + 1.0;
    T term = sum;
    for (int n = 0; n < max_terms; ++n) {
        term = term * ((a1 + n) * (a2 + n) * (a3 + n) / ((b1 + n) * (b2 + n) * (n + 1.0))) * x;
        sum = sum + term;
        if (mag(term) <= 1e-17 * (1.0 + mag(sum)) && n > 2) return sum;
    }
    throw ConvergenceError("hyp3f2 series did not converge");
}

// Gauss value 2F1(a,b;c;1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)), c-a-b > 0.
double gauss_2f1_at_1(double a, double b, double c);

// 2F1 on x in (-1,1): direct series for x <= 0.65, linear x -> 1-x connection
// otherwise (requires non-integer c-a-b).
double hyp2f1(double a, double b, double c, double x);

struct QuadResult {
    double value{0};
    double abs_error{0};
    long evaluations{0};
};

// Adaptive bisection with an embedded 7/15-point Gauss-Legendre pair.  Nodes are
// interior, so integrable endpoint behavior is tolerated as long as callers
// substitute away non-integrable growth.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-12, double abs_tol = 1e-14, int max_depth = 80);

} // namespace clefour
