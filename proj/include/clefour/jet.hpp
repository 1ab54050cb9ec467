#pragma once

#include <cmath>

namespace clefour {

// Truncated Taylor jet: value and first three derivatives with respect to the
// evaluation variable.  Arithmetic follows Leibniz / Faa di Bruno so composite
// closed-form expressions carry exact derivatives without finite differences.
struct Jet {
    double v{0}, d1{0}, d2{0}, d3{0};
};

constexpr Jet jet_var(double x) { return {x, 1.0, 0.0, 0.0}; }
constexpr Jet jet_const(double c) { return {c, 0.0, 0.0, 0.0}; }

constexpr Jet operator+(const Jet& a, const Jet& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
constexpr Jet operator-(const Jet& a, const Jet& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}
constexpr Jet operator-(const Jet& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }

constexpr Jet operator*(const Jet& a, const Jet& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

constexpr Jet operator*(const Jet& a, double s) { return {a.v * s, a.d1 * s, a.d2 * s, a.d3 * s}; }
constexpr Jet operator*(double s, const Jet& a) { return a * s; }
constexpr Jet operator+(const Jet& a, double s) { return {a.v + s, a.d1, a.d2, a.d3}; }
constexpr Jet operator+(double s, const Jet& a) { return a + s; }
constexpr Jet operator-(const Jet& a, double s) { return {a.v - s, a.d1, a.d2, a.d3}; }
constexpr Jet operator-(double s, const Jet& a) { return {s - a.v, -a.d1, -a.d2, -a.d3}; }
constexpr Jet operator/(const Jet& a, double s) { return {a.v / s, a.d1 / s, a.d2 / s, a.d3 / s}; }

constexpr Jet operator/(const Jet& f, const Jet& g) {
    const double q0 = f.v / g.v;
    const double q1 = (f.d1 - q0 * g.d1) / g.v;
    const double q2 = (f.d2 - 2.0 * q1 * g.d1 - q0 * g.d2) / g.v;
    const double q3 = (f.d3 - 3.0 * q2 * g.d1 - 3.0 * q1 * g.d2 - q0 * g.d3) / g.v;
    return {q0, q1, q2, q3};
}
constexpr Jet operator/(double s, const Jet& g) { return jet_const(s) / g; }

// Compose scalar F (given as value + three derivatives at u.v) with jet u.
constexpr Jet compose(double f0, double f1, double f2, double f3, const Jet& u) {
    return {f0,
            f1 * u.d1,
            f2 * u.d1 * u.d1 + f1 * u.d2,
            f3 * u.d1 * u.d1 * u.d1 + 3.0 * f2 * u.d1 * u.d2 + f1 * u.d3};
}

inline Jet pow(const Jet& u, double p) {
    const double f0 = std::pow(u.v, p);
    const double f1 = p * f0 / u.v;
    const double f2 = (p - 1.0) * f1 / u.v;
    const double f3 = (p - 2.0) * f2 / u.v;
    return compose(f0, f1, f2, f3, u);
}

inline Jet log(const Jet& u) {
    const double i = 1.0 / u.v;
    return compose(std::log(u.v), i, -i * i, 2.0 * i * i * i, u);
}

inline Jet exp(const Jet& u) {
    const double e = std::exp(u.v);
    return compose(e, e, e, e, u);
}

} // namespace clefour
