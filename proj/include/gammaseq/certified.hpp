#pragma once

#include <cmath>
#include <limits>

namespace gammaseq {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// A numeric result together with a rigorous absolute-error radius.
// The true quantity lies in [value - err, value + err] whenever the
// producing operation's preconditions held.  `degraded` is set when the
// achieved radius missed the requested target (term budget exhausted or
// double-precision representation floor).
struct CertifiedValue {
    double value = 0.0;
    double err = 0.0;
    bool degraded = false;

    double lo() const { return value - err; }
    double hi() const { return value + err; }
    bool contains(double t) const { return lo() <= t && t <= hi(); }
};

inline CertifiedValue certified_exact(double v) { return {v, 0.0, false}; }

// First-order interval propagation.  Each op adds a one-ulp rounding
// allowance on the result so radii stay valid without full interval
// arithmetic.

inline CertifiedValue cv_add(const CertifiedValue& a, const CertifiedValue& b) {
    const double v = a.value + b.value;
    return {v, a.err + b.err + kEps * std::fabs(v), a.degraded || b.degraded};
}

inline CertifiedValue cv_sub(const CertifiedValue& a, const CertifiedValue& b) {
    const double v = a.value - b.value;
    return {v, a.err + b.err + kEps * std::fabs(v), a.degraded || b.degraded};
}

inline CertifiedValue cv_scale(const CertifiedValue& a, double k) {
    const double v = a.value * k;
    return {v, a.err * std::fabs(k) + kEps * std::fabs(v), a.degraded};
}

inline CertifiedValue cv_shift(const CertifiedValue& a, double c) {
    const double v = a.value + c;
    return {v, a.err + kEps * std::fabs(v), a.degraded};
}

inline CertifiedValue cv_div(const CertifiedValue& a, double k) {
    const double v = a.value / k;
    return {v, a.err / std::fabs(k) + kEps * std::fabs(v), a.degraded};
}

inline CertifiedValue cv_mul(const CertifiedValue& a, const CertifiedValue& b) {
    const double v = a.value * b.value;
    const double e = std::fabs(a.value) * b.err + std::fabs(b.value) * a.err + a.err * b.err;
    return {v, e + kEps * std::fabs(v), a.degraded || b.degraded};
}

// exp(v +- e) reported as exp(v) +- exp(v)(e + e^2) for e < 1/2; the exact
// one-sided worst case exp(v)(e^e - 1) is used beyond that.  Both dominate
// the true radius since e + e^2 >= e^e - 1 on [0, 1/2].
inline CertifiedValue cv_exp(const CertifiedValue& a) {
    const double g = std::exp(a.value);
    const double e = a.err;
    const double r = e < 0.5 ? g * (e + e * e) : g * std::expm1(e);
    return {g, r + 2.0 * kEps * g, a.degraded};
}

}  // namespace gammaseq
