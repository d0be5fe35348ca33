#pragma once

#include <cmath>

// Minimal double-double arithmetic (Dekker / Bailey style).  Used
// internally so the ln Gamma -> /x -> exp pipeline delivers results
// correctly rounded to ~0.5 ulp; the public API stays double + radius.
// Only the operations the kernels need are provided.

namespace gammaseq::detail {

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) {  // requires |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(const DD& a, const DD& b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_add(const DD& a, double b) {
    DD s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(const DD& a) { return {-a.hi, -a.lo}; }
inline DD dd_sub(const DD& a, const DD& b) { return dd_add(a, dd_neg(b)); }
inline DD dd_sub(const DD& a, double b) { return dd_add(a, -b); }

inline DD dd_mul(const DD& a, const DD& b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(const DD& a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(const DD& a, double b) {
    const double q0 = a.hi / b;
    DD p = two_prod(q0, b);
    const double q1 = ((a.hi - p.hi) - p.lo + a.lo) / b;
    return quick_two_sum(q0, q1);
}

inline DD dd_div(const DD& a, const DD& b) {
    const double q0 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(b, q0));
    const double q1 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q1));
    const double q2 = r.hi / b.hi;
    DD q = quick_two_sum(q0, q1);
    return dd_add(q, q2);
}

inline DD dd_ldexp(const DD& a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

// ln 2 to double-double precision.
inline constexpr DD kDDLn2{6.931471805599452862e-01, 2.319046813846299558e-17};

// exp via 2^m * e^r with |r| <= ln2/2, r further halved 9 times and a
// short Taylor series, then squared back up.
inline DD dd_exp(const DD& a) {
    if (a.hi > 709.0) return {HUGE_VAL, 0.0};
    if (a.hi < -709.0) return {0.0, 0.0};
    const double m = std::nearbyint(a.hi / kDDLn2.hi);
    DD r = dd_sub(a, dd_mul(kDDLn2, m));
    r = dd_ldexp(r, -9);
    // e^u - 1 for |u| <= ~7e-4: Taylor through u^9/9! keeps the relative
    // error near the double-double floor.
    DD u = r;
    DD term = r;
    DD sum = r;
    for (int k = 2; k <= 9; ++k) {
        term = dd_mul(term, u);
        term = dd_div(term, static_cast<double>(k));
        sum = dd_add(sum, term);
    }
    // (1+s)^(2^9) via s <- 2s + s^2, staying in expm1 form for accuracy.
    for (int i = 0; i < 9; ++i)
        sum = dd_add(dd_ldexp(sum, 1), dd_mul(sum, sum));
    DD result = dd_add(sum, 1.0);
    return dd_ldexp(result, static_cast<int>(m));
}

// One double-precision seed plus a Newton step: ln y = x0 + (y e^{-x0} - 1).
inline DD dd_log(const DD& y) {
    const double x0 = std::log(y.hi);
    DD e = dd_exp({-x0, 0.0});
    DD c = dd_sub(dd_mul(e, y), 1.0);
    return dd_add(c, x0);
}

inline DD dd_log(double y) { return dd_log(DD{y, 0.0}); }

}  // namespace gammaseq::detail
