#pragma once

#include <cmath>

// Scalar term formulas shared by the scalar backend and the vector
// backends' remainder loops.  The log-bearing terms cancel for n >> x,
// so their magnitude is tracked part-by-part rather than per-term.

namespace gammaseq::series::detail {

// Neumaier-compensated accumulator with a parallel magnitude sum.
struct Acc {
    double sum = 0.0;
    double comp = 0.0;
    double abs = 0.0;

    void add(double t, double mag) {
        abs += mag;
        const double u = sum + t;
        if (std::fabs(sum) >= std::fabs(t))
            comp += (sum - u) + t;
        else
            comp += (t - u) + sum;
        sum = u;
    }
    void add(double t) { add(t, std::fabs(t)); }
    double total() const { return sum + comp; }
};

struct SplitTerm {
    double term;
    double mag;
};

inline double inv_square_term(double x, double n) {
    const double s = x + n;
    return 1.0 / (s * s);
}

inline double g_term(double x, double n) {
    const double s = x + n;
    return x / (s * s);
}

inline double digamma_term(double x, double n) {
    return x / (n * (x + n));
}

inline SplitTerm lgamma_term(double x, double n) {
    const double u = x / n;
    const double l = std::log1p(u);
    return {u - l, u + l};
}

inline SplitTerm h_term(double x, double n) {
    const double l = std::log1p(x / n) / x;
    const double r = 1.0 / (x + n);
    return {l - r, l + r};
}

inline SplitTerm fpp_term(double x, double n) {
    const double l = std::log1p(x / n) / x;
    const double s = x + n;
    const double r = (3.0 * x + 2.0 * n) / (2.0 * s * s);
    return {l - r, l + r};
}

}  // namespace gammaseq::series::detail
