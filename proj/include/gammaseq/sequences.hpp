#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gammaseq/certified.hpp"
#include "gammaseq/config.hpp"

namespace gammaseq {

// One row of the harmonic table:
//   H  = sum 1/k,   H2 = sum 1/k^2   (k <= m, compensated)
//   C  = H - ln m                    (strictly decreasing, -> Euler C)
//   D  = H - ln(m!)/m                (strictly increasing, -> C + 1)
struct HarmonicRow {
    std::int64_t m = 0;
    double H = 0.0;
    double H2 = 0.0;
    double C = 0.0;
    double D = 0.0;
    double round_err = 0.0;  // rounding radius shared by the row's entries
};

std::vector<HarmonicRow> harmonic_rows(std::int64_t m_max);
void harmonic_scan(std::int64_t m_max, const std::function<void(const HarmonicRow&)>& visit);

// Closed forms at integer points (standalone O(m) versions plus row-based
// versions for use inside a scan).
double g_closed(std::int64_t m);  // m (pi^2/6 - H2(m))
double h_closed(std::int64_t m);  // D_m - C
double d_closed(std::int64_t m);  // C + 1 - D_m
double g_closed_from(const HarmonicRow& row);
double h_closed_from(const HarmonicRow& row);
double d_closed_from(const HarmonicRow& row);

// Second closed route for h(m): 1 - C + (C_1 + ... + C_{m-1} - ln m)/m,
// with the empty sum convention at m = 1.  Must agree with h_closed.
double h_closed_by_cn(std::int64_t m);

// sum_{n=1..N} (a_{m+n} - a_n) == sum_{l=1..m} (a_{N+l} - a_l) for any
// real sequence; checked to rel_tol with an absolute floor of 1.
bool lemma_sums_check(std::span<const double> seq, std::int64_t m, std::int64_t N,
                      double rel_tol = 1e-10);

// sum_{l=1..m} C_l == (m+1)(C_{m+1} + ln(m+1) - 1) - ln(m!), m >= 0.
bool lemma_simplify_check(std::int64_t m, double tol = 1e-10);

// sigma_n = (n+1)!^(1/(n+1)) - n!^(1/n), S_n = e sigma_n, both carried
// with certified radii (the monotonicity theorems are verified after
// widening by them).
struct SigmaTerm {
    std::int64_t n = 0;
    CertifiedValue sigma;
    CertifiedValue S;
};
SigmaTerm sigma(std::int64_t n, const EvalConfig& cfg = {});
std::vector<SigmaTerm> sigma_table(std::int64_t n_max, const EvalConfig& cfg = {});

// Smallest n with a^n <= n!, a > 1 (so always n >= 2), plus the
// bracketing interval ( (n-1)!^(1/(n-1)), n!^(1/n) ].
struct NaResult {
    double a_in = 0.0;
    std::int64_t n_a = 0;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
};
NaResult n_a(double a, const EvalConfig& cfg = {});

// Decimal-string front end.  With exact_precheck, a plain decimal input
// is compared against factorials in exact integer arithmetic for
// n <= 25 before the certified-float scan takes over.
NaResult n_a_decimal(const std::string& a, bool exact_precheck = false,
                     const EvalConfig& cfg = {});

}  // namespace gammaseq
