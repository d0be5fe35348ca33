#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gammaseq/certified.hpp"
#include "gammaseq/config.hpp"

namespace gammaseq {

enum class RootTarget { root_a, root_c };

// Certified enclosure of a root: the function changes sign across
// [lo, hi], re-verified by evaluation at both ends.
struct RootBracket {
    RootTarget target = RootTarget::root_a;
    double lo = 0.0;
    double hi = 0.0;
    int iterations = 0;

    double width() const { return hi - lo; }
    double mid() const { return lo + 0.5 * (hi - lo); }
};

// Pass/fail ledger of one inequality-verification run.  A check FAILS
// when the midpoints already violate it and is INCONCLUSIVE when the
// midpoints pass but the certified widening eats the margin.
struct CheckRecord {
    double where = 0.0;  // index or abscissa
    double lhs = 0.0;
    double rhs = 0.0;
};

struct SuiteReport {
    std::string suite_id;
    std::string range_descr;
    std::int64_t n_checked = 0;
    std::int64_t n_failed = 0;
    std::int64_t n_inconclusive = 0;
    double worst_margin = 0.0;  // min over checks of rhs - lhs (unwidened)
    std::vector<CheckRecord> failures;
    std::vector<CheckRecord> inconclusives;

    void record(double where, double lhs, double rhs, double widen);
    void merge(const SuiteReport& other);
    bool clean() const { return n_failed == 0 && n_inconclusive == 0; }
};

// D(x) = (3x-1)/6 - ln^2(1+x) and its derivative; the sign analysis of
// G'' reduces to these.
double d5(double x);
double d5_prime(double x);

// Plain bracketing bisection; deterministic; throws when [lo, hi] does
// not straddle a sign change.
RootBracket bisect(const std::function<double(double)>& fn, double lo, double hi, double tol,
                   RootTarget tag);

// a: unique zero of D' (equivalently ln(1+a)/(1+a) = 1/4), inside (7, 8).
// c: zero of D beyond a, inside (17, 18); G''(x) < 0 for x > c.
RootBracket find_root_a(double tol = 1e-7);
RootBracket find_root_c(double tol = 1e-7);

// g(m) + d(m)^2 < 1 for m = 1..m_max.
SuiteReport verify_cor_euler(std::int64_t m_max);

// m psi'(m) + d(m)^2 < 1 + 1/m, widened by the certified psi' radius.
SuiteReport verify_cor_polygamma(std::int64_t m_max, const EvalConfig& cfg = {});

// Every closed-form bound of the h/g/d family plus the psi' and
// xg(x)-x enclosures and the sharpened log underestimate, on a grid.
SuiteReport verify_bounds(std::span<const double> grid, const EvalConfig& cfg = {},
                          int threads = 1);
std::vector<double> default_bounds_grid();  // {2^k/4 : 0 <= k <= 18}

// Limit diagnostics: each tracked quantity with its distance to the
// stated limit, per abscissa.
inline constexpr int kLimitQuantityCount = 8;
struct LimitQuantity {
    const char* name;
    double limit;
};
const std::array<LimitQuantity, kLimitQuantityCount>& limit_quantities();

struct LimitRow {
    double x = 0.0;
    std::array<double, kLimitQuantityCount> value{};
    std::array<double, kLimitQuantityCount> dist{};
};
std::vector<LimitRow> limit_diagnostics(std::span<const double> xs, const EvalConfig& cfg = {});
std::vector<double> default_limit_schedule();  // {10, 10^2, 10^3, 10^4}

// Shrinkage of the distances across the last three schedule points plus
// the pinned proximity tolerances at x = 10^4.
SuiteReport verify_limits(const EvalConfig& cfg = {});

// sigma strictly decreasing and > 1/e (widened), sigma_1 < 0.42,
// C_m strictly decreasing, D_m strictly increasing, G/(x+1) strictly
// decreasing on the default grid.
SuiteReport verify_monotone(std::int64_t n_max, const EvalConfig& cfg = {});

}  // namespace gammaseq
