#include "gammaseq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "gammaseq/detail/dd.hpp"
#include "gammaseq/gfun.hpp"
#include "gammaseq/kernel.hpp"
#include "gammaseq/sequences.hpp"

namespace gammaseq {

namespace {
constexpr double kInvE = 0.36787944117144233;  // 1/e
}

void SuiteReport::record(double where, double lhs, double rhs, double widen) {
    const double margin = rhs - lhs;
    ++n_checked;
    worst_margin = std::min(worst_margin, margin);
    if (!(margin > 0.0)) {
        ++n_failed;
        failures.push_back({where, lhs, rhs});
    } else if (!(margin - widen > 0.0)) {
        ++n_inconclusive;
        inconclusives.push_back({where, lhs, rhs});
    }
}

void SuiteReport::merge(const SuiteReport& other) {
    n_checked += other.n_checked;
    n_failed += other.n_failed;
    n_inconclusive += other.n_inconclusive;
    worst_margin = std::min(worst_margin, other.worst_margin);
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    inconclusives.insert(inconclusives.end(), other.inconclusives.begin(),
                         other.inconclusives.end());
}

namespace {

SuiteReport make_report(std::string id, std::string range) {
    SuiteReport r;
    r.suite_id = std::move(id);
    r.range_descr = std::move(range);
    r.worst_margin = std::numeric_limits<double>::infinity();
    return r;
}

// Record with a margin computed elsewhere at higher precision than
// rhs - lhs would give in double.
void record_margin(SuiteReport& r, double where, double lhs, double rhs, double margin,
                   double widen) {
    ++r.n_checked;
    r.worst_margin = std::min(r.worst_margin, margin);
    if (!(margin > 0.0)) {
        ++r.n_failed;
        r.failures.push_back({where, lhs, rhs});
    } else if (!(margin - widen > 0.0)) {
        ++r.n_inconclusive;
        r.inconclusives.push_back({where, lhs, rhs});
    }
}

}  // namespace

double d5(double x) {
    if (!(x > 0.0)) throw std::domain_error("d5: requires x > 0");
    const double l = std::log1p(x);
    return (3.0 * x - 1.0) / 6.0 - l * l;
}

double d5_prime(double x) {
    if (!(x > 0.0)) throw std::domain_error("d5_prime: requires x > 0");
    return 0.5 - 2.0 * std::log1p(x) / (1.0 + x);
}

RootBracket bisect(const std::function<double(double)>& fn, double lo, double hi, double tol,
                   RootTarget tag) {
    if (!(tol > 0.0)) throw std::invalid_argument("bisect: tol must be > 0");
    if (!(lo < hi)) throw std::invalid_argument("bisect: requires lo < hi");
    const double lo0 = lo;
    const double hi0 = hi;
    double flo = fn(lo);
    double fhi = fn(hi);
    if (!(flo * fhi < 0.0))
        throw std::invalid_argument("bisect: no sign change across [lo, hi]");
    int iters = 0;
    // keep halving until both starting endpoints have moved, so the
    // bracket ends strictly interior to the initial interval
    while ((hi - lo > tol || lo == lo0 || hi == hi0) && iters < 200) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(lo < mid && mid < hi)) break;  // resolution floor
        const double fmid = fn(mid);
        if (flo * fmid > 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
        ++iters;
    }
    if (flo * fhi > 0.0) throw std::logic_error("bisect: sign change lost");
    return {tag, lo, hi, iters};
}

RootBracket find_root_a(double tol) {
    // ln 9/9 < 1/4 < ln 8/8 puts the zero of D' inside (7, 8)
    return bisect([](double x) { return d5_prime(x); }, 7.0, 8.0, tol, RootTarget::root_a);
}

RootBracket find_root_c(double tol) {
    const RootBracket a = find_root_a(tol);
    // D is strictly increasing right of a and D(18) > 0
    return bisect([](double x) { return d5(x); }, a.hi, 18.0, tol, RootTarget::root_c);
}

namespace {

// z(x) = x^2 psi'(x) - x, evaluated cancellation-free as
//   x^2 sum_{n>=0} 1/((x+n)^2 (x+n+1))
// in double-double with a midpoint-rule tail.  The Gordon margins decay
// like 1/(30 x^3), below double rounding noise of x^2 psi'(x) - x
// itself near the top of the default grid, so both the sum and the
// bound comparisons must run at extended precision.
struct ZResult {
    detail::DD z;
    double err;  // radius for z (dd pair)
};

ZResult x2_psi1_minus_x(double x, const EvalConfig& cfg) {
    using detail::DD;
    const double margin_scale = 1.0 / (30.0 * x * x * x);
    const double tol = std::max(std::min(margin_scale / 8.0, cfg.target_err), 1e-17);
    // midpoint remainder <= x^2 (|t'| + 12/V^5)/24 ~ x^2/(8 V^4)
    const double v_target = std::pow(x * x / (8.0 * tol), 0.25);
    const std::int64_t N = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::ceil(v_target - x)), 64, cfg.max_terms);

    DD sum{0.0, 0.0};
    for (std::int64_t n = 0; n <= N; ++n) {
        const DD v = detail::two_sum(x, static_cast<double>(n));
        const DD den = detail::dd_mul(detail::dd_mul(v, v), detail::dd_add(v, 1.0));
        sum = detail::dd_add(sum, detail::dd_div(DD{1.0, 0.0}, den));
    }

    // tail sum_{n>N} t(n) in [I - Rb, I], I = int_{V}^inf dt/(t^2(t+1))
    //   = 1/V - ln(1+1/V) at V = x + N + 1/2, by the midpoint rule for
    // the convex decreasing t.
    const double V = x + (static_cast<double>(N) + 0.5);
    const double r1 = 1.0 / V;
    // 1/V - log1p(1/V) = sum_{k>=2} (-1)^k r^k / k, summed to the fp floor
    double imid = 0.0;
    double trunc = 0.0;
    {
        double rk = r1;  // r^1
        for (int k = 2; k <= 64; ++k) {
            rk *= r1;
            const double term = rk / k;
            imid += (k % 2 == 0) ? term : -term;
            trunc = term * r1;  // alternating: remainder below next term
            if (term <= imid * 1e-20) break;
        }
    }
    const double tp = 2.0 / (V * V * V * (V + 1.0)) + 1.0 / (V * V * (V + 1.0) * (V + 1.0));
    const double rb = (tp + 12.0 / std::pow(V, 5.0)) / 24.0;

    const DD x2 = detail::two_prod(x, x);
    DD z = detail::dd_mul(x2, detail::dd_add(sum, imid - 0.5 * rb));
    const double x2d = x * x;
    const double err = x2d * (0.5 * rb + trunc + 4.0 * kEps * imid) + 1e-26 * std::fabs(z.hi);
    return {z, err};
}

// Both Gordon-flavoured bounds at full precision:
//   lower  1/2 + x^2/(6 (x+1/14)^3)   upper  1/2 + 1/(6x)
struct ZBounds {
    detail::DD lower;
    detail::DD upper;
};

ZBounds z_bounds(double x) {
    using detail::DD;
    const DD c14 = detail::dd_div(DD{1.0, 0.0}, 14.0);
    const DD xs = detail::dd_add(c14, x);
    const DD xs3 = detail::dd_mul(detail::dd_mul(xs, xs), xs);
    const DD lower_term = detail::dd_div(detail::two_prod(x, x), detail::dd_mul(xs3, 6.0));
    const DD upper_term = detail::dd_div(DD{1.0, 0.0}, detail::dd_mul(DD{x, 0.0}, 6.0));
    return {detail::dd_add(lower_term, 0.5), detail::dd_add(upper_term, 0.5)};
}

SuiteReport bounds_at(double x, const EvalConfig& cfg) {
    SuiteReport r = make_report("bounds", "");
    const double l1p = std::log1p(x);

    const CertifiedValue h = h_kernel(x, cfg);
    const CertifiedValue psi1 = trigamma(x, cfg);
    const double inv = 1.0 / x;
    const CertifiedValue g{x * psi1.value - inv,
                           x * psi1.err + kEps * (x * psi1.value + inv), psi1.degraded};
    const CertifiedValue d{1.0 - h.value, h.err + kEps, h.degraded};
    const CertifiedValue G = G_of(x, cfg);
    const CertifiedValue Gp = cv_mul(cv_div(h, x), G);
    const CertifiedValue rf = r_factor(x);

    // g between its integral-test rails
    const double g_lo = x / (x + 1.0);
    const double g_hi = 1.0 - 1.0 / ((x + 1.0) * (x + 1.0));
    r.record(x, g_lo, g.value, g.err + 4.0 * kEps * g_lo);
    r.record(x, g.value, g_hi, g.err + 4.0 * kEps * g_hi);

    // h and d rails
    const double h_lo = 1.0 - l1p / x;
    const double h_hi = x / (x + 1.0);
    r.record(x, h_lo, h.value, h.err + 4.0 * kEps * (1.0 + l1p / x));
    r.record(x, h.value, h_hi, h.err + 4.0 * kEps * h_hi);
    const double d_lo = 1.0 / (x + 1.0);
    const double d_hi = l1p / x;
    r.record(x, d_lo, d.value, d.err + 4.0 * kEps * d_lo);
    r.record(x, d.value, d_hi, d.err + 4.0 * kEps * d_hi);
    const double d2 = d.value * d.value;
    const double d2_widen = 2.0 * std::fabs(d.value) * d.err + d.err * d.err;
    r.record(x, d_lo * d_lo, d2, d2_widen + 4.0 * kEps * d_lo * d_lo);
    r.record(x, d2, d_hi * d_hi, d2_widen + 4.0 * kEps * d_hi * d_hi);

    // G'(x) sandwich
    const double sandwich_hi = G.value / (x + 1.0);
    const double sandwich_lo = G.value * rf.value / (x + 1.0);
    const double sandwich_widen =
        (G.err + G.value * rf.err + kEps * G.value) / (x + 1.0) + Gp.err;
    r.record(x, sandwich_lo, Gp.value, sandwich_widen);
    r.record(x, Gp.value, sandwich_hi, sandwich_widen);

    // x^2 psi'(x) - x and xg(x) - x enclosures, resolved in dd
    const ZResult z = x2_psi1_minus_x(x, cfg);
    const ZBounds zb = z_bounds(x);
    const double m_lower = detail::dd_sub(z.z, zb.lower).hi;
    const double m_upper = detail::dd_sub(zb.upper, z.z).hi;
    record_margin(r, x, zb.lower.hi, z.z.hi, m_lower, z.err);
    record_margin(r, x, z.z.hi, zb.upper.hi, m_upper, z.err);
    record_margin(r, x, zb.lower.hi - 1.0, z.z.hi - 1.0, m_lower, z.err);
    record_margin(r, x, z.z.hi - 1.0, zb.upper.hi - 1.0, m_upper, z.err);

    // sharpened log underestimate at a = x:
    //   a/(1+a) < (3a^2+2a)/(2(1+a)^2) < ln(1+a)
    const double plain = x / (1.0 + x);
    const double better = (3.0 * x * x + 2.0 * x) / (2.0 * (1.0 + x) * (1.0 + x));
    r.record(x, plain, better, 4.0 * kEps * (plain + better));
    r.record(x, better, l1p, 4.0 * kEps * (better + l1p));
    return r;
}

}  // namespace

std::vector<double> default_bounds_grid() {
    std::vector<double> grid;
    grid.reserve(19);
    for (int k = 0; k <= 18; ++k) grid.push_back(0.25 * std::ldexp(1.0, k));
    return grid;
}

SuiteReport verify_bounds(std::span<const double> grid, const EvalConfig& cfg, int threads) {
    if (grid.empty()) throw std::domain_error("verify_bounds: empty grid");
    for (double x : grid)
        if (!(x > 0.0)) throw std::domain_error("verify_bounds: grid entries must be > 0");

    char range[96];
    std::snprintf(range, sizeof(range), "%zu grid points in [%.17g, %.17g]", grid.size(),
                  grid.front(), grid.back());
    SuiteReport total = make_report("bounds", range);

    const int n_threads = std::clamp<int>(threads, 1, 64);
    if (n_threads == 1 || grid.size() < 2) {
        for (double x : grid) total.merge(bounds_at(x, cfg));
        return total;
    }
    std::vector<SuiteReport> parts(grid.size());
    std::vector<std::thread> pool;
    std::size_t chunk = (grid.size() + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        const std::size_t b = t * chunk;
        const std::size_t e = std::min(grid.size(), b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, b, e] {
            for (std::size_t i = b; i < e; ++i) parts[i] = bounds_at(grid[i], cfg);
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& p : parts) total.merge(p);
    return total;
}

SuiteReport verify_cor_euler(std::int64_t m_max) {
    if (m_max < 1) throw std::domain_error("verify_cor_euler: requires m_max >= 1");
    char range[64];
    std::snprintf(range, sizeof(range), "m = 1..%lld", static_cast<long long>(m_max));
    SuiteReport r = make_report("euler", range);
    harmonic_scan(m_max, [&](const HarmonicRow& row) {
        const double g = g_closed_from(row);
        const double d = d_closed_from(row);
        const double widen = static_cast<double>(row.m) * 8.0 * kEps +
                             (4.0 * std::fabs(d) + 1.0) * row.round_err;
        r.record(static_cast<double>(row.m), g + d * d, 1.0, widen);
    });
    return r;
}

SuiteReport verify_cor_polygamma(std::int64_t m_max, const EvalConfig& cfg) {
    if (m_max < 1) throw std::domain_error("verify_cor_polygamma: requires m_max >= 1");
    char range[64];
    std::snprintf(range, sizeof(range), "m = 1..%lld", static_cast<long long>(m_max));
    SuiteReport r = make_report("polygamma", range);
    harmonic_scan(m_max, [&](const HarmonicRow& row) {
        const double m = static_cast<double>(row.m);
        const CertifiedValue psi1 = trigamma(m, cfg);
        const double d = d_closed_from(row);
        const double lhs = m * psi1.value + d * d;
        const double rhs = 1.0 + 1.0 / m;
        const double widen = m * psi1.err + (4.0 * std::fabs(d) + 1.0) * row.round_err +
                             4.0 * kEps * (lhs + rhs);
        r.record(m, lhs, rhs, widen);
    });
    return r;
}

const std::array<LimitQuantity, kLimitQuantityCount>& limit_quantities() {
    static const std::array<LimitQuantity, kLimitQuantityCount> table{{
        {"x2_fpp", -1.0},
        {"h", 1.0},
        {"x2_fpp_plus_fp2", 0.0},
        {"Gp", kInvE},
        {"x_Gpp", 0.0},
        {"x2_Gpp", -0.5 * kInvE},
        {"a", 0.5},
        {"a_prime", 0.0},
    }};
    return table;
}

std::vector<double> default_limit_schedule() { return {1e1, 1e2, 1e3, 1e4}; }

namespace {

double a_value(double x, const EvalConfig& cfg) {
    const CertifiedValue h = h_kernel(x, cfg);
    const CertifiedValue G = G_of(x, cfg);
    const double Gp = h.value / x * G.value;
    return (std::numbers::e * Gp - 1.0) * x;
}

}  // namespace

std::vector<LimitRow> limit_diagnostics(std::span<const double> xs, const EvalConfig& cfg) {
    std::vector<LimitRow> rows;
    rows.reserve(xs.size());
    double prev_x = 0.0;
    for (double x : xs) {
        if (!(x > prev_x))
            throw std::domain_error("limit_diagnostics: xs must be strictly increasing");
        prev_x = x;

        LimitRow row;
        row.x = x;
        const CertifiedValue fpp = fpp_series(x, cfg);
        const CertifiedValue h = h_kernel(x, cfg);
        const CertifiedValue psi1 = trigamma(x, cfg);
        const CertifiedValue G = G_of(x, cfg);
        const double d = 1.0 - h.value;
        const double g = x * psi1.value - 1.0 / x;
        // the G'' quantities go through x^2 G'' = (g + d^2 - 1) G, the
        // identity the limits are derived from; the f'' series route
        // cannot resolve them at large x
        const double gd1 = g + d * d - 1.0;
        const double Gp = h.value / x * G.value;

        row.value[0] = x * x * fpp.value;
        row.value[1] = h.value;
        row.value[2] = gd1;
        row.value[3] = Gp;
        row.value[4] = gd1 * G.value / x;
        row.value[5] = gd1 * G.value;
        row.value[6] = (std::numbers::e * Gp - 1.0) * x;
        const double delta = 1e-3 * x;
        row.value[7] = (a_value(x + delta, cfg) - a_value(x - delta, cfg)) / (2.0 * delta);

        const auto& quantities = limit_quantities();
        for (int q = 0; q < kLimitQuantityCount; ++q)
            row.dist[q] = std::fabs(row.value[q] - quantities[q].limit);
        rows.push_back(row);
    }
    return rows;
}

SuiteReport verify_limits(const EvalConfig& cfg) {
    const std::vector<double> xs = default_limit_schedule();
    const std::vector<LimitRow> rows = limit_diagnostics(xs, cfg);
    SuiteReport r = make_report("limits", "x in {10, 100, 1000, 10000}");
    const std::size_t n = rows.size();
    for (int q = 0; q < kLimitQuantityCount; ++q) {
        // distances must shrink across the last three abscissas
        r.record(static_cast<double>(q), rows[n - 2].dist[q], rows[n - 3].dist[q], 0.0);
        r.record(static_cast<double>(q), rows[n - 1].dist[q], rows[n - 2].dist[q], 0.0);
    }
    // pinned proximity at x = 10^4
    const LimitRow& last = rows.back();
    r.record(last.x, last.dist[0], 0.01, 0.0);   // x^2 f'' near -1
    r.record(last.x, last.dist[3], 1e-3, 0.0);   // G' near 1/e
    r.record(last.x, last.dist[5], 0.01, 0.0);   // x^2 G'' near -1/(2e)
    r.record(last.x, last.dist[6], 0.05, 0.0);   // a near 1/2
    return r;
}

SuiteReport verify_monotone(std::int64_t n_max, const EvalConfig& cfg) {
    if (n_max < 2) throw std::domain_error("verify_monotone: requires n_max >= 2");
    char range[64];
    std::snprintf(range, sizeof(range), "n = 1..%lld", static_cast<long long>(n_max));
    SuiteReport r = make_report("monotone", range);

    const std::vector<SigmaTerm> table = sigma_table(n_max, cfg);
    r.record(1.0, table.front().sigma.value, 0.42, table.front().sigma.err);
    for (std::size_t i = 0; i + 1 < table.size(); ++i)
        r.record(static_cast<double>(table[i].n), table[i + 1].sigma.value,
                 table[i].sigma.value, table[i].sigma.err + table[i + 1].sigma.err);
    for (const SigmaTerm& t : table)
        r.record(static_cast<double>(t.n), kInvE, t.sigma.value, t.sigma.err);

    // C_m strictly decreasing, D_m strictly increasing
    HarmonicRow prev;
    harmonic_scan(n_max, [&](const HarmonicRow& row) {
        if (row.m > 1) {
            const double widen = prev.round_err + row.round_err;
            r.record(static_cast<double>(row.m), row.C, prev.C, widen);
            r.record(static_cast<double>(row.m), prev.D, row.D, widen);
        }
        prev = row;
    });

    // G/(x+1) strictly decreasing along the default grid
    const std::vector<double> grid = default_bounds_grid();
    double q_prev = 0.0, w_prev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const CertifiedValue G = G_of(grid[i], cfg);
        const double q = G.value / (grid[i] + 1.0);
        const double w = (G.err + kEps * G.value) / (grid[i] + 1.0);
        if (i > 0) r.record(grid[i], q, q_prev, w + w_prev);
        q_prev = q;
        w_prev = w;
    }
    return r;
}

}  // namespace gammaseq
