#include "gammaseq/sequences.hpp"

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "gammaseq/kernel.hpp"
#include "series_terms.hpp"

namespace gammaseq {

namespace {

using series::detail::Acc;

constexpr double kZeta2 = 1.6449340668482264;  // pi^2/6

void require_m(std::int64_t m, const char* who) {
    if (m < 1) throw std::domain_error(std::string(who) + ": requires m >= 1");
}

}  // namespace

void harmonic_scan(std::int64_t m_max,
                   const std::function<void(const HarmonicRow&)>& visit) {
    require_m(m_max, "harmonic_scan");
    Acc H, H2, lnfact;
    for (std::int64_t m = 1; m <= m_max; ++m) {
        const double dm = static_cast<double>(m);
        H.add(1.0 / dm);
        H2.add(1.0 / (dm * dm));
        const double lm = std::log(dm);
        lnfact.add(lm);
        HarmonicRow row;
        row.m = m;
        row.H = H.total();
        row.H2 = H2.total();
        row.C = row.H - lm;
        row.D = row.H - lnfact.total() / dm;
        row.round_err = 4.0 * kEps * (H.abs + H2.abs + std::fabs(lm) + lnfact.abs / dm + 2.0);
        visit(row);
    }
}

std::vector<HarmonicRow> harmonic_rows(std::int64_t m_max) {
    std::vector<HarmonicRow> rows;
    rows.reserve(static_cast<std::size_t>(m_max));
    harmonic_scan(m_max, [&](const HarmonicRow& r) { rows.push_back(r); });
    return rows;
}

namespace {

HarmonicRow row_at(std::int64_t m) {
    HarmonicRow out;
    harmonic_scan(m, [&](const HarmonicRow& r) {
        if (r.m == m) out = r;
    });
    return out;
}

}  // namespace

double g_closed_from(const HarmonicRow& row) {
    return static_cast<double>(row.m) * (kZeta2 - row.H2);
}
double h_closed_from(const HarmonicRow& row) { return row.D - euler_constant(); }
double d_closed_from(const HarmonicRow& row) { return euler_constant() + 1.0 - row.D; }

double g_closed(std::int64_t m) {
    require_m(m, "g_closed");
    return g_closed_from(row_at(m));
}
double h_closed(std::int64_t m) {
    require_m(m, "h_closed");
    return h_closed_from(row_at(m));
}
double d_closed(std::int64_t m) {
    require_m(m, "d_closed");
    return d_closed_from(row_at(m));
}

double h_closed_by_cn(std::int64_t m) {
    require_m(m, "h_closed_by_cn");
    Acc H, sumC;
    for (std::int64_t l = 1; l < m; ++l) {
        const double dl = static_cast<double>(l);
        H.add(1.0 / dl);
        sumC.add(H.total() - std::log(dl));
    }
    const double dm = static_cast<double>(m);
    return 1.0 - euler_constant() + (sumC.total() - std::log(dm)) / dm;
}

bool lemma_sums_check(std::span<const double> seq, std::int64_t m, std::int64_t N,
                      double rel_tol) {
    if (m < 1 || N < m)
        throw std::domain_error("lemma_sums_check: requires N >= m >= 1");
    if (static_cast<std::int64_t>(seq.size()) < N + m)
        throw std::domain_error("lemma_sums_check: sequence too short (needs N + m entries)");
    Acc left, right;
    for (std::int64_t n = 1; n <= N; ++n)
        left.add(seq[static_cast<std::size_t>(m + n - 1)] - seq[static_cast<std::size_t>(n - 1)]);
    for (std::int64_t l = 1; l <= m; ++l)
        right.add(seq[static_cast<std::size_t>(N + l - 1)] - seq[static_cast<std::size_t>(l - 1)]);
    const double L = left.total();
    const double R = right.total();
    return std::fabs(L - R) <= rel_tol * std::max({1.0, std::fabs(L), std::fabs(R)});
}

bool lemma_simplify_check(std::int64_t m, double tol) {
    if (m < 0) throw std::domain_error("lemma_simplify_check: requires m >= 0");
    Acc H, sumC, lnfact;
    for (std::int64_t l = 1; l <= m; ++l) {
        const double dl = static_cast<double>(l);
        H.add(1.0 / dl);
        const double ll = std::log(dl);
        sumC.add(H.total() - ll);
        lnfact.add(ll);
    }
    const double dm1 = static_cast<double>(m + 1);
    H.add(1.0 / dm1);
    const double Cm1 = H.total() - std::log(dm1);
    const double rhs = dm1 * (Cm1 + std::log(dm1) - 1.0) - lnfact.total();
    const double lhs = sumC.total();
    return std::fabs(lhs - rhs) <= tol * std::max(1.0, std::fabs(lhs));
}

SigmaTerm sigma(std::int64_t n, const EvalConfig& cfg) {
    if (n < 1) throw std::domain_error("sigma: requires n >= 1");
    const CertifiedValue upper = cv_exp(cv_div(ln_factorial(n + 1, cfg), static_cast<double>(n + 1)));
    const CertifiedValue lower = cv_exp(cv_div(ln_factorial(n, cfg), static_cast<double>(n)));
    SigmaTerm t;
    t.n = n;
    t.sigma = cv_sub(upper, lower);
    t.S = cv_scale(t.sigma, std::numbers::e);
    return t;
}

std::vector<SigmaTerm> sigma_table(std::int64_t n_max, const EvalConfig& cfg) {
    if (n_max < 1) throw std::domain_error("sigma_table: requires n_max >= 1");
    std::vector<SigmaTerm> out;
    out.reserve(static_cast<std::size_t>(n_max));
    CertifiedValue Gn = cv_exp(cv_div(ln_factorial(1, cfg), 1.0));
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const CertifiedValue Gn1 =
            cv_exp(cv_div(ln_factorial(n + 1, cfg), static_cast<double>(n + 1)));
        SigmaTerm t;
        t.n = n;
        t.sigma = cv_sub(Gn1, Gn);
        t.S = cv_scale(t.sigma, std::numbers::e);
        out.push_back(t);
        Gn = Gn1;
    }
    return out;
}

namespace {

// Certified-float scan from n = start; lnfact carries ln((start-1)!).
NaResult scan_from(double a, std::int64_t start, Acc lnfact, double prev_total) {
    const double la = std::log(a);
    const std::int64_t cap = static_cast<std::int64_t>(3.0 * a * la) + 4;
    for (std::int64_t n = start;; ++n) {
        if (n > cap) throw std::logic_error("n_a: scan cap exceeded");
        prev_total = lnfact.total();
        lnfact.add(std::log(static_cast<double>(n)));
        const double lhs = static_cast<double>(n) * la;
        // inclusive within certified error: boundary points resolve to
        // the smaller n (the half-open interval is right-inclusive)
        const double band =
            4.0 * kEps * (lnfact.abs + std::fabs(lhs)) + kEps * std::fabs(lhs);
        if (lhs <= lnfact.total() + band) {
            NaResult r;
            r.a_in = a;
            r.n_a = n;
            r.interval_lo = std::exp(prev_total / static_cast<double>(n - 1));
            r.interval_hi = std::exp(lnfact.total() / static_cast<double>(n));
            return r;
        }
    }
}

bool plain_decimal(const std::string& s) {
    bool dot = false, digit = false;
    for (char c : s) {
        if (c == '.') {
            if (dot) return false;
            dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digit = true;
        } else {
            return false;
        }
    }
    return digit;
}

}  // namespace

NaResult n_a(double a, const EvalConfig& cfg) {
    cfg.validate();
    if (!(a > 1.0)) throw std::domain_error("n_a: requires a > 1");
    return scan_from(a, 2, Acc{}, 0.0);
}

NaResult n_a_decimal(const std::string& s, bool exact_precheck, const EvalConfig& cfg) {
    cfg.validate();
    char* end = nullptr;
    const double a = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::domain_error("n_a: cannot parse '" + s + "' as a decimal");
    if (!(a > 1.0)) throw std::domain_error("n_a: requires a > 1");
    if (!exact_precheck || !plain_decimal(s)) return n_a(a, cfg);

    // a = p / 10^k exactly; compare p^n <= n! 10^(kn) in integers.
    std::string digits;
    std::int64_t frac = 0;
    bool seen_dot = false;
    for (char c : s) {
        if (c == '.') {
            seen_dot = true;
            continue;
        }
        digits.push_back(c);
        if (seen_dot) ++frac;
    }
    mpz_class p(digits, 10), q;
    mpz_ui_pow_ui(q.get_mpz_t(), 10, static_cast<unsigned long>(frac));
    mpz_class pow_p = p, pow_q = q, fact = 1;

    constexpr std::int64_t kExactCap = 25;
    Acc lnfact;
    double prev_total = 0.0;
    for (std::int64_t n = 2; n <= kExactCap; ++n) {
        pow_p *= p;
        pow_q *= q;
        fact *= n;
        prev_total = lnfact.total();
        lnfact.add(std::log(static_cast<double>(n)));
        if (pow_p <= fact * pow_q) {
            NaResult r;
            r.a_in = a;
            r.n_a = n;
            r.interval_lo = std::exp(prev_total / static_cast<double>(n - 1));
            r.interval_hi = std::exp(lnfact.total() / static_cast<double>(n));
            return r;
        }
    }
    // n <= 25 all failed exactly; hand the warmed scan the rest
    return scan_from(a, kExactCap + 1, lnfact, prev_total);
}

}  // namespace gammaseq
