#include "gammaseq/kernel.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "gammaseq/series.hpp"
#include "series_eval.hpp"
#include "series_terms.hpp"

namespace gammaseq {

namespace {

// 20 significant digits; certified on first use against the harmonic
// bracket D_m - 1 < C < C_m at m = 10^6.
constexpr double kEulerLiteral = 0.57721566490153286061;

// ln(2 pi)/2 as a double-double pair.
constexpr detail::DD kHalfLn2Pi{0.9189385332046728, -3.8782941580672414e-17};

// de Moivre / Stirling coefficients.  For real positive argument the
// remainder after any number of terms of these asymptotic series is
// bounded by, and has the sign of, the first omitted term (DLMF
// 5.11(ii); Olver, Asymptotics and Special Functions Ch. 8), which is
// what certifies the radii below.
// B_{2k} / ((2k-1)(2k)), k = 1..8  --  ln Gamma tail in odd powers 1/y^(2k-1)
constexpr double kLnGammaAsym[8] = {
    1.0 / 12,  -1.0 / 360,        1.0 / 1260, -1.0 / 1680,
    1.0 / 1188, -691.0 / 360360,  1.0 / 156,  -3617.0 / 122400,
};
constexpr double kLnGammaAsymBound = 43867.0 / 798.0 / 306.0;  // |B_18|/(17*18), / y^17

// B_{2k} / (2k), k = 1..8  --  psi tail in powers 1/y^(2k)
constexpr double kDigammaAsym[8] = {
    1.0 / 12,  -1.0 / 120,       1.0 / 252, -1.0 / 240,
    1.0 / 132, -691.0 / 32760,   1.0 / 12,  -3617.0 / 8160,
};
constexpr double kDigammaAsymBound = 43867.0 / 798.0 / 18.0;  // |B_18|/18, / y^18

void check_euler_bracket() {
    constexpr std::int64_t m = 1'000'000;
    series::detail::Acc H, lnfact;
    for (std::int64_t k = 1; k <= m; ++k) {
        const double dk = static_cast<double>(k);
        H.add(1.0 / dk);
        lnfact.add(std::log(dk));
    }
    const double dm = static_cast<double>(m);
    const double Cm = H.total() - std::log(dm);
    const double Dm = H.total() - lnfact.total() / dm;
    const double slack = 4.0 * kEps * (H.abs + lnfact.abs / dm + 30.0);
    if (!(Dm - 1.0 + slack < kEulerLiteral && kEulerLiteral < Cm - slack))
        throw std::logic_error("euler_constant: stored literal failed the harmonic bracket");
}

std::once_flag g_euler_once;

void require_positive(double x, const char* who) {
    if (!(x > 0.0)) throw std::domain_error(std::string(who) + ": requires x > 0");
}

std::int64_t shift_count(double x, double threshold) {
    if (x >= threshold) return 0;
    return static_cast<std::int64_t>(std::ceil(threshold - x));
}

}  // namespace

void validate_euler_constant() { check_euler_bracket(); }

double euler_constant() {
    std::call_once(g_euler_once, check_euler_bracket);
    return kEulerLiteral;
}

namespace detail {

DD ln_gamma_dd(double x, const EvalConfig& cfg, double& err) {
    cfg.validate();
    require_positive(x, "ln_gamma");
    const double threshold = std::max(cfg.shift_threshold, 1.0);
    const std::int64_t m = shift_count(x, threshold);
    // the shifted argument must stay exact, not rounded to double
    const DD y = two_sum(x, static_cast<double>(m));

    const double z = 1.0 / (y.hi * y.hi);
    double p = kLnGammaAsym[7];
    for (int k = 6; k >= 0; --k) p = p * z + kLnGammaAsym[k];
    p /= y.hi;

    const double ln_y = std::log(y.hi);
    DD acc = dd_mul(dd_log(y), dd_sub(y, 0.5));
    acc = dd_sub(acc, y);
    acc = dd_add(acc, kHalfLn2Pi);
    acc = dd_add(acc, p);
    double mags = std::fabs((y.hi - 0.5) * ln_y) + y.hi + 1.0 + std::fabs(p);

    // ln Gamma(x) = ln Gamma(y) - sum_{j<m} ln(x+j)
    for (std::int64_t j = 0; j < m; ++j) {
        const DD lj = dd_log(two_sum(x, static_cast<double>(j)));
        acc = dd_sub(acc, lj);
        mags += std::fabs(lj.hi);
    }

    const double remainder = kLnGammaAsymBound / std::pow(y.hi, 17.0);
    // p is evaluated in plain double; everything else carries
    // double-double op noise (~2^-100 each) over `mags`-sized operands
    err = remainder + 4.0 * kEps * std::fabs(p) + 1e-28 * mags;
    return acc;
}

}  // namespace detail

CertifiedValue ln_gamma(double x, const EvalConfig& cfg) {
    double dd_err = 0.0;
    const detail::DD v = detail::ln_gamma_dd(x, cfg, dd_err);
    const double err = dd_err + kEps * std::fabs(v.hi);  // covers |lo| + final rounding
    return {v.hi, err, err > cfg.target_err};
}

CertifiedValue digamma(double x, const EvalConfig& cfg) {
    cfg.validate();
    require_positive(x, "digamma");
    const double threshold = std::max(cfg.shift_threshold, 1.0);
    const std::int64_t m = shift_count(x, threshold);
    const double y = x + static_cast<double>(m);

    const double z = 1.0 / (y * y);
    double p = kDigammaAsym[7];
    for (int k = 6; k >= 0; --k) p = p * z + kDigammaAsym[k];
    p *= z;

    // psi(x) = psi(y) - sum_{j<m} 1/(x+j)
    series::detail::Acc shift;
    for (std::int64_t j = 0; j < m; ++j) shift.add(1.0 / (x + static_cast<double>(j)));

    const double ln_y = std::log(y);
    const double value = ln_y - 0.5 / y - p - shift.total();
    const double mags = std::fabs(ln_y) + 0.5 / y + std::fabs(p) + shift.abs;
    const double err =
        kDigammaAsymBound * std::pow(y, -18.0) + 4.0 * kEps * (mags + std::fabs(value));
    return {value, err, err > cfg.target_err};
}

Enclosure trigamma_enclosure(double x) {
    require_positive(x, "trigamma_enclosure");
    const double inv = 1.0 / x;
    const double base = inv + 0.5 * inv * inv;
    const double xs = x + 1.0 / 14.0;
    return {base + 1.0 / (6.0 * xs * xs * xs), base + 1.0 / (6.0 * x * x * x)};
}

CertifiedValue trigamma(double x, const EvalConfig& cfg) {
    cfg.validate();
    require_positive(x, "trigamma");
    // Shift until the Gordon half-width ~ 1/(56 y^4) meets the target.
    double threshold =
        std::max(cfg.shift_threshold, std::pow(1.0 / (28.0 * cfg.target_err), 0.25));
    std::int64_t m = shift_count(x, threshold);
    if (m > cfg.max_terms) m = cfg.max_terms;
    const double y = x + static_cast<double>(m);

    // psi'(x) = sum_{j<m} 1/(x+j)^2 + psi'(y)
    const series::SumResult s = series::active_backend().inv_square(x, 0, m);
    const Enclosure g = trigamma_enclosure(y);
    const double mid = 0.5 * (g.lo + g.hi);
    const double half = 0.5 * (g.hi - g.lo) + kEps * g.hi;

    const double value = s.sum + mid;
    const double err = half + 4.0 * kEps * (s.abs_sum + mid);
    return {value, err, err > cfg.target_err};
}

CertifiedValue ln_gamma_by_series(double x, const EvalConfig& cfg) {
    cfg.validate();
    require_positive(x, "ln_gamma_by_series");
    const double C = euler_constant();
    const auto heuristic =
        static_cast<std::int64_t>(x / std::sqrt(2.0 * cfg.target_err)) + 16;
    const CertifiedValue s = detail::sum_with_tail(
        x, cfg, series::active_backend().lgamma_term, 1, heuristic,
        [](double xx, double N) { return (N + xx) * std::log1p(xx / N) - xx; });
    const double ln_x = std::log(x);
    const double value = s.value - C * x - ln_x;
    const double err =
        s.err + 4.0 * kEps * (C * x + std::fabs(ln_x) + std::fabs(value));
    return {value, err, err > cfg.target_err};
}

CertifiedValue digamma_by_series(double x, const EvalConfig& cfg) {
    cfg.validate();
    require_positive(x, "digamma_by_series");
    const double C = euler_constant();
    const auto heuristic = static_cast<std::int64_t>(std::sqrt(x / cfg.target_err)) + 16;
    const CertifiedValue s = detail::sum_with_tail(
        x, cfg, series::active_backend().digamma_term, 1, heuristic,
        [](double xx, double N) { return std::log1p(xx / N); });
    const double inv = 1.0 / x;
    const double value = s.value - C - inv;
    const double err = s.err + 4.0 * kEps * (C + inv + std::fabs(value));
    return {value, err, err > cfg.target_err};
}

CertifiedValue trigamma_by_series(double x, const EvalConfig& cfg) {
    cfg.validate();
    require_positive(x, "trigamma_by_series");
    const auto heuristic =
        static_cast<std::int64_t>(1.0 / std::sqrt(cfg.target_err)) + 16;
    return detail::sum_with_tail(x, cfg, series::active_backend().inv_square, 0, heuristic,
                                 [](double xx, double N) { return 1.0 / (xx + N); });
}

CertifiedValue ln_factorial(std::int64_t n, const EvalConfig& cfg) {
    if (n < 0) throw std::domain_error("ln_factorial: requires n >= 0");
    return ln_gamma(static_cast<double>(n) + 1.0, cfg);
}

KernelRow kernel_row(double x, const EvalConfig& cfg) {
    return {x, ln_gamma(x, cfg), digamma(x, cfg), trigamma(x, cfg)};
}

}  // namespace gammaseq
