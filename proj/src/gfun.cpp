#include "gammaseq/gfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gammaseq/series.hpp"
#include "series_eval.hpp"

namespace gammaseq {

namespace {

void check_domain(double x) {
    if (!(x >= kGfunMinX))
        throw std::domain_error("gfun: requires x >= 0.01 (1/x amplification below)");
}

// f = ln Gamma(x+1)/x kept in double-double until the caller rounds; the
// radius applies to the dd pair.
struct FDD {
    detail::DD f;
    double err;
};

FDD f_dd(double x, const EvalConfig& cfg) {
    check_domain(x);
    double lg_err = 0.0;
    const detail::DD lg = detail::ln_gamma_dd(x + 1.0, cfg, lg_err);
    return {detail::dd_div(lg, x), lg_err / x + 1e-28 * std::fabs(lg.hi / x)};
}

CertifiedValue g_from_trigamma(double x, const CertifiedValue& psi1) {
    const double inv = 1.0 / x;
    const double value = x * psi1.value - inv;
    const double err =
        x * psi1.err + kEps * (std::fabs(x * psi1.value) + inv + std::fabs(value));
    return {value, err, psi1.degraded};
}

CertifiedValue h_from_parts(double x, const CertifiedValue& psi, const CertifiedValue& f) {
    const double inv = 1.0 / x;
    const double value = inv + psi.value - f.value;
    const double err = psi.err + f.err +
                       kEps * (inv + std::fabs(psi.value) + std::fabs(f.value) +
                               2.0 * std::fabs(value));
    return {value, err, psi.degraded || f.degraded};
}

}  // namespace

CertifiedValue f_of(double x, const EvalConfig& cfg) {
    const FDD fd = f_dd(x, cfg);
    const double err = fd.err + kEps * std::fabs(fd.f.hi);
    return {fd.f.hi, err, err > cfg.target_err};
}

CertifiedValue G_of(double x, const EvalConfig& cfg) {
    const FDD fd = f_dd(x, cfg);
    const detail::DD G = detail::dd_exp(fd.f);
    const double err = std::fabs(G.hi) * fd.err + kEps * std::fabs(G.hi);
    return {G.hi, err, err > cfg.target_err};
}

CertifiedValue h_kernel(double x, const EvalConfig& cfg) {
    check_domain(x);
    return h_from_parts(x, digamma(x, cfg), f_of(x, cfg));
}

CertifiedValue h_series(double x, const EvalConfig& cfg) {
    check_domain(x);
    cfg.validate();
    const auto heuristic = static_cast<std::int64_t>(std::sqrt(x / cfg.target_err)) + 16;
    return detail::sum_with_tail(
        x, cfg, series::active_backend().h_term, 1, heuristic,
        [](double xx, double N) { return 1.0 - (N / xx) * std::log1p(xx / N); });
}

CertifiedValue g_series(double x, const EvalConfig& cfg) {
    check_domain(x);
    cfg.validate();
    const auto heuristic = static_cast<std::int64_t>(std::sqrt(x / cfg.target_err)) + 16;
    return detail::sum_with_tail(x, cfg, series::active_backend().g_term, 1, heuristic,
                                 [](double xx, double N) { return xx / (xx + N); });
}

CertifiedValue fpp_series(double x, const EvalConfig& cfg) {
    check_domain(x);
    cfg.validate();
    // the -(2/x^2) scale tightens the absolute target the inner sum needs
    EvalConfig inner = cfg;
    inner.target_err = cfg.target_err * (x * x) / 2.0;
    const auto heuristic =
        static_cast<std::int64_t>(std::cbrt(x * x / (3.0 * inner.target_err))) + 16;
    const CertifiedValue s = detail::sum_with_tail(
        x, inner, series::active_backend().fpp_term, 1, heuristic,
        [](double xx, double N) {
            return 0.5 - (N / xx) * std::log1p(xx / N) + N / (2.0 * (xx + N));
        });
    const double scale = 2.0 / (x * x);
    const double value = -scale * s.value;
    const double err = scale * s.err + kEps * std::fabs(value);
    return {value, err, err > cfg.target_err};
}

CertifiedValue fpp_identity(double x, const EvalConfig& cfg) {
    check_domain(x);
    const CertifiedValue psi1 = trigamma(x, cfg);
    const CertifiedValue g = g_from_trigamma(x, psi1);
    const CertifiedValue h = h_kernel(x, cfg);
    const CertifiedValue d{1.0 - h.value, h.err + kEps * std::fabs(1.0 - h.value),
                           h.degraded};
    // x^2 f'' = g + d^2 - 1 - h^2
    const CertifiedValue d2 = cv_mul(d, d);
    const CertifiedValue h2 = cv_mul(h, h);
    const CertifiedValue num = cv_sub(cv_shift(cv_add(g, d2), -1.0), h2);
    return cv_div(num, x * x);
}

CertifiedValue r_factor(double x) {
    if (!(x > 0.0)) throw std::domain_error("r_factor: requires x > 0");
    const double l = std::log1p(x);
    const double scale = (1.0 + x) / (x * x);
    const double value = scale * (x - l);
    const double mag = scale * (x + l);
    return {value, 4.0 * kEps * (mag + std::fabs(value)), false};
}

GPoint eval_point(double x, const EvalConfig& cfg) {
    check_domain(x);
    cfg.validate();
    GPoint p;
    p.x = x;

    const FDD fd = f_dd(x, cfg);
    p.f = {fd.f.hi, fd.err + kEps * std::fabs(fd.f.hi), false};
    p.f.degraded = p.f.err > cfg.target_err;

    const CertifiedValue psi = digamma(x, cfg);
    const CertifiedValue psi1 = trigamma(x, cfg);

    p.h = h_from_parts(x, psi, p.f);
    p.d = {1.0 - p.h.value, p.h.err + kEps * std::fabs(1.0 - p.h.value), p.h.degraded};
    p.g = g_from_trigamma(x, psi1);
    p.fp = cv_div(p.h, x);
    p.fpp = fpp_series(x, cfg);

    const detail::DD Gdd = detail::dd_exp(fd.f);
    p.G = {Gdd.hi, std::fabs(Gdd.hi) * fd.err + kEps * std::fabs(Gdd.hi), p.f.degraded};

    p.Gp = cv_mul(p.fp, p.G);
    p.Gpp = cv_mul(cv_add(p.fpp, cv_mul(p.fp, p.fp)), p.G);
    p.A = cv_scale(p.Gp, std::numbers::e);
    p.a = cv_scale(cv_shift(p.A, -1.0), x);
    p.r = r_factor(x);
    return p;
}

Enclosure gprime_sandwich(double x, const EvalConfig& cfg) {
    check_domain(x);
    const CertifiedValue G = G_of(x, cfg);
    const CertifiedValue r = r_factor(x);
    return {G.value * r.value / (x + 1.0), G.value / (x + 1.0)};
}

}  // namespace gammaseq
