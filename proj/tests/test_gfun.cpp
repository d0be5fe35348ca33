#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gammaseq/gfun.hpp"
#include "test_helpers.hpp"

using namespace gammaseq;

namespace {
const EvalConfig kCfg{};
constexpr double kZeta2 = 1.6449340668482264;

EvalConfig loose(double target) {
    EvalConfig c;
    c.target_err = target;
    return c;
}
}

TEST_CASE("f special values and the xf identity") {
    CHECK(std::fabs(f_of(1.0, kCfg).value) <= 1e-15);
    CHECK(f_of(2.0, kCfg).value == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));

    auto gen = testdata::rng(99);
    for (int i = 0; i < 100; ++i) {
        const double x = testdata::log_uniform(gen, 0.01, 1e4);
        const CertifiedValue f = f_of(x, kCfg);
        const CertifiedValue lg = ln_gamma(x, kCfg);
        const double resid = x * f.value - std::log(x) - lg.value;
        INFO("x = " << x);
        CHECK(std::fabs(resid) <=
              x * f.err + lg.err + 8.0 * kEps * (std::fabs(x * f.value) + std::fabs(lg.value) +
                                                 std::fabs(std::log(x))));
    }
}

TEST_CASE("h series: special value, rails, closed-form agreement") {
    const double C = euler_constant();
    const CertifiedValue h1 = h_series(1.0, kCfg);
    CHECK(std::fabs(h1.value - (1.0 - C)) <= h1.err);

    auto gen = testdata::rng(2);
    for (int i = 0; i < 60; ++i) {
        const double x = testdata::log_uniform(gen, 0.01, 1e3);
        const CertifiedValue h = h_series(x, loose(1e-10));
        INFO("x = " << x);
        CHECK(h.value - h.err > 1.0 - std::log1p(x) / x);
        CHECK(h.value + h.err < x / (x + 1.0));
    }
}

TEST_CASE("h dual route agreement at 500 pseudo-random points") {
    const EvalConfig series_cfg = loose(1e-8);
    auto gen = testdata::rng(3);
    for (int i = 0; i < 500; ++i) {
        const double x = testdata::log_uniform(gen, 0.01, 1e4);
        const CertifiedValue a = h_series(x, series_cfg);
        const CertifiedValue b = h_kernel(x, kCfg);
        INFO("x = " << x);
        CHECK(std::fabs(a.value - b.value) <= a.err + b.err);
    }
    // named spot checks
    for (double x : {0.5, 3.0, 20.0, 200.0}) {
        const CertifiedValue a = h_series(x, series_cfg);
        const CertifiedValue b = h_kernel(x, kCfg);
        CHECK(std::fabs(a.value - b.value) <= a.err + b.err);
    }
    const double C = euler_constant();
    const CertifiedValue hk1 = h_kernel(1.0, kCfg);
    CHECK(std::fabs(hk1.value - (1.0 - C)) <= hk1.err + 1e-15);
    // h -> 1 from inside its rails
    const CertifiedValue big = h_kernel(1e6, kCfg);
    CHECK(big.value > 1.0 - std::log1p(1e6) / 1e6);
    CHECK(big.value < 1e6 / (1e6 + 1.0));
}

TEST_CASE("g series: special value, rails, kernel identity") {
    const CertifiedValue g1 = g_series(1.0, kCfg);
    CHECK(std::fabs(g1.value - (kZeta2 - 1.0)) <= g1.err);

    auto gen = testdata::rng(4);
    for (int i = 0; i < 120; ++i) {
        const double x = testdata::log_uniform(gen, 0.01, 1e3);
        const CertifiedValue g = g_series(x, loose(1e-9));
        INFO("x = " << x);
        CHECK(g.value - g.err > x / (x + 1.0));
        CHECK(g.value + g.err < 1.0 - 1.0 / ((x + 1.0) * (x + 1.0)));
        const CertifiedValue psi1 = trigamma(x, kCfg);
        const double kernel_route = x * psi1.value - 1.0 / x;
        CHECK(std::fabs(g.value - kernel_route) <=
              g.err + x * psi1.err + 8.0 * kEps * (std::fabs(kernel_route) + 1.0 / x + 1.0));
    }
}

TEST_CASE("f'' is negative with the right scale and identities") {
    auto gen = testdata::rng(5);
    for (int i = 0; i < 80; ++i) {
        const double x = testdata::log_uniform(gen, 0.01, 1e4);
        const CertifiedValue fpp = fpp_series(x, loose(1e-10));
        INFO("x = " << x);
        CHECK(fpp.value < 0.0);
        // cross-check route from g + d^2 - 1 - h^2, never blended
        const CertifiedValue other = fpp_identity(x, kCfg);
        CHECK(std::fabs(fpp.value - other.value) <= fpp.err + other.err);
    }
    const CertifiedValue at_1e4 = fpp_series(1e4, kCfg);
    CHECK(std::fabs(1e8 * at_1e4.value + 1.0) <= 0.01);
}

TEST_CASE("identity x^2(f'' + f'^2) = g + d^2 - 1 and g = x^2 f'' + 2xf'") {
    auto gen = testdata::rng(6);
    for (int i = 0; i < 120; ++i) {
        const double x = testdata::log_uniform(gen, 0.01, 1e4);
        const GPoint p = eval_point(x, loose(1e-10));
        INFO("x = " << x);

        const double lhs = x * x * (p.fpp.value + p.fp.value * p.fp.value);
        const double rhs = p.g.value + p.d.value * p.d.value - 1.0;
        const double widen =
            x * x * (p.fpp.err + 2.0 * std::fabs(p.fp.value) * p.fp.err) + p.g.err +
            2.0 * std::fabs(p.d.value) * p.d.err +
            8.0 * kEps * (std::fabs(lhs) + std::fabs(rhs) + 1.0 + x * x * std::fabs(p.fpp.value));
        CHECK(std::fabs(lhs - rhs) <= widen);

        const double g_from_fpp = x * x * p.fpp.value + 2.0 * x * p.fp.value;
        const double widen2 = x * x * p.fpp.err + 2.0 * x * p.fp.err + p.g.err +
                              8.0 * kEps * (std::fabs(g_from_fpp) + std::fabs(p.g.value) +
                                            x * x * std::fabs(p.fpp.value));
        CHECK(std::fabs(g_from_fpp - p.g.value) <= widen2);
    }
}

TEST_CASE("d rails and squared rails hold certified") {
    auto gen = testdata::rng(7);
    for (int i = 0; i < 200; ++i) {
        const double x = testdata::log_uniform(gen, 0.01, 1e4);
        const GPoint p = eval_point(x, kCfg);
        const double lo = 1.0 / (x + 1.0);
        const double hi = std::log1p(x) / x;
        INFO("x = " << x);
        CHECK(p.d.value - p.d.err > lo);
        CHECK(p.d.value + p.d.err < hi);
        const double d2 = p.d.value * p.d.value;
        const double w2 = 2.0 * std::fabs(p.d.value) * p.d.err;
        CHECK(d2 - w2 > lo * lo);
        CHECK(d2 + w2 < hi * hi);
        CHECK(p.d.value == 1.0 - p.h.value);  // exactly as computed
    }
}

TEST_CASE("sharpened log underestimate chain") {
    auto gen = testdata::rng(8);
    for (int i = 0; i < 500; ++i) {
        const double a = testdata::log_uniform(gen, 1e-4, 1e4);
        const double plain = a / (1.0 + a);
        const double better = (3.0 * a * a + 2.0 * a) / (2.0 * (1.0 + a) * (1.0 + a));
        INFO("a = " << a);
        CHECK(plain < better);
        CHECK(better < std::log1p(a));
    }
}

TEST_CASE("f' > -(x/2) f''") {
    auto gen = testdata::rng(9);
    for (int i = 0; i < 80; ++i) {
        const double x = testdata::log_uniform(gen, 0.01, 1e3);
        const GPoint p = eval_point(x, loose(1e-10));
        INFO("x = " << x);
        CHECK(p.fp.value > -0.5 * x * p.fpp.value);
    }
}

TEST_CASE("eval_point: G values and internal consistency") {
    const GPoint p1 = eval_point(1.0, kCfg);
    CHECK(std::fabs(p1.G.value - 1.0) <= p1.G.err + 1e-15);
    const GPoint p2 = eval_point(2.0, kCfg);
    CHECK(p2.G.value == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
    const GPoint big = eval_point(1e4, kCfg);
    CHECK(std::fabs(big.Gp.value - 1.0 / std::numbers::e) <= 1e-3);

    // A = e G' and a = (A-1)x, up to rounding
    for (double x : {0.5, 1.0, 7.25, 300.0}) {
        const GPoint p = eval_point(x, kCfg);
        CHECK(p.A.value == doctest::Approx(std::numbers::e * p.Gp.value).epsilon(1e-15));
        CHECK(p.a.value == doctest::Approx((p.A.value - 1.0) * x).epsilon(1e-12));
        CHECK(p.G.value > 0.0);
        CHECK(p.g.value > 0.0);
        CHECK(p.h.value > 0.0);
        CHECK(p.r.value > 0.0);
        CHECK(p.r.value < 1.0);
    }
}

TEST_CASE("r factor: special value, monotonicity, limit") {
    const CertifiedValue r1 = r_factor(1.0);
    CHECK(r1.value == doctest::Approx(2.0 * (1.0 - std::log(2.0))).epsilon(1e-15));
    double prev = 0.0;
    for (double x = 0.25; x <= 4096.0; x *= 2.0) {
        const double r = r_factor(x).value;
        CHECK(r > prev);
        prev = r;
    }
    const CertifiedValue far = r_factor(1e6);
    CHECK(far.value > 0.99);
    CHECK(far.value < 1.0);
    CHECK_THROWS_AS(r_factor(0.0), std::domain_error);
}

TEST_CASE("G' sandwich") {
    // at x = 1 the rails are (R(1)/2, 1/2) since G(1) = 1
    const Enclosure s1 = gprime_sandwich(1.0, kCfg);
    CHECK(s1.lo == doctest::Approx(r_factor(1.0).value / 2.0).epsilon(1e-12));
    CHECK(s1.hi == doctest::Approx(0.5).epsilon(1e-12));
    const GPoint p1 = eval_point(1.0, kCfg);
    CHECK(p1.Gp.value >= s1.lo - p1.Gp.err);
    CHECK(p1.Gp.value <= s1.hi + p1.Gp.err);

    auto gen = testdata::rng(10);
    for (int i = 0; i < 100; ++i) {
        const double x = testdata::log_uniform(gen, 0.01, 1e4);
        const Enclosure s = gprime_sandwich(x, kCfg);
        const GPoint p = eval_point(x, kCfg);
        INFO("x = " << x);
        CHECK(s.lo <= s.hi);
        CHECK(s.hi - p.Gp.value >= -p.Gp.err);
        CHECK(p.Gp.value - s.lo >= -p.Gp.err);
    }
}

TEST_CASE("finite differences confirm the analytic derivatives") {
    const double delta = 1e-5;
    for (double x : {1.0, 2.0, 5.0, 10.0, 50.0}) {
        const GPoint p = eval_point(x, kCfg);
        const double gp = G_of(x + delta, kCfg).value;
        const double gm = G_of(x - delta, kCfg).value;
        const double fd1 = (gp - gm) / (2.0 * delta);
        const double fd2 = (gp - 2.0 * p.G.value + gm) / (delta * delta);
        INFO("x = " << x);
        CHECK(std::fabs(fd1 - p.Gp.value) <= 1e-6);
        CHECK(std::fabs(fd2 - p.Gpp.value) <= 1e-4);
    }
}

TEST_CASE("G/(x+1) is strictly decreasing") {
    double prev = std::numeric_limits<double>::infinity();
    for (double x = 0.25; x <= 65536.0; x *= 2.0) {
        const double q = G_of(x, kCfg).value / (x + 1.0);
        CHECK(q < prev);
        prev = q;
    }
}

TEST_CASE("domain floor") {
    CHECK_THROWS_AS(f_of(0.005, kCfg), std::domain_error);
    CHECK_THROWS_AS(eval_point(0.0, kCfg), std::domain_error);
    CHECK_THROWS_AS(h_series(-1.0, kCfg), std::domain_error);
    CHECK_NOTHROW(eval_point(0.01, kCfg));
}
