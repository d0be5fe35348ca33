#pragma once

#include <cstdint>

#include "gammaseq/certified.hpp"
#include "gammaseq/config.hpp"
#include "gammaseq/detail/dd.hpp"

namespace gammaseq {

// Euler-Mascheroni constant.  The first call certifies the stored
// literal against the two-sided harmonic bracket D_m - 1 < C < C_m at
// m = 10^6 and throws std::logic_error if that ever failed.
double euler_constant();
void validate_euler_constant();

// Certified ln Gamma(x), psi(x) = (ln Gamma)', psi'(x) for x > 0.
// Production routes shift the argument up by the recurrences and use an
// asymptotic enclosure at the shifted point (see kernel.cpp); the
// *_by_series routes sum the Weierstrass series with an integral-test
// tail bracket and exist as independent cross-checks.
CertifiedValue ln_gamma(double x, const EvalConfig& cfg = {});
CertifiedValue digamma(double x, const EvalConfig& cfg = {});
CertifiedValue trigamma(double x, const EvalConfig& cfg = {});

CertifiedValue ln_gamma_by_series(double x, const EvalConfig& cfg = {});
CertifiedValue digamma_by_series(double x, const EvalConfig& cfg = {});
CertifiedValue trigamma_by_series(double x, const EvalConfig& cfg = {});

// Gordon's closed-form bracket: lo < psi'(x) < hi for all x > 0.
struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;
};
Enclosure trigamma_enclosure(double x);

// ln(n!) = ln Gamma(n+1), n >= 0; evaluated in the log domain so no
// factorial is ever materialized.
CertifiedValue ln_factorial(std::int64_t n, const EvalConfig& cfg = {});

struct KernelRow {
    double x = 0.0;
    CertifiedValue ln_gamma;
    CertifiedValue psi;
    CertifiedValue psi1;  // always > 0: a sum of positive terms
};
KernelRow kernel_row(double x, const EvalConfig& cfg = {});

namespace detail {
// Double-double ln Gamma used by the G(x) pipeline; err receives the
// certified radius of .hi (analytic remainder + rounding).
DD ln_gamma_dd(double x, const EvalConfig& cfg, double& err);
}

}  // namespace gammaseq
