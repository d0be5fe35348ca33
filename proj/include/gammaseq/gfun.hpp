#pragma once

#include "gammaseq/certified.hpp"
#include "gammaseq/config.hpp"
#include "gammaseq/kernel.hpp"

namespace gammaseq {

// Evaluation ops reject arguments below this floor: the 1/x factors
// amplify kernel error too much nearer zero, and nothing of interest
// happens there.
inline constexpr double kGfunMinX = 0.01;

// Everything the library knows about one abscissa:
//   f  = ln Gamma(x+1)/x         G   = e^f = Gamma(x+1)^(1/x)
//   h  = x f'(x)                 d   = 1 - h
//   g  = sum_{n>=1} x/(x+n)^2    r   = ((1+x)/x^2)(x - ln(1+x))
//   A  = e G'(x)                 a   = (A - 1) x
struct GPoint {
    double x = 0.0;
    CertifiedValue f, fp, fpp;
    CertifiedValue G, Gp, Gpp;
    CertifiedValue g, h, d;
    CertifiedValue A, a, r;
};

CertifiedValue f_of(double x, const EvalConfig& cfg = {});

// G(x) alone, through the double-double pipeline.
CertifiedValue G_of(double x, const EvalConfig& cfg = {});

// h(x) = x f'(x) two ways: direct series with integral-test tail
// bracket, and the recurrence form 1/x + psi(x) - f(x).
CertifiedValue h_series(double x, const EvalConfig& cfg = {});
CertifiedValue h_kernel(double x, const EvalConfig& cfg = {});

CertifiedValue g_series(double x, const EvalConfig& cfg = {});

// f''(x) = -(2/x^2) sum_{n>=1} ( ln(1+x/n)/x - (3x+2n)/(2(x+n)^2) );
// always negative.  fpp_identity is the cross-check route
// (g + d^2 - 1 - h^2)/x^2 and is never blended into results.
CertifiedValue fpp_series(double x, const EvalConfig& cfg = {});
CertifiedValue fpp_identity(double x, const EvalConfig& cfg = {});

GPoint eval_point(double x, const EvalConfig& cfg = {});

// Closed form, 0 < r_factor(x) < 1, strictly increasing, -> 1.
CertifiedValue r_factor(double x);

// (G(x) R(x)/(x+1), G(x)/(x+1)); G'(x) lies between them.
Enclosure gprime_sandwich(double x, const EvalConfig& cfg = {});

}  // namespace gammaseq
