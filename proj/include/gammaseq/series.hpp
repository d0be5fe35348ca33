#pragma once

#include <cstddef>
#include <cstdint>

namespace gammaseq::series {

// Partial sum of a series kernel over integer n in [begin, end).
// `sum` is compensated; `abs_sum` accumulates the magnitudes of the
// individual contributions (log part and rational part counted
// separately) and feeds the rounding allowance of certified results.
struct SumResult {
    double sum = 0.0;
    double abs_sum = 0.0;
};

using SumFn = SumResult (*)(double x, std::int64_t begin, std::int64_t end);
using Log1pBatchFn = void (*)(const double* in, double* out, std::size_t n);

// One entry per data-parallel inner loop of the library.
struct Backend {
    const char* name;
    SumFn inv_square;    // sum 1/(x+n)^2
    SumFn g_term;        // sum x/(x+n)^2
    SumFn digamma_term;  // sum x/(n(x+n))           ( = 1/n - 1/(x+n) )
    SumFn lgamma_term;   // sum x/n - ln(1+x/n)
    SumFn h_term;        // sum ln(1+x/n)/x - 1/(x+n)
    SumFn fpp_term;      // sum ln(1+x/n)/x - (3x+2n)/(2(x+n)^2)
    Log1pBatchFn log1p_batch;
};

const Backend& scalar_backend();

// nullptr when the CPU (or the build) does not support AVX2+FMA.
const Backend* avx2_backend();

// Honors GAMMASEQ_SIMD=scalar|avx2|auto; defaults to the widest
// supported backend.
const Backend& active_backend();

// Force a backend (used by the equivalence tests); nullptr restores
// auto-detection.
void set_active_backend(const Backend* b);

}  // namespace gammaseq::series
