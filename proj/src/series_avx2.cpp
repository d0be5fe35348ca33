// AVX2+FMA variants of the series kernels.  This translation unit is
// compiled with -mavx2 -mfma on x86-64; nothing here may run unless the
// dispatcher's runtime CPU check passed.  avx2_backend_raw() itself only
// returns the address of a constexpr table, so it is safe to call from
// the (unflagged) dispatcher on any CPU.

#include "gammaseq/series.hpp"
#include "series_terms.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)
#define GAMMASEQ_AVX2_BUILT 1
#include <immintrin.h>
#else
#define GAMMASEQ_AVX2_BUILT 0
#endif

namespace gammaseq::series {

#if GAMMASEQ_AVX2_BUILT

namespace {

// log1p for four positive doubles, following the fdlibm/musl algorithm
// with the branchy special cases folded into blends.  The general
// reduction path is self-consistent over the whole domain u > -0.2929
// (for 1+u inside [sqrt2/2, sqrt2) it reconstructs w unchanged with
// k = 0, and for u below 2^-53 the correction term returns u exactly),
// so no separate small-u path is needed.  Accuracy ~1.5 ulp.
inline __m256d v_log1p(__m256d u) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d w = _mm256_add_pd(one, u);

    const __m256i wi = _mm256_castpd_si256(w);
    // 0x3ff00000 - 0x3fe6a09e in the high word recentres the mantissa
    // range on [sqrt2/2, sqrt2).
    const __m256i hu = _mm256_add_epi64(wi, _mm256_set1_epi64x(0x00095F6200000000LL));
    const __m256i k64 =
        _mm256_sub_epi64(_mm256_srli_epi64(hu, 52), _mm256_set1_epi64x(1023));

    // k fits in 32 bits; gather the low dwords of each lane and convert.
    const __m256i pack_idx = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
    const __m128i k32 = _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(k64, pack_idx));
    const __m256d dk = _mm256_cvtepi32_pd(k32);

    const __m256i mant = _mm256_and_si256(hu, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL));
    const __m256d u2 =
        _mm256_castsi256_pd(_mm256_add_epi64(mant, _mm256_set1_epi64x(0x3FE6A09E00000000LL)));
    const __m256d f = _mm256_sub_pd(u2, one);

    // Correction for the rounding of w = 1+u; exact by Sterbenz on both
    // branches, suppressed for k >= 54 where it would underflow.
    const __m256d k_ge2 =
        _mm256_castsi256_pd(_mm256_cmpgt_epi64(k64, _mm256_set1_epi64x(1)));
    const __m256d c_hi = _mm256_sub_pd(one, _mm256_sub_pd(w, u));
    const __m256d c_lo = _mm256_sub_pd(u, _mm256_sub_pd(w, one));
    __m256d c = _mm256_div_pd(_mm256_blendv_pd(c_lo, c_hi, k_ge2), w);
    const __m256d k_lt54 =
        _mm256_castsi256_pd(_mm256_cmpgt_epi64(_mm256_set1_epi64x(54), k64));
    c = _mm256_and_pd(c, k_lt54);

    const __m256d Lg1 = _mm256_set1_pd(6.666666666666735130e-01);
    const __m256d Lg2 = _mm256_set1_pd(3.999999999940941908e-01);
    const __m256d Lg3 = _mm256_set1_pd(2.857142874366239149e-01);
    const __m256d Lg4 = _mm256_set1_pd(2.222219843214978396e-01);
    const __m256d Lg5 = _mm256_set1_pd(1.818357216161805012e-01);
    const __m256d Lg6 = _mm256_set1_pd(1.531383769920937332e-01);
    const __m256d Lg7 = _mm256_set1_pd(1.479819860511658591e-01);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

    const __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
    const __m256d z = _mm256_mul_pd(s, s);
    const __m256d w2 = _mm256_mul_pd(z, z);
    const __m256d t1 = _mm256_mul_pd(
        w2, _mm256_fmadd_pd(w2, _mm256_fmadd_pd(w2, Lg6, Lg4), Lg2));
    const __m256d t2 = _mm256_mul_pd(
        z, _mm256_fmadd_pd(w2, _mm256_fmadd_pd(w2, _mm256_fmadd_pd(w2, Lg7, Lg5), Lg3), Lg1));
    const __m256d R = _mm256_add_pd(t2, t1);
    const __m256d hfsq = _mm256_mul_pd(_mm256_set1_pd(0.5), _mm256_mul_pd(f, f));

    __m256d r = _mm256_mul_pd(s, _mm256_add_pd(hfsq, R));
    r = _mm256_add_pd(r, _mm256_fmadd_pd(dk, ln2_lo, c));
    r = _mm256_add_pd(r, f);
    r = _mm256_sub_pd(r, hfsq);
    return _mm256_fmadd_pd(dk, ln2_hi, r);
}

// Per-lane Kahan accumulators plus a plain magnitude lane.
struct VAcc {
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();
    __m256d abs = _mm256_setzero_pd();

    inline void add(__m256d term, __m256d mag) {
        abs = _mm256_add_pd(abs, mag);
        const __m256d y = _mm256_sub_pd(term, comp);
        const __m256d t = _mm256_add_pd(sum, y);
        comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
        sum = t;
    }

    // Fold the four lanes into a scalar accumulator.
    void drain(detail::Acc& acc) const {
        alignas(32) double s[4], c[4], a[4];
        _mm256_store_pd(s, sum);
        _mm256_store_pd(c, comp);
        _mm256_store_pd(a, abs);
        double mag = 0.0;
        for (int i = 0; i < 4; ++i) mag += a[i];
        for (int i = 0; i < 4; ++i) acc.add(s[i] - c[i], 0.0);
        acc.abs += mag;
    }
};

constexpr std::int64_t kLanes = 4;

template <class VectorStep, class ScalarStep>
SumResult run_kernel(std::int64_t begin, std::int64_t end, VectorStep vstep, ScalarStep sstep) {
    detail::Acc acc;
    std::int64_t n = begin;
    if (end - n >= kLanes) {
        VAcc vacc;
        __m256d vn = _mm256_setr_pd(static_cast<double>(n), static_cast<double>(n + 1),
                                    static_cast<double>(n + 2), static_cast<double>(n + 3));
        const __m256d four = _mm256_set1_pd(4.0);
        for (; n + kLanes <= end; n += kLanes) {
            vstep(vn, vacc);
            vn = _mm256_add_pd(vn, four);
        }
        vacc.drain(acc);
    }
    for (; n < end; ++n) sstep(static_cast<double>(n), acc);
    return {acc.total(), acc.abs};
}

SumResult inv_square_avx2(double x, std::int64_t begin, std::int64_t end) {
    const __m256d vx = _mm256_set1_pd(x);
    const __m256d one = _mm256_set1_pd(1.0);
    return run_kernel(
        begin, end,
        [&](__m256d vn, VAcc& acc) {
            const __m256d s = _mm256_add_pd(vx, vn);
            const __m256d t = _mm256_div_pd(one, _mm256_mul_pd(s, s));
            acc.add(t, t);
        },
        [&](double n, detail::Acc& acc) { acc.add(detail::inv_square_term(x, n)); });
}

SumResult g_term_avx2(double x, std::int64_t begin, std::int64_t end) {
    const __m256d vx = _mm256_set1_pd(x);
    return run_kernel(
        begin, end,
        [&](__m256d vn, VAcc& acc) {
            const __m256d s = _mm256_add_pd(vx, vn);
            const __m256d t = _mm256_div_pd(vx, _mm256_mul_pd(s, s));
            acc.add(t, t);
        },
        [&](double n, detail::Acc& acc) { acc.add(detail::g_term(x, n)); });
}

SumResult digamma_term_avx2(double x, std::int64_t begin, std::int64_t end) {
    const __m256d vx = _mm256_set1_pd(x);
    return run_kernel(
        begin, end,
        [&](__m256d vn, VAcc& acc) {
            const __m256d s = _mm256_add_pd(vx, vn);
            const __m256d t = _mm256_div_pd(vx, _mm256_mul_pd(vn, s));
            acc.add(t, t);
        },
        [&](double n, detail::Acc& acc) { acc.add(detail::digamma_term(x, n)); });
}

SumResult lgamma_term_avx2(double x, std::int64_t begin, std::int64_t end) {
    const __m256d vx = _mm256_set1_pd(x);
    return run_kernel(
        begin, end,
        [&](__m256d vn, VAcc& acc) {
            const __m256d u = _mm256_div_pd(vx, vn);
            const __m256d l = v_log1p(u);
            acc.add(_mm256_sub_pd(u, l), _mm256_add_pd(u, l));
        },
        [&](double n, detail::Acc& acc) {
            const auto t = detail::lgamma_term(x, n);
            acc.add(t.term, t.mag);
        });
}

SumResult h_term_avx2(double x, std::int64_t begin, std::int64_t end) {
    const __m256d vx = _mm256_set1_pd(x);
    const __m256d one = _mm256_set1_pd(1.0);
    return run_kernel(
        begin, end,
        [&](__m256d vn, VAcc& acc) {
            const __m256d u = _mm256_div_pd(vx, vn);
            const __m256d l = _mm256_div_pd(v_log1p(u), vx);
            const __m256d r = _mm256_div_pd(one, _mm256_add_pd(vx, vn));
            acc.add(_mm256_sub_pd(l, r), _mm256_add_pd(l, r));
        },
        [&](double n, detail::Acc& acc) {
            const auto t = detail::h_term(x, n);
            acc.add(t.term, t.mag);
        });
}

SumResult fpp_term_avx2(double x, std::int64_t begin, std::int64_t end) {
    const __m256d vx = _mm256_set1_pd(x);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d three_x = _mm256_set1_pd(3.0 * x);
    return run_kernel(
        begin, end,
        [&](__m256d vn, VAcc& acc) {
            const __m256d u = _mm256_div_pd(vx, vn);
            const __m256d l = _mm256_div_pd(v_log1p(u), vx);
            const __m256d s = _mm256_add_pd(vx, vn);
            const __m256d num = _mm256_fmadd_pd(two, vn, three_x);
            const __m256d den = _mm256_mul_pd(two, _mm256_mul_pd(s, s));
            const __m256d r = _mm256_div_pd(num, den);
            acc.add(_mm256_sub_pd(l, r), _mm256_add_pd(l, r));
        },
        [&](double n, detail::Acc& acc) {
            const auto t = detail::fpp_term(x, n);
            acc.add(t.term, t.mag);
        });
}

void log1p_batch_avx2(const double* in, double* out, std::size_t count) {
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4)
        _mm256_storeu_pd(out + i, v_log1p(_mm256_loadu_pd(in + i)));
    for (; i < count; ++i) out[i] = std::log1p(in[i]);
}

constexpr Backend kAvx2Backend{
    "avx2",           inv_square_avx2, g_term_avx2,   digamma_term_avx2,
    lgamma_term_avx2, h_term_avx2,     fpp_term_avx2, log1p_batch_avx2,
};

}  // namespace

namespace detail {
const Backend* avx2_backend_raw() { return &kAvx2Backend; }
}

#else  // !GAMMASEQ_AVX2_BUILT

namespace detail {
const Backend* avx2_backend_raw() { return nullptr; }
}

#endif

}  // namespace gammaseq::series
