#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "gammaseq/certified.hpp"
#include "gammaseq/config.hpp"
#include "gammaseq/series.hpp"
#include "series_terms.hpp"

namespace gammaseq::detail {

// Sums a strictly-decreasing positive term function for n >= first_n
// until the integral-test tail bracket meets cfg.target_err or the term
// budget runs out.  After summing n <= N the tail lies in
// (tail_integral(N+1), tail_integral(N)); the result is
// partial + bracket midpoint, err = half-width + rounding allowance of
// 4 eps per term contribution.  When the accumulated allowance already
// exceeds the target, extension stops once the bracket is well below
// the allowance (shrinking it further cannot reduce err).
inline CertifiedValue sum_with_tail(double x, const EvalConfig& cfg, series::SumFn fn,
                                    std::int64_t first_n, std::int64_t heuristic_last,
                                    double (*tail_integral)(double x, double N)) {
    const std::int64_t budget_last = first_n + cfg.max_terms - 1;
    std::int64_t last =
        std::clamp(std::min<std::int64_t>(heuristic_last, 1 << 16), first_n + 15, budget_last);

    series::detail::Acc partial;
    std::int64_t cursor = first_n;
    double mid = 0.0;
    double half = 0.0;
    for (;;) {
        const series::SumResult r = fn(x, cursor, last + 1);
        partial.add(r.sum);
        partial.abs += r.abs_sum - std::fabs(r.sum);
        cursor = last + 1;

        const double ihi = tail_integral(x, static_cast<double>(last));
        const double ilo = tail_integral(x, static_cast<double>(last + 1));
        mid = 0.5 * (ihi + ilo);
        // eps cushion keeps the bracket rigorous when ihi-ilo cancels
        half = std::max(0.0, 0.5 * (ihi - ilo)) + kEps * (std::fabs(ihi) + std::fabs(ilo));

        const double allowance = 4.0 * kEps * (partial.abs + std::fabs(mid));
        const double goal = std::max(cfg.target_err - allowance, 0.1 * allowance);
        if (half <= goal || last >= budget_last) break;
        last = std::min(budget_last, 2 * last + 16);
    }

    const double value = partial.total() + mid;
    const double err = half + 4.0 * kEps * (partial.abs + std::fabs(mid));
    return {value, err, err > cfg.target_err};
}

}  // namespace gammaseq::detail
