#include <cmath>

#include "gammaseq/series.hpp"
#include "series_terms.hpp"

namespace gammaseq::series {
namespace {

using detail::Acc;

SumResult inv_square_scalar(double x, std::int64_t begin, std::int64_t end) {
    Acc acc;
    for (std::int64_t n = begin; n < end; ++n)
        acc.add(detail::inv_square_term(x, static_cast<double>(n)));
    return {acc.total(), acc.abs};
}

SumResult g_term_scalar(double x, std::int64_t begin, std::int64_t end) {
    Acc acc;
    for (std::int64_t n = begin; n < end; ++n)
        acc.add(detail::g_term(x, static_cast<double>(n)));
    return {acc.total(), acc.abs};
}

SumResult digamma_term_scalar(double x, std::int64_t begin, std::int64_t end) {
    Acc acc;
    for (std::int64_t n = begin; n < end; ++n)
        acc.add(detail::digamma_term(x, static_cast<double>(n)));
    return {acc.total(), acc.abs};
}

SumResult lgamma_term_scalar(double x, std::int64_t begin, std::int64_t end) {
    Acc acc;
    for (std::int64_t n = begin; n < end; ++n) {
        const auto t = detail::lgamma_term(x, static_cast<double>(n));
        acc.add(t.term, t.mag);
    }
    return {acc.total(), acc.abs};
}

SumResult h_term_scalar(double x, std::int64_t begin, std::int64_t end) {
    Acc acc;
    for (std::int64_t n = begin; n < end; ++n) {
        const auto t = detail::h_term(x, static_cast<double>(n));
        acc.add(t.term, t.mag);
    }
    return {acc.total(), acc.abs};
}

SumResult fpp_term_scalar(double x, std::int64_t begin, std::int64_t end) {
    Acc acc;
    for (std::int64_t n = begin; n < end; ++n) {
        const auto t = detail::fpp_term(x, static_cast<double>(n));
        acc.add(t.term, t.mag);
    }
    return {acc.total(), acc.abs};
}

void log1p_batch_scalar(const double* in, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::log1p(in[i]);
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend backend{
        "scalar",         inv_square_scalar, g_term_scalar,     digamma_term_scalar,
        lgamma_term_scalar, h_term_scalar,    fpp_term_scalar,   log1p_batch_scalar,
    };
    return backend;
}

}  // namespace gammaseq::series
