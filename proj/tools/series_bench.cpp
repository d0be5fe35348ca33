// Throughput comparison of the scalar and AVX2 series kernels.

#include <chrono>
#include <cstdio>

#include "gammaseq/series.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ns_per_term(gammaseq::series::SumFn fn, double x, std::int64_t n) {
    volatile double sink = 0.0;
    fn(x, 1, 1 + n / 8);  // warm up
    const auto t0 = Clock::now();
    const auto r = fn(x, 1, 1 + n);
    sink = r.sum;
    (void)sink;
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(n);
}

}  // namespace

int main() {
    using namespace gammaseq::series;
    constexpr std::int64_t kTerms = 4'000'000;
    constexpr double kX = 3.5;

    struct Row {
        const char* name;
        SumFn Backend::* fn;
    };
    const Row rows[] = {
        {"inv_square", &Backend::inv_square},   {"g_term", &Backend::g_term},
        {"digamma_term", &Backend::digamma_term}, {"lgamma_term", &Backend::lgamma_term},
        {"h_term", &Backend::h_term},           {"fpp_term", &Backend::fpp_term},
    };

    const Backend& scalar = scalar_backend();
    const Backend* avx2 = avx2_backend();
    std::printf("%-14s %12s %12s %8s\n", "kernel", "scalar ns/t", "avx2 ns/t", "speedup");
    for (const Row& row : rows) {
        const double s = ns_per_term(scalar.*(row.fn), kX, kTerms);
        if (avx2) {
            const double v = ns_per_term(avx2->*(row.fn), kX, kTerms);
            std::printf("%-14s %12.2f %12.2f %7.2fx\n", row.name, s, v, s / v);
        } else {
            std::printf("%-14s %12.2f %12s %8s\n", row.name, s, "n/a", "-");
        }
    }
    return 0;
}
