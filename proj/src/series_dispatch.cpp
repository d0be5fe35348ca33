// Runtime backend selection.  This translation unit is built without
// target-specific flags, so it is safe to execute on any CPU; the AVX2
// table is only dereferenced after __builtin_cpu_supports says yes.

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "gammaseq/series.hpp"

namespace gammaseq::series {

namespace detail {
const Backend* avx2_backend_raw();  // defined in series_avx2.cpp
}

const Backend* avx2_backend() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    if (!supported) return nullptr;
    return detail::avx2_backend_raw();
#else
    return nullptr;
#endif
}

namespace {

const Backend* pick_default() {
    if (const char* env = std::getenv("GAMMASEQ_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_backend();
        if (std::strcmp(env, "avx2") == 0) {
            if (const Backend* b = avx2_backend()) return b;
            // requested lane unavailable; fall through to auto
        }
    }
    if (const Backend* b = avx2_backend()) return b;
    return &scalar_backend();
}

std::atomic<const Backend*> g_active{nullptr};

}  // namespace

const Backend& active_backend() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (!b) {
        b = pick_default();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

void set_active_backend(const Backend* b) {
    g_active.store(b, std::memory_order_release);
}

}  // namespace gammaseq::series
