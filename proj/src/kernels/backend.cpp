#include "igb/kernels/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "igb/errors.hpp"

namespace igb::kernels {

namespace detail {
extern const KernelTable scalar_table;
#ifdef IGB_HAVE_AVX2
extern const KernelTable avx2_table;
#endif
#ifdef IGB_HAVE_AVX512
extern const KernelTable avx512_table;
#endif
} // namespace detail

namespace {

bool cpu_supports(Backend b) {
#if defined(__x86_64__) || defined(__i386__)
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2:
            return __builtin_cpu_supports("avx2") &&
                   __builtin_cpu_supports("fma");
        case Backend::avx512:
            return __builtin_cpu_supports("avx512f") &&
                   __builtin_cpu_supports("avx512dq");
    }
    return false;
#else
    return b == Backend::scalar;
#endif
}

bool compiled_in(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2:
#ifdef IGB_HAVE_AVX2
            return true;
#else
            return false;
#endif
        case Backend::avx512:
#ifdef IGB_HAVE_AVX512
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend detect() {
    const char* env = std::getenv("IGB_SIMD");
    if (env && std::strlen(env) > 0 && std::strcmp(env, "auto") != 0) {
        std::string s(env);
        Backend want;
        if (s == "scalar")
            want = Backend::scalar;
        else if (s == "avx2")
            want = Backend::avx2;
        else if (s == "avx512")
            want = Backend::avx512;
        else
            throw ConfigError("IGB_SIMD must be auto|scalar|avx2|avx512, got '" +
                              s + "'");
        if (!backend_available(want))
            throw ConfigError(std::string("IGB_SIMD requests unavailable backend '") +
                              backend_name(want) + "'");
        return want;
    }
    if (backend_available(Backend::avx512)) return Backend::avx512;
    if (backend_available(Backend::avx2)) return Backend::avx2;
    return Backend::scalar;
}

std::atomic<int> g_backend{-1};

} // namespace

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::avx512: return "avx512";
    }
    return "?";
}

bool backend_available(Backend b) { return compiled_in(b) && cpu_supports(b); }

Backend active_backend() {
    int cur = g_backend.load(std::memory_order_acquire);
    if (cur < 0) {
        Backend d = detect();
        g_backend.store(static_cast<int>(d), std::memory_order_release);
        return d;
    }
    return static_cast<Backend>(cur);
}

void set_backend(Backend b) {
    if (!backend_available(b))
        throw ConfigError(std::string("kernel backend '") + backend_name(b) +
                          "' is not available on this machine");
    g_backend.store(static_cast<int>(b), std::memory_order_release);
}

const KernelTable& table(Backend b) {
    if (!backend_available(b))
        throw ConfigError(std::string("kernel backend '") + backend_name(b) +
                          "' is not available on this machine");
    switch (b) {
        case Backend::scalar: return detail::scalar_table;
#ifdef IGB_HAVE_AVX2
        case Backend::avx2: return detail::avx2_table;
#endif
#ifdef IGB_HAVE_AVX512
        case Backend::avx512: return detail::avx512_table;
#endif
        default: return detail::scalar_table;
    }
}

const KernelTable& active() { return table(active_backend()); }

} // namespace igb::kernels
