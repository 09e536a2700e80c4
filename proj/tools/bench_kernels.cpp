// Microbenchmark for the SIMD kernel backends. Not part of the test suite;
// used to size the acceptance-run configurations.

#include <chrono>
#include <cstdio>
#include <vector>

#include "igb/kernels/kernels.hpp"

using Clock = std::chrono::steady_clock;

static double secs(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int main() {
    using namespace igb::kernels;
    const std::size_t n = 1u << 24; // 16M normals
    std::vector<float> buf(n);

    for (Backend b : {Backend::scalar, Backend::avx2, Backend::avx512}) {
        if (!backend_available(b)) {
            std::printf("%-7s unavailable\n", backend_name(b));
            continue;
        }
        const auto& t = table(b);
        std::size_t nn = (b == Backend::scalar) ? n / 16 : n;
        auto t0 = Clock::now();
        t.normal_fill(0x1234, 0, 0.0f, 1.0f, buf.data(), nn);
        auto t1 = Clock::now();
        std::printf("%-7s normal_fill: %8.1f Mnormals/s\n", backend_name(b),
                    nn / secs(t0, t1) / 1e6);

        // affine: batch=128, in=3072, out=100
        const int B = 128, d = 3072, N = 100;
        std::vector<float> x(static_cast<std::size_t>(B) * d),
            wt(static_cast<std::size_t>(d) * N),
            out(static_cast<std::size_t>(B) * N);
        t.normal_fill(1, 0, 0.0f, 1.0f, x.data(), x.size());
        t.normal_fill(2, 0, 0.0f, 1.0f, wt.data(), wt.size());
        int reps = (b == Backend::scalar) ? 2 : 40;
        t0 = Clock::now();
        for (int r = 0; r < reps; ++r)
            t.affine_batch(x.data(), B, d, wt.data(), N, out.data());
        t1 = Clock::now();
        double macs = static_cast<double>(B) * d * N * reps;
        std::printf("%-7s affine_batch: %7.2f GMAC/s\n", backend_name(b),
                    macs / secs(t0, t1) / 1e9);

        t0 = Clock::now();
        int treps = (b == Backend::scalar) ? 2 : 10;
        for (int r = 0; r < treps; ++r) t.tanh_inplace(buf.data(), nn);
        t1 = Clock::now();
        std::printf("%-7s tanh: %8.1f Melem/s\n", backend_name(b),
                    nn * static_cast<double>(treps) / secs(t0, t1) / 1e6);
    }
    return 0;
}
