#include "igb/mathkit/rng.hpp"

#include <cmath>

#include "igb/mathkit/special.hpp"

namespace igb::math {

namespace {

constexpr std::uint32_t philox_m0 = 0xD2511F53u;
constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t& c0, std::uint32_t& c1,
                         std::uint32_t& c2, std::uint32_t& c3,
                         std::uint32_t k0, std::uint32_t k1) {
    std::uint64_t p0 = static_cast<std::uint64_t>(philox_m0) * c0;
    std::uint64_t p1 = static_cast<std::uint64_t>(philox_m1) * c2;
    std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    std::uint32_t n0 = hi1 ^ c1 ^ k0;
    std::uint32_t n1 = lo1;
    std::uint32_t n2 = hi0 ^ c3 ^ k1;
    std::uint32_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::uint64_t key,
                                        std::uint64_t counter) {
    std::uint32_t c0 = static_cast<std::uint32_t>(counter);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter >> 32);
    std::uint32_t c2 = 0;
    std::uint32_t c3 = 0;
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int r = 0; r < 10; ++r) {
        philox_round(c0, c1, c2, c3, k0, k1);
        k0 += philox_w0;
        k1 += philox_w1;
    }
    return {c0, c1, c2, c3};
}

double uniform_stream(std::uint64_t stream_id, std::uint64_t index) {
    auto block = philox4x32(stream_id, index >> 2);
    std::uint32_t w = block[index & 3];
    return (static_cast<double>(w) + 0.5) * 0x1p-32;
}

double Stream::next_normal() {
    double u = next_uniform();
    return sqrt2 * erf_inv(2.0 * u - 1.0);
}

std::uint64_t Stream::next_u64() {
    auto b0 = philox4x32(id_ ^ 0xA5A5A5A5A5A5A5A5ull, index_++);
    return (static_cast<std::uint64_t>(b0[0]) << 32) | b0[1];
}

} // namespace igb::math
