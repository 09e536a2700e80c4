#pragma once

// Single-source kernel bodies, templated on a small vector abstraction V.
// The scalar backend instantiates them with a width-1 V; the AVX2/AVX-512
// backends with wide Vs whose ops map 1:1 onto the same IEEE operations.
// Because every float operation (including the fused multiply-adds and the
// log/exp/erfinv polynomial chains) is spelled explicitly, all backends
// produce bit-identical results. These translation units are compiled with
// -ffp-contract=off so the compiler cannot fuse what we did not fuse.
//
// Kernels:
//   normal_fill   Philox4x32-10 counter stream -> uniforms -> normals via
//                 the single-precision erfinv polynomials (M. Giles, 2010).
//   affine_batch  out = x * W^T with fan-in-major weights, fma accumulation
//                 in ascending fan-in order for every output.
//   relu / srelu / tanh elementwise activations. tanh is evaluated as
//                 sign(x) * (1 - 2/(exp(2|x|)+1)) with a Cephes-style expf,
//                 exactly odd by construction.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>

#include "igb/kernels/kernels.hpp"

namespace igb::kernels::detail {

inline constexpr std::uint32_t philox_m0 = 0xD2511F53u;
inline constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
inline constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
inline constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

// ---------------------------------------------------------------------
// Width-1 lane type. Reference semantics for all backends.
// ---------------------------------------------------------------------
struct ScalarVec {
    static constexpr int width = 1;
    using F = float;
    using U = std::uint32_t;
    using M = bool;

    static F set1(float x) { return x; }
    static U set1u(std::uint32_t x) { return x; }
    static F loadu(const float* p) { return *p; }
    static void storeu(float* p, F a) { *p = a; }
    static U loadu_u(const std::uint32_t* p) { return *p; }
    using TM = int;
    static TM make_tail_mask(int n) { return n; }
    static F maskz_loadu_m(TM m, const float* p) { return m >= 1 ? *p : 0.0f; }
    static void mask_storeu_m(TM m, float* p, F a) {
        if (m >= 1) *p = a;
    }

    static F add(F a, F b) { return a + b; }
    static F sub(F a, F b) { return a - b; }
    static F mul(F a, F b) { return a * b; }
    static F div(F a, F b) { return a / b; }
    static F fma(F a, F b, F c) { return std::fmaf(a, b, c); }
    static F sqrt(F a) { return std::sqrt(a); }
    static F min(F a, F b) { return a < b ? a : b; }
    static F max(F a, F b) { return a > b ? a : b; }
    static F floor(F a) { return std::floor(a); }
    static F abs(F a) {
        U u;
        std::memcpy(&u, &a, 4);
        u &= 0x7FFFFFFFu;
        F r;
        std::memcpy(&r, &u, 4);
        return r;
    }
    static F copysign_from(F mag, F sgn) {
        U um, us;
        std::memcpy(&um, &mag, 4);
        std::memcpy(&us, &sgn, 4);
        um = (um & 0x7FFFFFFFu) | (us & 0x80000000u);
        F r;
        std::memcpy(&r, &um, 4);
        return r;
    }

    static M cmp_lt(F a, F b) { return a < b; }
    static F blend(M m, F a, F b) { return m ? a : b; } // m ? a : b

    static U addu(U a, U b) { return a + b; }
    static U mullo(U a, U b) { return a * b; }
    static U mulhi(U a, U b) {
        return static_cast<U>(
            (static_cast<std::uint64_t>(a) * b) >> 32);
    }
    static U xor_u(U a, U b) { return a ^ b; }
    static U and_u(U a, U b) { return a & b; }
    static U or_u(U a, U b) { return a | b; }
    template <int S> static U srli(U a) { return a >> S; }
    template <int S> static U slli(U a) { return a << S; }

    static F cast_f(U a) {
        F r;
        std::memcpy(&r, &a, 4);
        return r;
    }
    static U cast_u(F a) {
        U r;
        std::memcpy(&r, &a, 4);
        return r;
    }
    // unsigned 32-bit -> float, round to nearest
    static F cvt_u32_f(U a) { return static_cast<float>(a); }
    // reinterpret lanes as signed and convert
    static F cvt_i32_f(U a) {
        return static_cast<float>(static_cast<std::int32_t>(a));
    }
    // float (integral valued) -> signed int lanes
    static U cvt_f_i32(F a) {
        return static_cast<U>(static_cast<std::int32_t>(std::lrintf(a)));
    }

    // store z0..z3 interleaved: dst[4j + w] = zw[j]
    static void store_interleaved4(float* dst, F z0, F z1, F z2, F z3) {
        dst[0] = z0;
        dst[1] = z1;
        dst[2] = z2;
        dst[3] = z3;
    }
};

// ---------------------------------------------------------------------
// Shared math, templated on the lane type.
// ---------------------------------------------------------------------

// log(x) for normal positive x in (0, 1]; Cephes logf scheme.
template <class V> typename V::F logf_v(typename V::F x) {
    using F = typename V::F;
    using U = typename V::U;
    U xi = V::cast_u(x);
    // exponent with mantissa normalized to [0.5, 1)
    U biased = V::template srli<23>(xi);
    F e = V::sub(V::cvt_i32_f(biased), V::set1(126.0f));
    F m = V::cast_f(V::or_u(V::and_u(xi, V::set1u(0x007FFFFFu)),
                            V::set1u(0x3F000000u)));
    auto lt = V::cmp_lt(m, V::set1(0.70710678118654752440f));
    e = V::blend(lt, V::sub(e, V::set1(1.0f)), e);
    F y = V::blend(lt, V::sub(V::add(m, m), V::set1(1.0f)),
                   V::sub(m, V::set1(1.0f)));
    F z = V::mul(y, y);
    F p = V::set1(7.0376836292e-2f);
    p = V::fma(p, y, V::set1(-1.1514610310e-1f));
    p = V::fma(p, y, V::set1(1.1676998740e-1f));
    p = V::fma(p, y, V::set1(-1.2420140846e-1f));
    p = V::fma(p, y, V::set1(1.4249322787e-1f));
    p = V::fma(p, y, V::set1(-1.6668057665e-1f));
    p = V::fma(p, y, V::set1(2.0000714765e-1f));
    p = V::fma(p, y, V::set1(-2.4999993993e-1f));
    p = V::fma(p, y, V::set1(3.3333331174e-1f));
    F r = V::mul(V::mul(z, y), p);
    r = V::fma(e, V::set1(-2.12194440e-4f), r);
    r = V::fma(V::set1(-0.5f), z, r);
    r = V::add(y, r);
    r = V::fma(e, V::set1(0.693359375f), r);
    return r;
}

// exp(x) for x in [-88, 88]; Cephes expf scheme.
template <class V> typename V::F expf_v(typename V::F x) {
    using F = typename V::F;
    using U = typename V::U;
    x = V::min(x, V::set1(88.0f));
    x = V::max(x, V::set1(-88.0f));
    F n = V::floor(V::fma(x, V::set1(1.44269504088896341f), V::set1(0.5f)));
    x = V::fma(n, V::set1(-0.693359375f), x);
    x = V::fma(n, V::set1(2.12194440e-4f), x);
    F zz = V::mul(x, x);
    F p = V::set1(1.9875691500e-4f);
    p = V::fma(p, x, V::set1(1.3981999507e-3f));
    p = V::fma(p, x, V::set1(8.3334519073e-3f));
    p = V::fma(p, x, V::set1(4.1665795894e-2f));
    p = V::fma(p, x, V::set1(1.6666665459e-1f));
    p = V::fma(p, x, V::set1(5.0000001201e-1f));
    F r = V::add(V::fma(zz, p, x), V::set1(1.0f));
    U ni = V::cvt_f_i32(n);
    F pw2 = V::cast_f(V::template slli<23>(V::addu(ni, V::set1u(127))));
    return V::mul(r, pw2);
}

// sqrt(2) * erfinv(t), t strictly inside (-1, 1), with arg = 1 - t^2
// precomputed by the caller (as 4u(1-u), which is exact in exact
// arithmetic and avoids the cancellation of 1 - t*t).
template <class V>
typename V::F normal_icdf_core(typename V::F t, typename V::F arg) {
    using F = typename V::F;
    F w = V::sub(V::set1(0.0f), logf_v<V>(arg));
    auto central = V::cmp_lt(w, V::set1(5.0f));
    // central branch
    F wc = V::sub(w, V::set1(2.5f));
    F pc = V::set1(2.81022636e-08f);
    pc = V::fma(pc, wc, V::set1(3.43273939e-07f));
    pc = V::fma(pc, wc, V::set1(-3.5233877e-06f));
    pc = V::fma(pc, wc, V::set1(-4.39150654e-06f));
    pc = V::fma(pc, wc, V::set1(0.00021858087f));
    pc = V::fma(pc, wc, V::set1(-0.00125372503f));
    pc = V::fma(pc, wc, V::set1(-0.00417768164f));
    pc = V::fma(pc, wc, V::set1(0.246640727f));
    pc = V::fma(pc, wc, V::set1(1.50140941f));
    // tail branch
    F wt = V::sub(V::sqrt(w), V::set1(3.0f));
    F pt = V::set1(-0.000200214257f);
    pt = V::fma(pt, wt, V::set1(0.000100950558f));
    pt = V::fma(pt, wt, V::set1(0.00134934322f));
    pt = V::fma(pt, wt, V::set1(-0.00367342844f));
    pt = V::fma(pt, wt, V::set1(0.00573950773f));
    pt = V::fma(pt, wt, V::set1(-0.0076224613f));
    pt = V::fma(pt, wt, V::set1(0.00943887047f));
    pt = V::fma(pt, wt, V::set1(1.00167406f));
    pt = V::fma(pt, wt, V::set1(2.83297682f));
    F p = V::blend(central, pc, pt);
    return V::mul(V::mul(p, t), V::set1(1.41421356237309505f));
}

// word (uint32) -> mean + sd * z
template <class V>
typename V::F normal_from_words(typename V::U words, typename V::F mean,
                                typename V::F sd) {
    using F = typename V::F;
    F fw = V::cvt_u32_f(words);
    F u = V::fma(fw, V::set1(0x1p-32f), V::set1(0x1p-33f)); // (w+0.5)*2^-32
    F t = V::fma(u, V::set1(2.0f), V::set1(-1.0f));
    F one_minus = V::sub(V::set1(1.0f), u);
    F arg = V::mul(V::mul(V::set1(4.0f), u), one_minus); // 4u(1-u) = 1-t^2
    F z = normal_icdf_core<V>(t, arg);
    return V::fma(z, sd, mean);
}

// Philox4x32-10 in SoA form: lane j of the four outputs holds the four
// words of counter block (c0[j], c1[j]).
template <class V> struct PhiloxWords {
    typename V::U w0, w1, w2, w3;
};

template <class V>
PhiloxWords<V> philox_soa(std::uint64_t key, typename V::U c0,
                          typename V::U c1) {
    using U = typename V::U;
    U x0 = c0;
    U x1 = c1;
    U x2 = V::set1u(0);
    U x3 = V::set1u(0);
    U k0 = V::set1u(static_cast<std::uint32_t>(key));
    U k1 = V::set1u(static_cast<std::uint32_t>(key >> 32));
    for (int r = 0; r < 10; ++r) {
        U lo0 = V::mullo(x0, V::set1u(philox_m0));
        U hi0 = V::mulhi(x0, V::set1u(philox_m0));
        U lo1 = V::mullo(x2, V::set1u(philox_m1));
        U hi1 = V::mulhi(x2, V::set1u(philox_m1));
        U n0 = V::xor_u(V::xor_u(hi1, x1), k0);
        U n2 = V::xor_u(V::xor_u(hi0, x3), k1);
        x0 = n0;
        x1 = lo1;
        x2 = n2;
        x3 = lo0;
        k0 = V::addu(k0, V::set1u(philox_w0));
        k1 = V::addu(k1, V::set1u(philox_w1));
    }
    return {x0, x1, x2, x3};
}

// One stream element through the full scalar pipeline (ragged edges).
inline float normal_element(std::uint64_t stream_id, std::uint64_t index,
                            float mean, float sd) {
    using V = ScalarVec;
    std::uint64_t block = index >> 2;
    auto words = philox_soa<V>(stream_id, static_cast<std::uint32_t>(block),
                               static_cast<std::uint32_t>(block >> 32));
    std::uint32_t w;
    switch (index & 3) {
        case 0: w = words.w0; break;
        case 1: w = words.w1; break;
        case 2: w = words.w2; break;
        default: w = words.w3; break;
    }
    return normal_from_words<V>(w, mean, sd);
}

// ---------------------------------------------------------------------
// Kernel bodies
// ---------------------------------------------------------------------

template <class V>
void normal_fill_impl(std::uint64_t stream_id, std::uint64_t start,
                      float mean_s, float sd_s, float* dst, std::size_t n) {
    constexpr int W = V::width;
    std::uint64_t idx = start;
    std::uint64_t end = start + n;

    // scalar head until block-aligned
    while (idx < end && (idx & 3) != 0)
        dst[idx - start] = normal_element(stream_id, idx, mean_s, sd_s), ++idx;

    const typename V::F mean = V::set1(mean_s);
    const typename V::F sd = V::set1(sd_s);

    alignas(64) std::uint32_t c0buf[W > 1 ? W : 1];
    alignas(64) std::uint32_t c1buf[W > 1 ? W : 1];

    // W blocks (4W elements) per iteration
    while (idx + 4 * static_cast<std::uint64_t>(W) <= end) {
        std::uint64_t block = idx >> 2;
        for (int j = 0; j < W; ++j) {
            std::uint64_t b = block + static_cast<std::uint64_t>(j);
            c0buf[j] = static_cast<std::uint32_t>(b);
            c1buf[j] = static_cast<std::uint32_t>(b >> 32);
        }
        auto c0 = V::loadu_u(c0buf);
        auto c1 = V::loadu_u(c1buf);
        auto words = philox_soa<V>(stream_id, c0, c1);
        auto z0 = normal_from_words<V>(words.w0, mean, sd);
        auto z1 = normal_from_words<V>(words.w1, mean, sd);
        auto z2 = normal_from_words<V>(words.w2, mean, sd);
        auto z3 = normal_from_words<V>(words.w3, mean, sd);
        V::store_interleaved4(dst + (idx - start), z0, z1, z2, z3);
        idx += 4 * W;
    }

    while (idx < end)
        dst[idx - start] = normal_element(stream_id, idx, mean_s, sd_s), ++idx;
}

// One register tile: R batch rows x (NF full weight vectors + optionally one
// tail-masked vector). Each accumulator sums over the fan-in in ascending
// order, so results do not depend on the tiling.
template <class V, int R, int NF, bool TAIL>
void affine_tile(const float* __restrict x, int in_dim,
                 const float* __restrict wt, int out_dim, int tail_lanes,
                 float* __restrict out) {
    constexpr int W = V::width;
    constexpr int NV = NF + (TAIL ? 1 : 0);
    using F = typename V::F;
    const auto tmask = V::make_tail_mask(TAIL ? tail_lanes : 0);
    F acc[R][NV];
    for (int r = 0; r < R; ++r)
        for (int k = 0; k < NV; ++k) acc[r][k] = V::set1(0.0f);
    for (int i = 0; i < in_dim; ++i) {
        const float* wr = wt + static_cast<std::size_t>(i) * out_dim;
        F w[NV];
        for (int k = 0; k < NF; ++k) w[k] = V::loadu(wr + k * W);
        if constexpr (TAIL) w[NF] = V::maskz_loadu_m(tmask, wr + NF * W);
        for (int r = 0; r < R; ++r) {
            F xb = V::set1(x[static_cast<std::size_t>(r) * in_dim + i]);
            for (int k = 0; k < NV; ++k) acc[r][k] = V::fma(xb, w[k], acc[r][k]);
        }
    }
    for (int r = 0; r < R; ++r) {
        float* orow = out + static_cast<std::size_t>(r) * out_dim;
        for (int k = 0; k < NF; ++k) V::storeu(orow + k * W, acc[r][k]);
        if constexpr (TAIL) V::mask_storeu_m(tmask, orow + NF * W, acc[r][NF]);
    }
}

template <class V, int R>
void affine_tile_dispatch(const float* x, int in_dim, const float* wt,
                          int out_dim, int nf, int tail, float* out) {
    if (tail == 0) {
        switch (nf) {
            case 1: affine_tile<V, R, 1, false>(x, in_dim, wt, out_dim, 0, out); return;
            case 2: affine_tile<V, R, 2, false>(x, in_dim, wt, out_dim, 0, out); return;
            case 3: affine_tile<V, R, 3, false>(x, in_dim, wt, out_dim, 0, out); return;
            default: affine_tile<V, R, 4, false>(x, in_dim, wt, out_dim, 0, out); return;
        }
    }
    switch (nf) {
        case 0: affine_tile<V, R, 0, true>(x, in_dim, wt, out_dim, tail, out); return;
        case 1: affine_tile<V, R, 1, true>(x, in_dim, wt, out_dim, tail, out); return;
        case 2: affine_tile<V, R, 2, true>(x, in_dim, wt, out_dim, tail, out); return;
        default: affine_tile<V, R, 3, true>(x, in_dim, wt, out_dim, tail, out); return;
    }
}

template <class V>
void affine_batch_impl(const float* x, int batch, int in_dim, const float* wt,
                       int out_dim, float* out) {
    constexpr int W = V::width;
    constexpr int R = 4;
    const int tile_cols = 4 * W; // weight slice for one tile stays L2-sized

    for (int c0 = 0; c0 < out_dim; c0 += tile_cols) {
        const int cols = (out_dim - c0 < tile_cols) ? out_dim - c0 : tile_cols;
        const int nf = cols / W;       // full-width vectors
        const int tail = cols - nf * W; // lanes in the masked tail vector
        const float* wt_c = wt + c0;
        int b = 0;
        for (; b + R <= batch; b += R)
            affine_tile_dispatch<V, R>(
                x + static_cast<std::size_t>(b) * in_dim, in_dim, wt_c, out_dim,
                nf, tail, out + static_cast<std::size_t>(b) * out_dim + c0);
        for (; b < batch; ++b)
            affine_tile_dispatch<V, 1>(
                x + static_cast<std::size_t>(b) * in_dim, in_dim, wt_c, out_dim,
                nf, tail, out + static_cast<std::size_t>(b) * out_dim + c0);
    }
}

template <class V> void relu_impl(float* v, std::size_t n) {
    constexpr int W = V::width;
    std::size_t i = 0;
    auto zero = V::set1(0.0f);
    for (; i + W <= n; i += W)
        V::storeu(v + i, V::max(V::loadu(v + i), zero));
    for (; i < n; ++i) v[i] = v[i] > 0.0f ? v[i] : 0.0f;
}

template <class V>
void srelu_impl(float* v, std::size_t n, float shift_s) {
    constexpr int W = V::width;
    std::size_t i = 0;
    auto zero = V::set1(0.0f);
    auto shift = V::set1(shift_s);
    for (; i + W <= n; i += W)
        V::storeu(v + i, V::sub(V::max(V::loadu(v + i), zero), shift));
    for (; i < n; ++i) v[i] = (v[i] > 0.0f ? v[i] : 0.0f) - shift_s;
}

template <class V> typename V::F tanh_v(typename V::F x) {
    using F = typename V::F;
    F t = V::abs(x);
    F tt = V::min(V::add(t, t), V::set1(88.0f));
    F e = expf_v<V>(tt);
    F r = V::sub(V::set1(1.0f),
                 V::div(V::set1(2.0f), V::add(e, V::set1(1.0f))));
    return V::copysign_from(r, x);
}

template <class V> void tanh_impl(float* v, std::size_t n) {
    constexpr int W = V::width;
    std::size_t i = 0;
    for (; i + W <= n; i += W) V::storeu(v + i, tanh_v<V>(V::loadu(v + i)));
    for (; i < n; ++i) v[i] = tanh_v<ScalarVec>(v[i]);
}

} // namespace igb::kernels::detail
