// AVX-512 backend: 16 lanes, same operation sequence as the scalar
// reference (see kernels_impl.hpp).

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace igb::kernels::detail {

struct Avx512Vec {
    static constexpr int width = 16;
    using F = __m512;
    using U = __m512i;
    using M = __mmask16;

    static F set1(float x) { return _mm512_set1_ps(x); }
    static U set1u(std::uint32_t x) {
        return _mm512_set1_epi32(static_cast<int>(x));
    }
    static F loadu(const float* p) { return _mm512_loadu_ps(p); }
    static void storeu(float* p, F a) { _mm512_storeu_ps(p, a); }
    static U loadu_u(const std::uint32_t* p) { return _mm512_loadu_si512(p); }
    using TM = __mmask16;
    static TM make_tail_mask(int n) {
        return static_cast<__mmask16>((1u << n) - 1u);
    }
    static F maskz_loadu_m(TM m, const float* p) {
        return _mm512_maskz_loadu_ps(m, p);
    }
    static void mask_storeu_m(TM m, float* p, F a) {
        _mm512_mask_storeu_ps(p, m, a);
    }

    static F add(F a, F b) { return _mm512_add_ps(a, b); }
    static F sub(F a, F b) { return _mm512_sub_ps(a, b); }
    static F mul(F a, F b) { return _mm512_mul_ps(a, b); }
    static F div(F a, F b) { return _mm512_div_ps(a, b); }
    static F fma(F a, F b, F c) { return _mm512_fmadd_ps(a, b, c); }
    static F sqrt(F a) { return _mm512_sqrt_ps(a); }
    static F min(F a, F b) { return _mm512_min_ps(a, b); }
    static F max(F a, F b) { return _mm512_max_ps(a, b); }
    static F floor(F a) {
        return _mm512_roundscale_ps(a, _MM_FROUND_TO_NEG_INF |
                                           _MM_FROUND_NO_EXC);
    }
    static F abs(F a) { return _mm512_abs_ps(a); }
    static F copysign_from(F mag, F sgn) {
        F m = _mm512_and_ps(mag, _mm512_castsi512_ps(set1u(0x7FFFFFFFu)));
        F s = _mm512_and_ps(sgn, _mm512_castsi512_ps(set1u(0x80000000u)));
        return _mm512_or_ps(m, s);
    }

    static M cmp_lt(F a, F b) { return _mm512_cmp_ps_mask(a, b, _CMP_LT_OQ); }
    static F blend(M m, F a, F b) { return _mm512_mask_blend_ps(m, b, a); }

    static U addu(U a, U b) { return _mm512_add_epi32(a, b); }
    static U mullo(U a, U b) { return _mm512_mullo_epi32(a, b); }
    static U mulhi(U a, U b) {
        __m512i even = _mm512_mul_epu32(a, b);
        __m512i odd =
            _mm512_mul_epu32(_mm512_srli_epi64(a, 32), _mm512_srli_epi64(b, 32));
        __m512i even_hi = _mm512_srli_epi64(even, 32);
        __m512i odd_hi = _mm512_and_si512(
            odd, _mm512_set1_epi64(static_cast<long long>(0xFFFFFFFF00000000ull)));
        return _mm512_mask_blend_epi32(0xAAAA, even_hi, odd_hi);
    }
    static U xor_u(U a, U b) { return _mm512_xor_si512(a, b); }
    static U and_u(U a, U b) { return _mm512_and_si512(a, b); }
    static U or_u(U a, U b) { return _mm512_or_si512(a, b); }
    template <int S> static U srli(U a) { return _mm512_srli_epi32(a, S); }
    template <int S> static U slli(U a) { return _mm512_slli_epi32(a, S); }

    static F cast_f(U a) { return _mm512_castsi512_ps(a); }
    static U cast_u(F a) { return _mm512_castps_si512(a); }
    static F cvt_u32_f(U a) { return _mm512_cvtepu32_ps(a); }
    static F cvt_i32_f(U a) { return _mm512_cvtepi32_ps(a); }
    static U cvt_f_i32(F a) { return _mm512_cvtps_epi32(a); }

    static void store_interleaved4(float* dst, F z0, F z1, F z2, F z3) {
        // dst[4j + w] = zw[j], j in [0,16)
        __m512 t0 = _mm512_unpacklo_ps(z0, z1);
        __m512 t1 = _mm512_unpackhi_ps(z0, z1);
        __m512 t2 = _mm512_unpacklo_ps(z2, z3);
        __m512 t3 = _mm512_unpackhi_ps(z2, z3);
        __m512 q0 = _mm512_shuffle_ps(t0, t2, 0x44); // quadrant q = block j= q+4*quad? see below
        __m512 q1 = _mm512_shuffle_ps(t0, t2, 0xEE);
        __m512 q2 = _mm512_shuffle_ps(t1, t3, 0x44);
        __m512 q3 = _mm512_shuffle_ps(t1, t3, 0xEE);
        // q0 holds blocks {0,4,8,12} as 128-bit quads, q1 {1,5,9,13},
        // q2 {2,6,10,14}, q3 {3,7,11,15}
        __m512 a02 = _mm512_shuffle_f32x4(q0, q1, 0x88); // [j0 j8 j1 j9]
        __m512 a13 = _mm512_shuffle_f32x4(q0, q1, 0xDD); // [j4 j12 j5 j13]
        __m512 b02 = _mm512_shuffle_f32x4(q2, q3, 0x88); // [j2 j10 j3 j11]
        __m512 b13 = _mm512_shuffle_f32x4(q2, q3, 0xDD); // [j6 j14 j7 j15]
        _mm512_storeu_ps(dst + 0, _mm512_shuffle_f32x4(a02, b02, 0x88));
        _mm512_storeu_ps(dst + 16, _mm512_shuffle_f32x4(a13, b13, 0x88));
        _mm512_storeu_ps(dst + 32, _mm512_shuffle_f32x4(a02, b02, 0xDD));
        _mm512_storeu_ps(dst + 48, _mm512_shuffle_f32x4(a13, b13, 0xDD));
    }
};

extern const KernelTable avx512_table;
const KernelTable avx512_table = {
    &normal_fill_impl<Avx512Vec>, &affine_batch_impl<Avx512Vec>,
    &relu_impl<Avx512Vec>,        &srelu_impl<Avx512Vec>,
    &tanh_impl<Avx512Vec>,
};

} // namespace igb::kernels::detail
