// AVX2 + FMA backend: 8 lanes, same operation sequence as the scalar
// reference (see kernels_impl.hpp).

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace igb::kernels::detail {

struct Avx2Vec {
    static constexpr int width = 8;
    using F = __m256;
    using U = __m256i;
    using M = __m256; // lane mask as float vector from _mm256_cmp_ps

    static F set1(float x) { return _mm256_set1_ps(x); }
    static U set1u(std::uint32_t x) {
        return _mm256_set1_epi32(static_cast<int>(x));
    }
    static F loadu(const float* p) { return _mm256_loadu_ps(p); }
    static void storeu(float* p, F a) { _mm256_storeu_ps(p, a); }
    static U loadu_u(const std::uint32_t* p) {
        return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
    }
    using TM = __m256i;
    static TM make_tail_mask(int n) {
        return _mm256_cmpgt_epi32(_mm256_set1_epi32(n),
                                  _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7));
    }
    static F maskz_loadu_m(TM m, const float* p) {
        return _mm256_maskload_ps(p, m);
    }
    static void mask_storeu_m(TM m, float* p, F a) {
        _mm256_maskstore_ps(p, m, a);
    }

    static F add(F a, F b) { return _mm256_add_ps(a, b); }
    static F sub(F a, F b) { return _mm256_sub_ps(a, b); }
    static F mul(F a, F b) { return _mm256_mul_ps(a, b); }
    static F div(F a, F b) { return _mm256_div_ps(a, b); }
    static F fma(F a, F b, F c) { return _mm256_fmadd_ps(a, b, c); }
    static F sqrt(F a) { return _mm256_sqrt_ps(a); }
    static F min(F a, F b) { return _mm256_min_ps(a, b); }
    static F max(F a, F b) { return _mm256_max_ps(a, b); }
    static F floor(F a) { return _mm256_floor_ps(a); }
    static F abs(F a) {
        return _mm256_and_ps(a, _mm256_castsi256_ps(set1u(0x7FFFFFFFu)));
    }
    static F copysign_from(F mag, F sgn) {
        F m = _mm256_and_ps(mag, _mm256_castsi256_ps(set1u(0x7FFFFFFFu)));
        F s = _mm256_and_ps(sgn, _mm256_castsi256_ps(set1u(0x80000000u)));
        return _mm256_or_ps(m, s);
    }

    static M cmp_lt(F a, F b) { return _mm256_cmp_ps(a, b, _CMP_LT_OQ); }
    static F blend(M m, F a, F b) { return _mm256_blendv_ps(b, a, m); }

    static U addu(U a, U b) { return _mm256_add_epi32(a, b); }
    static U mullo(U a, U b) { return _mm256_mullo_epi32(a, b); }
    static U mulhi(U a, U b) {
        __m256i even = _mm256_mul_epu32(a, b);
        __m256i odd =
            _mm256_mul_epu32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32));
        __m256i even_hi = _mm256_srli_epi64(even, 32);
        __m256i odd_hi =
            _mm256_and_si256(odd, _mm256_set1_epi64x(
                                      static_cast<long long>(0xFFFFFFFF00000000ull)));
        return _mm256_blend_epi32(even_hi, odd_hi, 0xAA);
    }
    static U xor_u(U a, U b) { return _mm256_xor_si256(a, b); }
    static U and_u(U a, U b) { return _mm256_and_si256(a, b); }
    static U or_u(U a, U b) { return _mm256_or_si256(a, b); }
    template <int S> static U srli(U a) { return _mm256_srli_epi32(a, S); }
    template <int S> static U slli(U a) { return _mm256_slli_epi32(a, S); }

    static F cast_f(U a) { return _mm256_castsi256_ps(a); }
    static U cast_u(F a) { return _mm256_castps_si256(a); }
    static F cvt_u32_f(U a) {
        // hi*65536 + lo with one fma rounding == round-to-nearest of the
        // 32-bit value, matching the scalar static_cast<float>.
        __m256i hi = _mm256_srli_epi32(a, 16);
        __m256i lo = _mm256_and_si256(a, set1u(0xFFFFu));
        return _mm256_fmadd_ps(_mm256_cvtepi32_ps(hi), set1(65536.0f),
                               _mm256_cvtepi32_ps(lo));
    }
    static F cvt_i32_f(U a) { return _mm256_cvtepi32_ps(a); }
    static U cvt_f_i32(F a) { return _mm256_cvtps_epi32(a); }

    static void store_interleaved4(float* dst, F z0, F z1, F z2, F z3) {
        // dst[4j + w] = zw[j], j in [0,8)
        __m256 t0 = _mm256_unpacklo_ps(z0, z1); // j0(z0,z1) j1 | j4 j5
        __m256 t1 = _mm256_unpackhi_ps(z0, z1); // j2 j3 | j6 j7
        __m256 t2 = _mm256_unpacklo_ps(z2, z3);
        __m256 t3 = _mm256_unpackhi_ps(z2, z3);
        __m256 q0 = _mm256_shuffle_ps(t0, t2, 0x44); // j0 j1 | j4 j5 quads lo
        __m256 q1 = _mm256_shuffle_ps(t0, t2, 0xEE);
        __m256 q2 = _mm256_shuffle_ps(t1, t3, 0x44);
        __m256 q3 = _mm256_shuffle_ps(t1, t3, 0xEE);
        // q0 = [j0 | j4], q1 = [j1 | j5], q2 = [j2 | j6], q3 = [j3 | j7]
        _mm256_storeu_ps(dst + 0, _mm256_permute2f128_ps(q0, q1, 0x20));
        _mm256_storeu_ps(dst + 8, _mm256_permute2f128_ps(q2, q3, 0x20));
        _mm256_storeu_ps(dst + 16, _mm256_permute2f128_ps(q0, q1, 0x31));
        _mm256_storeu_ps(dst + 24, _mm256_permute2f128_ps(q2, q3, 0x31));
    }
};

extern const KernelTable avx2_table;
const KernelTable avx2_table = {
    &normal_fill_impl<Avx2Vec>, &affine_batch_impl<Avx2Vec>,
    &relu_impl<Avx2Vec>,        &srelu_impl<Avx2Vec>,
    &tanh_impl<Avx2Vec>,
};

} // namespace igb::kernels::detail
