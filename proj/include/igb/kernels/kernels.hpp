#pragma once

// Data-parallel inner loops of the simulator, with a scalar reference
// implementation and AVX2 / AVX-512 variants selected at runtime. All
// variants execute the same operation sequence (see kernels_impl.hpp), so
// results are bit-identical across backends; the equivalence tests assert
// exact equality.
//
// Backend selection: auto-detected from CPUID, overridable with the
// environment variable IGB_SIMD = auto | scalar | avx2 | avx512.

#include <cstddef>
#include <cstdint>

namespace igb::kernels {

enum class Backend { scalar, avx2, avx512 };

const char* backend_name(Backend b);
bool backend_available(Backend b); // compiled in and supported by this CPU
Backend active_backend();
void set_backend(Backend b); // throws igb::ConfigError if unavailable

struct KernelTable {
    // dst[i] = mean + stddev * z(stream_id, start_index + i), where z is the
    // inverse-CDF normal transform of the Philox uniform stream. The result
    // does not depend on how a range is split across calls.
    void (*normal_fill)(std::uint64_t stream_id, std::uint64_t start_index,
                        float mean, float stddev, float* dst, std::size_t n);

    // out[b*out_dim + o] = sum_i x[b*in_dim + i] * wt[i*out_dim + o]
    // wt is fan-in major (transposed weight matrix). out is overwritten.
    void (*affine_batch)(const float* x, int batch, int in_dim,
                         const float* wt, int out_dim, float* out);

    void (*relu_inplace)(float* v, std::size_t n);
    void (*srelu_inplace)(float* v, std::size_t n, float shift);
    void (*tanh_inplace)(float* v, std::size_t n);
};

// Table for an explicit backend (throws igb::ConfigError if unavailable).
const KernelTable& table(Backend b);
// Table for the active backend.
const KernelTable& active();

} // namespace igb::kernels
