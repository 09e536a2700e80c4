#pragma once

// Counter-based random streams.
//
// Stream derivation is fixed as follows and must never change, since run
// reproducibility depends on it:
//
//   replica_key(master_seed, r) = splitmix64(master_seed ^ ((r+1) * GOLDEN))
//   stream_id(replica_key, tag) = splitmix64(replica_key ^ tag)
//
// with GOLDEN = 0x9E3779B97F4A7C15. A stream is a Philox4x32-10 generator
// keyed by the 64-bit stream_id; element i of the stream is pure function
// philox(key = stream_id, counter = i/4)[i%4], so any subrange can be
// generated independently (batching and threading cannot change a stream).
// Distinct stream ids give independent streams by the Philox design.

#include <array>
#include <cstdint>

namespace igb::math {

inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += golden_gamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Sub-stream tags used by the simulator (documented, fixed).
enum class StreamTag : std::uint64_t {
    dataset = 0x01,
    weights_base = 0x100,  // layer l uses weights_base + l
    bias_base = 0x200,     // layer l uses bias_base + l
    bootstrap = 0x300,
    oracle = 0x400,
};

struct SeedPolicy {
    std::uint64_t master_seed = 0;

    std::uint64_t replica_key(std::uint64_t replica_index) const {
        return splitmix64(master_seed ^ ((replica_index + 1) * golden_gamma));
    }
    static std::uint64_t stream_id(std::uint64_t replica_key,
                                   StreamTag tag, std::uint64_t offset = 0) {
        return splitmix64(replica_key ^
                          (static_cast<std::uint64_t>(tag) + offset));
    }
};

// Philox4x32-10 block function: 4 output words per (key, counter) pair.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t key,
                                        std::uint64_t counter);

// Element i of the uniform stream, in (0,1): (word + 0.5) * 2^-32.
double uniform_stream(std::uint64_t stream_id, std::uint64_t index);

// Value-type view of one stream for sequential draws (tests, bootstrap).
class Stream {
  public:
    explicit Stream(std::uint64_t stream_id) : id_(stream_id) {}

    double next_uniform() { return uniform_stream(id_, index_++); }
    double next_normal(); // inverse-CDF transform of next_uniform
    std::uint64_t next_u64();

  private:
    std::uint64_t id_;
    std::uint64_t index_ = 0;
};

} // namespace igb::math
