#pragma once

#include <cstdint>

namespace copdep {

// splitmix64 step; also used to expand seeds and derive sub-stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// xoshiro256++ (Blackman & Vigna). Fixed shift/rotate constants (17, 45,
// rotl 23/rot 11) so that sampled streams are bit-identical across
// platforms. Seeded by four splitmix64 expansions of a 64-bit seed.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform double in [0,1): top 53 bits scaled by 2^-53.
    double next_double();

    // Uniform double in the open interval (0,1).
    double next_open();

private:
    std::uint64_t s_[4];
};

// Sub-stream seed for worker k of a base seed: splitmix64 applied to
// seed XOR (golden-ratio constant * (k+1)). Documented so parallel sweeps
// stay reproducible.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace copdep
