#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace persist {

using Rng = std::mt19937_64;

// splitmix64 finalizer; decorrelates neighbouring seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for stream `index` under a master seed. Depends only on the pair, so
// any stream can be regenerated in isolation.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

inline Rng make_stream(std::uint64_t master, std::uint64_t index) {
    return Rng(stream_seed(master, index));
}

// Uniform on the open interval (0, 1).
inline double uniform_open(Rng& rng) {
    // 53 random bits, shifted off zero by half an ulp
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double standard_exponential(Rng& rng) { return -std::log(uniform_open(rng)); }

}  // namespace persist
