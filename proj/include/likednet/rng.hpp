#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace likednet {

// All randomness flows through mt19937_64 (bit-stable per the C++ standard)
// plus the hand-rolled draws below. std:: distributions are
// implementation-defined and would break the byte-identical rerun contract.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stable per-stream seed for work unit `index` under one master seed.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// Uniform on the odd multiples of 2^-53 in (0,1); both endpoints excluded.
inline double uniform01(std::mt19937_64& gen) {
    const std::uint64_t x = gen() >> 12;  // 52 bits
    return static_cast<double>(2 * x + 1) * 0x1.0p-53;
}

// Exponential with rate `lambda` (mean 1/lambda); strictly positive.
inline double exp_positive(std::mt19937_64& gen, double lambda) {
    return -std::log(uniform01(gen)) / lambda;
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return x % n;
}

}  // namespace likednet
