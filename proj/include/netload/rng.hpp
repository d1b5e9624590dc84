#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace netload {

// Seed mixing step of splitmix64. Used to derive independent stream seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Derives the seed of an independent stream from a base seed and a tag,
// e.g. derive_seed(seed, "noise:train"). Stable across platforms.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
    std::uint64_t s = seed ^ fnv1a64(tag);
    return splitmix64_next(s);
}

// Platform-stable seeded generator. Raw 64-bit draws come from
// std::mt19937_64, whose output sequence is fixed by the C++ standard;
// every transform below (uniform doubles, bounded ints, normal deviates)
// is implemented here instead of std::*_distribution, whose algorithms
// are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform double in (0, 1]; safe as a log() argument.
    double uniform01_open() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), unbiased via rejection sampling: draws below
    // 2^64 mod n are rejected so the remaining range is a whole multiple of n.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t min = (0 - n) % n;
        std::uint64_t u = engine_();
        while (u < min) {
            u = engine_();
        }
        return u % n;
    }

    // Basic Box-Muller transform; one deviate per pair of uniforms.
    double normal(double mean, double stddev) {
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        return mean + stddev * z;
    }

    // Fisher-Yates prefix: after the call, the first k entries of idx are a
    // uniform draw of k elements without replacement.
    template <typename T>
    void shuffle_prefix(std::vector<T>& idx, std::size_t k) {
        const std::size_t n = idx.size();
        for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(bounded(n - i));
            std::swap(idx[i], idx[j]);
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& idx) {
        shuffle_prefix(idx, idx.size());
    }

private:
    std::mt19937_64 engine_;
};

} // namespace netload
