#pragma once

#include <cstdint>
#include <random>

namespace dynwalk {

// SplitMix64, used only to spread (seed, stream) pairs into well-mixed
// engine seeds. Keeps per-query streams independent of worker identity.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 mix{seed ^ (stream * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL)};
    mix.next();
    return mix.next();
}

// Draw-counting RNG. Every sampler draw goes through next_u64() so the
// rng_draws counters in sample outcomes are exact. The bit-to-double
// mappings are spelled out here instead of std::uniform_real_distribution,
// whose output is not reproducible across standard library implementations.
class CountingRng {
public:
    explicit CountingRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() {
        ++draws_;
        return engine_();
    }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in the open interval (0, 1); keeps log() finite
    double open01() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    // uniform in [0, n) for n >= 1, multiply-shift bounded draw
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    std::uint64_t draw_count() const { return draws_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

} // namespace dynwalk
