#pragma once

#include <cstdint>
#include <random>

namespace swipt {

/// SplitMix64 finalizer; full-period mixing of a 64-bit state.
constexpr std::uint64_t split_mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a master seed and up to three
/// counters (sweep value, trial, purpose). Distinct counters give unrelated
/// streams, so any trial is individually re-runnable.
constexpr std::uint64_t derive_stream(std::uint64_t master, std::uint64_t a = 0,
                                      std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = split_mix64(master);
    s = split_mix64(s ^ (a + 0x9e3779b97f4a7c15ull));
    s = split_mix64(s ^ (b + 0xbf58476d1ce4e5b9ull));
    s = split_mix64(s ^ (c + 0x94d049bb133111ebull));
    return s;
}

/// Seeded generator with explicit variate transforms. The transforms are
/// spelled out (rather than std::*_distribution) so identical seeds give
/// bit-identical draws on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0,1); never returns an endpoint.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Exponential with the given mean; strictly positive and finite for
    /// any finite positive mean.
    double exponential(double mean) { return -mean * std::log(uniform01()); }

    /// Uniform integer in [0, bound), Lemire's multiply-shift (unbiased).
    std::uint64_t below(std::uint64_t bound) {
        while (true) {
            std::uint64_t x = engine_();
            unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
            auto lo = static_cast<std::uint64_t>(m);
            if (lo >= bound || lo >= std::uint64_t(-bound) % bound) {
                return static_cast<std::uint64_t>(m >> 64);
            }
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace swipt
