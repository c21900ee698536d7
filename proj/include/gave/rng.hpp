#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gave {

// Counter-based stream built on the SplitMix64 finalizer. Word i of the
// stream keyed by k is mix(k + (i + 1) * kGolden), which is exactly the
// i-th output of a SplitMix64 generator seeded with k. Random access by
// index lets parallel loops reproduce the sequential stream.
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class CounterRng {
public:
    constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

    constexpr std::uint64_t key() const noexcept { return key_; }

    constexpr std::uint64_t word(std::uint64_t index) const noexcept {
        return splitmix_mix(key_ + (index + 1) * kGolden);
    }

    /// Top 53 bits mapped to [-1, 1).
    constexpr double symmetric(std::uint64_t index) const noexcept {
        return static_cast<double>(word(index) >> 11) * 0x1.0p-52 - 1.0;
    }

    /// Top 53 bits mapped to (0, 1].
    constexpr double open_unit(std::uint64_t index) const noexcept {
        return static_cast<double>((word(index) >> 11) + 1) * 0x1.0p-53;
    }

    /// Box-Muller normal from words 2i and 2i+1.
    double normal(std::uint64_t index) const noexcept {
        const double u1 = open_unit(2 * index);
        const double u2 = open_unit(2 * index + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t key_;
};

/// Key for the index-th child stream of `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return CounterRng(seed).word(index);
}

}  // namespace gave
