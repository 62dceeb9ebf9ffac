#pragma once

#include <cstdint>

// Counter-based random draws. Every draw is a pure function of its key
// words, so results do not depend on evaluation order or thread count.
namespace hrg::rng {

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t hash2(std::uint64_t seed, std::uint64_t a) noexcept {
    return mix64(mix64(seed + kGamma) ^ (a + kGamma));
}

constexpr std::uint64_t hash3(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
    return mix64(hash2(seed, a) ^ (b + kGamma));
}

constexpr std::uint64_t hash4(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) noexcept {
    return mix64(hash3(seed, a, b) ^ (c + kGamma));
}

// Derive an independent sub-seed for a named stream.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) noexcept {
    return hash2(seed, stream);
}

// Uniform in [0,1), 53-bit mantissa.
constexpr double u01(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Uniform in (0,1); safe under log().
constexpr double u01_open(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform index in [0, bound) via 128-bit multiply-shift.
constexpr std::uint32_t bounded(std::uint64_t bits, std::uint32_t bound) noexcept {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(bits) * bound) >> 64);
}

// The Bernoulli draw behind edge generation: a pure function of
// (seed, min(i,j), max(i,j), band), so graphs are reproducible no matter
// how pairs are enumerated.
constexpr double pair_uniform(std::uint64_t seed, std::uint32_t i, std::uint32_t j,
                              std::uint32_t band) noexcept {
    const std::uint32_t lo = i < j ? i : j;
    const std::uint32_t hi = i < j ? j : i;
    const std::uint64_t packed = (static_cast<std::uint64_t>(lo) << 32) | hi;
    return u01(hash3(seed, packed, band));
}

}  // namespace hrg::rng
