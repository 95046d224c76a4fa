#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "binceo/bits.hpp"

namespace binceo {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// FNV-1a over the tag, folded through splitmix64.
constexpr std::uint64_t tag_hash(std::string_view tag) noexcept
{
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return splitmix64(h);
}

// Per-component seed: distinct (tag, index) pairs give unrelated streams.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t index = 0) noexcept
{
    return splitmix64(splitmix64(base ^ tag_hash(tag)) + splitmix64(index + 0x632BE59BD9B4E019ull));
}

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
inline double uniform01(Rng& rng) noexcept
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by rejection; bound must be > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) noexcept
{
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t r = rng();
    while (r >= limit) r = rng();
    return r % bound;
}

inline BitSequence bernoulli_bits(Rng& rng, std::size_t n, double p)
{
    BitSequence out(n);
    for (std::size_t i = 0; i < n; ++i) out.set(i, uniform01(rng) < p ? 1 : 0);
    return out;
}

template <class T>
void shuffle(std::vector<T>& values, Rng& rng)
{
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

} // namespace binceo
