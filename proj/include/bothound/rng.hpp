// Deterministic random helpers. std::mt19937_64 has a pinned output
// sequence, but the standard distributions and std::shuffle do not, so
// every randomized step in this project maps engine output manually.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace bothound {

using Rng = std::mt19937_64;

// Uniform draw in [0, bound). Rejection sampling keeps it unbiased.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// Uniform double in [lo, hi) built from the top 53 bits.
inline double uniform_real(Rng& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

// Fisher-Yates with the unbiased index draw above.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace bothound
