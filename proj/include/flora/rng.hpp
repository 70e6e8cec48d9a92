#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace flora {

// Deterministic RNG helpers. std::mt19937_64 output is fully specified by the
// standard; draws and shuffles below avoid std::uniform_int_distribution and
// std::shuffle, whose outputs are implementation-defined.

using Rng = std::mt19937_64;

// Stream for one key (e.g. a taxon) derived from the run seed, so results do
// not depend on processing order.
Rng keyed_rng(std::uint64_t seed, std::uint64_t key_hash);

// Uniform in [0, bound) by rejection; bound > 0.
std::uint64_t bounded(Rng& rng, std::uint64_t bound);

template <typename T>
void deterministic_shuffle(std::vector<T>& items, Rng& rng) {
    for (size_t i = items.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(bounded(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

// Uniform k-subset, order not preserved.
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> items, size_t k, Rng& rng) {
    if (k >= items.size()) return items;
    // partial Fisher-Yates: first k slots end up a uniform sample
    for (size_t i = 0; i < k; ++i) {
        size_t j = i + static_cast<size_t>(bounded(rng, items.size() - i));
        std::swap(items[i], items[j]);
    }
    items.resize(k);
    return items;
}

}  // namespace flora
