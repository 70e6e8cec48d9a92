#include "flora/rng.hpp"

namespace flora {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng keyed_rng(std::uint64_t seed, std::uint64_t key_hash) {
    std::uint64_t state = seed ^ key_hash;
    // mix so adjacent seeds do not give correlated streams
    std::uint64_t mixed = splitmix64(state);
    return Rng(mixed);
}

std::uint64_t bounded(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t value;
    do {
        value = rng();
    } while (value >= limit);
    return value % bound;
}

}  // namespace flora
