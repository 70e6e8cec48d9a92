#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace flora {

// MurmurHash3 x64 128-bit, seed 0; lowercase hex digest (32 chars).
std::string stable_hash128_hex(std::string_view data);

// FNV-1a 64-bit, for deriving per-key RNG streams.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace flora
