#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace aprgauntlet {

/// SHA-256 of `data`, lowercase hex. Used for provenance digests, mock
/// request keys and ledger config digests.
std::string sha256_hex(std::string_view data);

/// Short (16 hex chars) prefix of sha256_hex; enough for human-facing ids.
std::string short_digest(std::string_view data);

/// FNV-1a 64-bit. Fast non-cryptographic hash for shingles and bucket keys.
constexpr std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// splitmix64 finalizer; bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace aprgauntlet
