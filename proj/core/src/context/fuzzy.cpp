#include <aprgauntlet/context/fuzzy.hpp>

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace aprgauntlet::context {

namespace {

// Single-word Hyyro bit-parallel LCS for |a| <= 64. S starts all-ones;
// after consuming b, the zero bits of S mark LCS contributions.
std::size_t lcs_word(std::string_view a, std::string_view b) {
    std::array<std::uint64_t, 256> masks{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        masks[static_cast<unsigned char>(a[i])] |= 1ull << i;
    }
    std::uint64_t s = ~0ull;
    for (unsigned char c : b) {
        std::uint64_t m = masks[c];
        std::uint64_t u = s & m;
        s = (s + u) | (s & ~m);
    }
    return static_cast<std::size_t>(std::popcount(~s));
}

// Blocked variant for longer strings. Subtraction never borrows across
// words because u is a submask of s (s - u == s & ~u); only the addition
// carries.
std::size_t lcs_blocked(std::string_view a, std::string_view b) {
    const std::size_t words = (a.size() + 63) / 64;
    std::vector<std::array<std::uint64_t, 256>> masks(words);
    for (std::size_t i = 0; i < a.size(); ++i) {
        masks[i / 64][static_cast<unsigned char>(a[i])] |= 1ull << (i % 64);
    }
    std::vector<std::uint64_t> s(words, ~0ull);
    for (unsigned char c : b) {
        std::uint64_t carry = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t m = masks[w][c];
            std::uint64_t u = s[w] & m;
            std::uint64_t sum = s[w] + u;
            std::uint64_t carry_out = sum < s[w] ? 1u : 0u;
            sum += carry;
            if (sum < carry) carry_out = 1;
            carry = carry_out;
            s[w] = sum | (s[w] & ~m);
        }
    }
    std::size_t zeros = 0;
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t relevant = ~s[w];
        if (w == words - 1 && a.size() % 64 != 0) {
            relevant &= (1ull << (a.size() % 64)) - 1;
        }
        zeros += static_cast<std::size_t>(std::popcount(relevant));
    }
    return zeros;
}

}  // namespace

std::size_t lcs_length(std::string_view a, std::string_view b) {
    if (a.empty() || b.empty()) return 0;
    if (a.size() > b.size()) std::swap(a, b);
    if (a.size() <= 64) return lcs_word(a, b);
    return lcs_blocked(a, b);
}

std::size_t indel_distance(std::string_view a, std::string_view b) {
    return a.size() + b.size() - 2 * lcs_length(a, b);
}

double fuzzy_ratio(std::string_view a, std::string_view b) {
    const std::size_t total = a.size() + b.size();
    if (total == 0) return 100.0;
    const std::size_t dist = indel_distance(a, b);
    return 100.0 * (1.0 - static_cast<double>(dist) / static_cast<double>(total));
}

}  // namespace aprgauntlet::context
