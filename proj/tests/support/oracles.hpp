// Independent oracles used by the test and acceptance suites. Everything
// here is deliberately naive (quadratic DP, exhaustive scans) and shares
// no code with the implementation paths it checks.
#pragma once

#include <aprgauntlet/context/lsh_index.hpp>

#include <algorithm>
#include <cstring>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Textbook O(nm) LCS table.
inline std::size_t dp_lcs(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0);
    std::vector<std::size_t> curr(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            curr[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], curr[j - 1]);
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

inline std::size_t dp_indel_distance(const std::string& a, const std::string& b) {
    return a.size() + b.size() - 2 * dp_lcs(a, b);
}

inline double dp_fuzzy_ratio(const std::string& a, const std::string& b) {
    if (a.empty() && b.empty()) return 100.0;
    return 100.0 * (1.0 - static_cast<double>(dp_indel_distance(a, b)) /
                              static_cast<double>(a.size() + b.size()));
}

inline double exact_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t inter = 0;
    for (const auto& x : a) inter += b.count(x);
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

// Band-collision oracle: compares raw signature slices, no hashing, no
// buckets.
inline std::set<std::string> brute_force_band_collisions(
    const aprgauntlet::context::LshIndex& index,
    const aprgauntlet::context::MinHashSignature& probe) {
    const auto& params = index.params();
    std::set<std::string> out;
    for (const auto& [doc_id, sig] : index.signatures()) {
        for (std::uint32_t band = 0; band < params.bands; ++band) {
            const std::size_t offset = static_cast<std::size_t>(band) * params.rows_per_band;
            if (std::equal(sig.values.begin() + offset,
                           sig.values.begin() + offset + params.rows_per_band,
                           probe.values.begin() + offset)) {
                out.insert(doc_id);
                break;
            }
        }
    }
    return out;
}

inline std::string random_string(std::mt19937_64& rng, std::size_t max_len,
                                 std::string_view alphabet = "abcdefgh \n") {
    std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
    std::uniform_int_distribution<std::size_t> ch_dist(0, alphabet.size() - 1);
    std::string out;
    const std::size_t len = len_dist(rng);
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) out.push_back(alphabet[ch_dist(rng)]);
    return out;
}

inline std::set<std::string> random_token_set(std::mt19937_64& rng, std::size_t count,
                                              std::uint64_t space) {
    std::uniform_int_distribution<std::uint64_t> dist(0, space - 1);
    std::set<std::string> out;
    while (out.size() < count) out.insert("tok" + std::to_string(dist(rng)));
    return out;
}

}  // namespace oracle
