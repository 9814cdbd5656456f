#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace aprgauntlet::context {

/// Set of character k-grams over whitespace-normalized text (runs of
/// whitespace collapse to a single space, leading/trailing runs included).
/// Inputs shorter than k yield the whole normalized text as a single
/// shingle if non-empty. k == 0 is an invalid-parameter error.
std::set<std::string> shingle(std::string_view text, std::size_t k);

/// MinHash signature: per-permutation minima of 64-bit shingle hashes.
/// Signatures are comparable only when (num_perm, shingle_k, seed) agree.
/// The empty-set signature is the sentinel with every value at the maximum
/// hash.
struct MinHashSignature {
    std::vector<std::uint64_t> values;
    std::uint32_t num_perm = 0;
    std::uint32_t shingle_k = 0;
    std::uint64_t seed = 0;

    bool compatible_with(const MinHashSignature& other) const {
        return num_perm == other.num_perm && shingle_k == other.shingle_k && seed == other.seed;
    }

    bool operator==(const MinHashSignature&) const = default;
};

MinHashSignature minhash_signature(const std::set<std::string>& shingles, std::uint32_t num_perm,
                                   std::uint32_t shingle_k, std::uint64_t seed);

/// Convenience: shingles the text and signs it in one step.
MinHashSignature minhash_of_text(std::string_view text, std::uint32_t num_perm,
                                 std::uint32_t shingle_k, std::uint64_t seed);

/// Fraction of matching positions; unbiased Jaccard estimate. Throws
/// Error{incompatible_signature} when parameters disagree.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

}  // namespace aprgauntlet::context
