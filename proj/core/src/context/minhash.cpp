#include <aprgauntlet/context/minhash.hpp>

#include <aprgauntlet/digest.hpp>
#include <aprgauntlet/error.hpp>

#include <cctype>
#include <limits>

namespace aprgauntlet::context {

namespace {

std::string normalize_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_ws = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_ws = true;
            continue;
        }
        if (in_ws && !out.empty()) out.push_back(' ');
        if (in_ws && out.empty()) out.push_back(' ');
        in_ws = false;
        out.push_back(c);
    }
    if (in_ws) out.push_back(' ');
    return out;
}

}  // namespace

std::set<std::string> shingle(std::string_view text, std::size_t k) {
    if (k == 0) throw Error(ErrorKind::invalid_parameter, "shingle length k must be >= 1");
    std::set<std::string> out;
    std::string norm = normalize_whitespace(text);
    if (norm.empty()) return out;
    if (norm.size() < k) {
        out.insert(norm);
        return out;
    }
    for (std::size_t i = 0; i + k <= norm.size(); ++i) {
        out.insert(norm.substr(i, k));
    }
    return out;
}

MinHashSignature minhash_signature(const std::set<std::string>& shingles, std::uint32_t num_perm,
                                   std::uint32_t shingle_k, std::uint64_t seed) {
    if (num_perm == 0) throw Error(ErrorKind::invalid_parameter, "num_perm must be >= 1");
    MinHashSignature sig;
    sig.num_perm = num_perm;
    sig.shingle_k = shingle_k;
    sig.seed = seed;
    sig.values.assign(num_perm, std::numeric_limits<std::uint64_t>::max());

    // Permutation i hashes each shingle's base hash with a per-(seed, i)
    // key; taking the minimum per permutation simulates min-wise
    // independent permutations.
    std::vector<std::uint64_t> keys(num_perm);
    for (std::uint32_t i = 0; i < num_perm; ++i) {
        keys[i] = mix64(seed + 0x9e3779b97f4a7c15ull * (i + 1));
    }
    for (const auto& sh : shingles) {
        std::uint64_t base = fnv1a64(sh);
        for (std::uint32_t i = 0; i < num_perm; ++i) {
            std::uint64_t h = mix64(base ^ keys[i]);
            if (h < sig.values[i]) sig.values[i] = h;
        }
    }
    return sig;
}

MinHashSignature minhash_of_text(std::string_view text, std::uint32_t num_perm,
                                 std::uint32_t shingle_k, std::uint64_t seed) {
    return minhash_signature(shingle(text, shingle_k), num_perm, shingle_k, seed);
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
    if (!a.compatible_with(b)) {
        throw Error(ErrorKind::incompatible_signature,
                    "signatures built with different (num_perm, shingle_k, seed)");
    }
    std::size_t matches = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.values[i] == b.values[i]) ++matches;
    }
    return static_cast<double>(matches) / static_cast<double>(a.num_perm);
}

}  // namespace aprgauntlet::context
