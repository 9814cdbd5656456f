#pragma once

#include <aprgauntlet/context/minhash.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace aprgauntlet::context {

struct LshParams {
    std::uint32_t num_perm = 128;
    std::uint32_t bands = 16;
    std::uint32_t rows_per_band = 8;
    std::uint32_t shingle_k = 5;
    std::uint64_t seed = 42;

    /// Throws Error{configuration} unless bands * rows_per_band == num_perm.
    void validate() const;

    bool operator==(const LshParams&) const = default;
};

struct IndexableText {
    std::string id;
    std::string text;
};

/// Banded MinHash index. Built once over a corpus, then immutable; queries
/// return every document sharing at least one band bucket with the probe.
/// Bucket keys are the raw band rows, so equal keys mean equal row slices.
class LshIndex {
public:
    static LshIndex build(const std::vector<IndexableText>& documents, const LshParams& params);

    const LshParams& params() const { return params_; }
    std::size_t size() const { return signatures_.size(); }

    const MinHashSignature* signature(const std::string& doc_id) const;
    const std::map<std::string, MinHashSignature>& signatures() const { return signatures_; }

    /// Union of bucket members over all bands. Probe parameters must match
    /// the index parameters (Error{incompatible_signature} otherwise).
    std::set<std::string> query(const MinHashSignature& probe) const;

private:
    LshParams params_;
    std::map<std::string, MinHashSignature> signatures_;
    // One bucket map per band; key is the band's rows serialized as bytes.
    std::vector<std::map<std::string, std::set<std::string>>> buckets_;

    std::string band_key(const MinHashSignature& sig, std::uint32_t band) const;
};

}  // namespace aprgauntlet::context
