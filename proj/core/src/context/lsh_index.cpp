#include <aprgauntlet/context/lsh_index.hpp>

#include <aprgauntlet/error.hpp>

#include <cstring>

namespace aprgauntlet::context {

void LshParams::validate() const {
    if (num_perm == 0 || bands == 0 || rows_per_band == 0) {
        throw Error(ErrorKind::configuration, "LSH parameters must be positive");
    }
    if (static_cast<std::uint64_t>(bands) * rows_per_band != num_perm) {
        throw Error(ErrorKind::configuration,
                    "bands x rows_per_band (" + std::to_string(bands) + " x " +
                        std::to_string(rows_per_band) + ") != num_perm (" +
                        std::to_string(num_perm) + ")");
    }
}

std::string LshIndex::band_key(const MinHashSignature& sig, std::uint32_t band) const {
    std::string key(params_.rows_per_band * sizeof(std::uint64_t), '\0');
    std::memcpy(key.data(), sig.values.data() + band * params_.rows_per_band,
                params_.rows_per_band * sizeof(std::uint64_t));
    return key;
}

LshIndex LshIndex::build(const std::vector<IndexableText>& documents, const LshParams& params) {
    params.validate();
    LshIndex index;
    index.params_ = params;
    index.buckets_.resize(params.bands);
    for (const auto& doc : documents) {
        if (index.signatures_.count(doc.id) != 0) {
            throw Error(ErrorKind::invalid_input, "duplicate document id '" + doc.id + "'");
        }
        MinHashSignature sig =
            minhash_of_text(doc.text, params.num_perm, params.shingle_k, params.seed);
        for (std::uint32_t b = 0; b < params.bands; ++b) {
            index.buckets_[b][index.band_key(sig, b)].insert(doc.id);
        }
        index.signatures_.emplace(doc.id, std::move(sig));
    }
    return index;
}

const MinHashSignature* LshIndex::signature(const std::string& doc_id) const {
    auto it = signatures_.find(doc_id);
    return it == signatures_.end() ? nullptr : &it->second;
}

std::set<std::string> LshIndex::query(const MinHashSignature& probe) const {
    if (probe.num_perm != params_.num_perm || probe.shingle_k != params_.shingle_k ||
        probe.seed != params_.seed) {
        throw Error(ErrorKind::incompatible_signature,
                    "probe signature parameters do not match the index");
    }
    std::set<std::string> out;
    for (std::uint32_t b = 0; b < params_.bands; ++b) {
        auto it = buckets_[b].find(band_key(probe, b));
        if (it != buckets_[b].end()) {
            out.insert(it->second.begin(), it->second.end());
        }
    }
    return out;
}

}  // namespace aprgauntlet::context
