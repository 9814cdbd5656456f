#include <aprgauntlet/context/retrieve.hpp>

#include <aprgauntlet/context/fuzzy.hpp>
#include <aprgauntlet/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <map>

namespace aprgauntlet::context {

using ordered_json = nlohmann::ordered_json;

Seed Seed::from_text(std::string text) {
    Seed s;
    s.ref = text;
    s.text = std::move(text);
    return s;
}

Seed Seed::from_commit(const CommitRecord& commit) {
    Seed s;
    s.ref = commit.commit_id;
    s.text = commit.combined_text();
    s.commit = &commit;
    return s;
}

std::string ContextBundle::to_json() const {
    ordered_json j;
    j["seed_ref"] = seed_ref;
    j["token_budget"] = token_budget;
    j["entries"] = ordered_json::array();
    for (const auto& e : entries) {
        j["entries"].push_back({{"ref_id", e.ref_id},
                                {"rank", e.score.combined_rank},
                                {"fuzzy_ratio", e.score.fuzzy_ratio},
                                {"lsh_estimate", e.score.lsh_estimate},
                                {"excerpt", e.excerpt}});
    }
    if (sanitized_diff.has_value()) {
        ordered_json sd;
        sd["retained"] = sanitized_diff->retained.to_text();
        sd["removed"] = ordered_json::array();
        for (const auto& [path, reason] : sanitized_diff->removed) {
            sd["removed"].push_back({{"path", path}, {"reason", std::string(to_string(reason))}});
        }
        j["sanitized_diff"] = std::move(sd);
    } else {
        j["sanitized_diff"] = nullptr;
    }
    return j.dump(2) + "\n";
}

ContextBundle retrieve_context(const RepoSnapshot& snapshot, const LshIndex& index,
                               const Seed& seed, std::size_t k, const RetrieveOptions& options) {
    if (k == 0) throw Error(ErrorKind::invalid_parameter, "k must be >= 1");

    ContextBundle bundle;
    bundle.seed_ref = seed.ref;
    bundle.token_budget = options.token_budget;
    if (seed.commit != nullptr) {
        bundle.sanitized_diff = sanitize_diff(seed.commit->diff, {}, options.rules);
    }
    if (snapshot.empty()) return bundle;

    const auto docs = snapshot.indexables();
    std::map<std::string, const std::string*> text_by_id;
    for (const auto& d : docs) text_by_id.emplace(d.id, &d.text);

    const LshParams& params = index.params();
    const MinHashSignature probe =
        minhash_of_text(seed.text, params.num_perm, params.shingle_k, params.seed);

    // Fuzzy scores for the whole corpus; the top k seed the candidate set
    // alongside LSH collisions.
    std::map<std::string, double> fuzzy;
    for (const auto& d : docs) fuzzy.emplace(d.id, fuzzy_ratio(seed.text, d.text));

    std::vector<std::string> by_fuzzy;
    by_fuzzy.reserve(docs.size());
    for (const auto& [id, score] : fuzzy) by_fuzzy.push_back(id);
    std::stable_sort(by_fuzzy.begin(), by_fuzzy.end(), [&](const auto& a, const auto& b) {
        if (fuzzy.at(a) != fuzzy.at(b)) return fuzzy.at(a) > fuzzy.at(b);
        return a < b;
    });

    std::set<std::string> candidates = index.query(probe);
    for (std::size_t i = 0; i < by_fuzzy.size() && i < k; ++i) candidates.insert(by_fuzzy[i]);

    std::vector<MatchScore> scored;
    scored.reserve(candidates.size());
    for (const auto& id : candidates) {
        const MinHashSignature* sig = index.signature(id);
        if (sig == nullptr || text_by_id.count(id) == 0) continue;
        MatchScore ms;
        ms.doc_id = id;
        ms.lsh_estimate = estimate_jaccard(*sig, probe);
        ms.fuzzy_ratio = fuzzy.at(id);
        scored.push_back(std::move(ms));
    }
    std::sort(scored.begin(), scored.end(), [](const MatchScore& a, const MatchScore& b) {
        if (a.fuzzy_ratio != b.fuzzy_ratio) return a.fuzzy_ratio > b.fuzzy_ratio;
        if (a.lsh_estimate != b.lsh_estimate) return a.lsh_estimate > b.lsh_estimate;
        return a.doc_id < b.doc_id;
    });
    if (scored.size() > k) scored.resize(k);

    std::size_t remaining = options.token_budget;
    for (std::size_t i = 0; i < scored.size(); ++i) {
        if (remaining == 0) break;
        scored[i].combined_rank = bundle.entries.size() + 1;
        BundleEntry entry;
        entry.ref_id = scored[i].doc_id;
        const std::string& text = *text_by_id.at(scored[i].doc_id);
        entry.excerpt = text.substr(0, std::min(remaining, text.size()));
        remaining -= entry.excerpt.size();
        entry.score = scored[i];
        bundle.entries.push_back(std::move(entry));
    }
    return bundle;
}

}  // namespace aprgauntlet::context
