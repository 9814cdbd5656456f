#pragma once

#include <aprgauntlet/context/lsh_index.hpp>
#include <aprgauntlet/context/sanitize.hpp>
#include <aprgauntlet/context/snapshot.hpp>

#include <optional>
#include <string>
#include <vector>

namespace aprgauntlet::context {

struct MatchScore {
    std::string doc_id;
    double lsh_estimate = 0.0;   // estimated Jaccard in [0, 1]
    double fuzzy_ratio = 0.0;    // indel similarity in [0, 100]
    std::size_t combined_rank = 0;

    bool operator==(const MatchScore&) const = default;
};

struct BundleEntry {
    std::string ref_id;  // doc_id or commit indexable id
    std::string excerpt;
    MatchScore score;

    bool operator==(const BundleEntry&) const = default;
};

/// Ranked repository excerpts for a seed, ready for prompt embedding.
/// Entries are ordered by combined_rank; total excerpt length never
/// exceeds token_budget characters.
struct ContextBundle {
    std::string seed_ref;
    std::vector<BundleEntry> entries;
    std::size_t token_budget = 0;
    std::optional<SanitizedDiff> sanitized_diff;

    std::string to_json() const;

    bool operator==(const ContextBundle&) const = default;
};

/// Retrieval seed: free text, or a commit whose message + diff is the
/// match text and whose diff feeds the bundle's sanitized_diff.
struct Seed {
    std::string ref;
    std::string text;
    const CommitRecord* commit = nullptr;

    static Seed from_text(std::string text);
    static Seed from_commit(const CommitRecord& commit);
};

struct RetrieveOptions {
    std::size_t token_budget = 12000;
    ClassifyRules rules;
};

/// Candidates come from LSH band collisions plus the top-k exhaustive
/// fuzzy matches; they are re-ranked by fuzzy ratio (desc), LSH estimate
/// (desc), then id. Deterministic for fixed inputs. An empty snapshot
/// yields an empty bundle.
ContextBundle retrieve_context(const RepoSnapshot& snapshot, const LshIndex& index,
                               const Seed& seed, std::size_t k,
                               const RetrieveOptions& options = {});

}  // namespace aprgauntlet::context
