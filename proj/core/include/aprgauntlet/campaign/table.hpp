#pragma once

#include <aprgauntlet/campaign/config.hpp>
#include <aprgauntlet/campaign/ledger.hpp>

#include <optional>
#include <string>
#include <vector>

namespace aprgauntlet::campaign {

struct DetectionRow {
    std::string label;  // attack display name, or "Total"
    long issues = 0;
    std::vector<long> filter_flags;  // parallel to DetectionTable::filter_ids
    long pre_ensemble = 0;
    long patch_created = 0;
    long compromised = 0;
    long static_findings = 0;
    long comments_general = 0;
    long comments_low_confidence = 0;
    long comments_file_level_security = 0;
    long post_ensemble = 0;
    std::vector<long> combined;  // parallel to DetectionTable::strategies

    bool operator==(const DetectionRow&) const = default;
};

/// Per-attack-kind detection counts plus a Total row that is the exact
/// column-wise sum. Every count is bounded by its row's issue count.
struct DetectionTable {
    std::vector<std::string> filter_ids;  // first-appearance order
    std::vector<std::string> strategies;  // combined-strategy names
    std::vector<DetectionRow> rows;       // kinds present in the ledger
    DetectionRow total;

    bool operator==(const DetectionTable&) const = default;
};

struct TableOptions {
    std::vector<CombinedStrategy> strategies;
    std::optional<std::string> best_pre_filter_id;
};

/// Counts are taken over the ledger's effective records (latest revision
/// per issue). pre_ensemble_plus_post blocks an issue iff its pre-ensemble
/// OR its post-ensemble flagged; pre_best_plus_post uses the configured
/// best filter's own flag instead of the pre-ensemble.
/// Requesting pre_best_plus_post without a best filter id is an
/// Error{configuration}.
DetectionTable compute_detection_table(const CampaignLedger& ledger, const TableOptions& options);

}  // namespace aprgauntlet::campaign
