#pragma once

#include <aprgauntlet/defense/screen.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aprgauntlet::defense {

struct PreEnsembleResult {
    std::string issue_id;
    std::vector<std::string> member_filter_ids;
    bool flagged = false;
    std::vector<std::string> flagging_filters;
};

/// Logical OR over the non-error members. All results must refer to one
/// issue (Error{invalid_input} otherwise); undetermined members never
/// contribute to the OR.
PreEnsembleResult combine_pre_ensemble(std::span<const FilterResult> results);

struct FalsePositiveSummary {
    std::size_t n = 0;              // non-error results evaluated
    std::size_t flagged_count = 0;
    std::size_t error_count = 0;    // excluded from numerator and denominator
    std::size_t denominator = 0;    // n, unless explicitly overridden
    bool denominator_overridden = false;
    double fp_rate = 0.0;           // flagged_count / denominator
};

/// False-positive rate of one filter over a benign corpus. Errors are
/// excluded from both sides and reported separately. The denominator
/// override supports corpora whose nominal size is contested (for
/// example an issue range with a deleted entry); reports must state
/// which denominator was used. A zero denominator is an
/// Error{undefined_rate}.
FalsePositiveSummary evaluate_false_positives(
    std::span<const FilterResult> results,
    std::optional<std::size_t> denominator_override = std::nullopt);

}  // namespace aprgauntlet::defense
