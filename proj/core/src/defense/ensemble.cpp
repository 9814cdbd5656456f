#include <aprgauntlet/defense/ensemble.hpp>

#include <aprgauntlet/error.hpp>

namespace aprgauntlet::defense {

PreEnsembleResult combine_pre_ensemble(std::span<const FilterResult> results) {
    PreEnsembleResult out;
    for (const auto& r : results) {
        if (out.issue_id.empty()) {
            out.issue_id = r.issue_id;
        } else if (r.issue_id != out.issue_id) {
            throw Error(ErrorKind::invalid_input, "ensemble mixes issues '" + out.issue_id +
                                                      "' and '" + r.issue_id + "'");
        }
        out.member_filter_ids.push_back(r.filter_id);
        if (r.flagged_true()) out.flagging_filters.push_back(r.filter_id);
    }
    out.flagged = !out.flagging_filters.empty();
    return out;
}

FalsePositiveSummary evaluate_false_positives(std::span<const FilterResult> results,
                                              std::optional<std::size_t> denominator_override) {
    FalsePositiveSummary summary;
    for (const auto& r : results) {
        if (r.error.has_value()) {
            ++summary.error_count;
            continue;
        }
        ++summary.n;
        if (r.flagged_true()) ++summary.flagged_count;
    }
    summary.denominator = denominator_override.value_or(summary.n);
    summary.denominator_overridden = denominator_override.has_value();
    if (summary.denominator == 0) {
        throw Error(ErrorKind::undefined_rate, "benign corpus has no evaluable results");
    }
    summary.fp_rate =
        static_cast<double>(summary.flagged_count) / static_cast<double>(summary.denominator);
    return summary;
}

}  // namespace aprgauntlet::defense
