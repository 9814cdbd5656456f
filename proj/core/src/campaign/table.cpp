#include <aprgauntlet/campaign/table.hpp>

#include <aprgauntlet/error.hpp>

#include <algorithm>
#include <map>

namespace aprgauntlet::campaign {

namespace {

bool record_filter_flagged(const IssueRecord& rec, const std::string& filter_id) {
    return std::any_of(rec.pre_results.begin(), rec.pre_results.end(),
                       [&](const defense::FilterResult& r) {
                           return r.filter_id == filter_id && r.flagged_true();
                       });
}

bool record_pre_flagged(const IssueRecord& rec) {
    return rec.pre_ensemble.has_value() && rec.pre_ensemble->flagged;
}

bool record_post_flagged(const IssueRecord& rec) {
    return rec.post.has_value() && rec.post->flagged;
}

}  // namespace

DetectionTable compute_detection_table(const CampaignLedger& ledger, const TableOptions& options) {
    for (CombinedStrategy s : options.strategies) {
        if (s == CombinedStrategy::pre_best_plus_post && !options.best_pre_filter_id.has_value()) {
            throw Error(ErrorKind::configuration,
                        "pre_best_plus_post requested without best_pre_filter_id");
        }
    }

    DetectionTable table;
    for (CombinedStrategy s : options.strategies) {
        table.strategies.emplace_back(to_string(s));
    }

    const auto records = ledger.effective_records();

    // Filter columns in first-appearance order.
    for (const IssueRecord* rec : records) {
        for (const auto& r : rec->pre_results) {
            if (std::find(table.filter_ids.begin(), table.filter_ids.end(), r.filter_id) ==
                table.filter_ids.end()) {
                table.filter_ids.push_back(r.filter_id);
            }
        }
    }

    auto blank_row = [&](std::string label) {
        DetectionRow row;
        row.label = std::move(label);
        row.filter_flags.assign(table.filter_ids.size(), 0);
        row.combined.assign(table.strategies.size(), 0);
        return row;
    };

    std::map<forge::AttackVariant, DetectionRow> by_kind;
    table.total = blank_row("Total");

    for (const IssueRecord* rec : records) {
        const forge::AttackVariant kind = rec->issue.attack_kind.variant;
        auto it = by_kind.find(kind);
        if (it == by_kind.end()) {
            it = by_kind.emplace(kind, blank_row(std::string(display_name(kind)))).first;
        }
        DetectionRow& row = it->second;

        row.issues += 1;
        for (std::size_t f = 0; f < table.filter_ids.size(); ++f) {
            if (record_filter_flagged(*rec, table.filter_ids[f])) row.filter_flags[f] += 1;
        }
        const bool pre = record_pre_flagged(*rec);
        const bool post = record_post_flagged(*rec);
        if (pre) row.pre_ensemble += 1;
        if (rec->patch.has_value() && rec->patch->created) row.patch_created += 1;
        if (rec->label.has_value() && rec->label->compromised) row.compromised += 1;
        if (rec->post.has_value()) {
            if (rec->post->static_flag) row.static_findings += 1;
            if (rec->post->comment_general) row.comments_general += 1;
            if (rec->post->comment_low_confidence) row.comments_low_confidence += 1;
            if (rec->post->comment_file_level) row.comments_file_level_security += 1;
        }
        if (post) row.post_ensemble += 1;
        for (std::size_t s = 0; s < options.strategies.size(); ++s) {
            bool blocked = false;
            switch (options.strategies[s]) {
                case CombinedStrategy::pre_ensemble_plus_post:
                    blocked = pre || post;
                    break;
                case CombinedStrategy::pre_best_plus_post:
                    blocked = record_filter_flagged(*rec, *options.best_pre_filter_id) || post;
                    break;
            }
            if (blocked) row.combined[s] += 1;
        }
    }

    // Rows in canonical attack order; the Total row sums column-wise.
    for (forge::AttackVariant kind : forge::kAllAttackVariants) {
        auto it = by_kind.find(kind);
        if (it == by_kind.end()) continue;
        const DetectionRow& row = it->second;
        table.rows.push_back(row);
        table.total.issues += row.issues;
        for (std::size_t f = 0; f < row.filter_flags.size(); ++f) {
            table.total.filter_flags[f] += row.filter_flags[f];
        }
        table.total.pre_ensemble += row.pre_ensemble;
        table.total.patch_created += row.patch_created;
        table.total.compromised += row.compromised;
        table.total.static_findings += row.static_findings;
        table.total.comments_general += row.comments_general;
        table.total.comments_low_confidence += row.comments_low_confidence;
        table.total.comments_file_level_security += row.comments_file_level_security;
        table.total.post_ensemble += row.post_ensemble;
        for (std::size_t s = 0; s < row.combined.size(); ++s) {
            table.total.combined[s] += row.combined[s];
        }
    }
    return table;
}

}  // namespace aprgauntlet::campaign
