#pragma once

#include <aprgauntlet/campaign/table.hpp>
#include <aprgauntlet/defense/ensemble.hpp>
#include <aprgauntlet/gateway/cost.hpp>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace aprgauntlet::campaign {

/// Cost roll-up over a ledger's usage entries: per screen filter, per
/// stage, and overall. Stage totals reconcile exactly with the overall
/// total.
struct CostSummary {
    std::map<std::string, gateway::UsageAggregate> per_filter;
    std::map<std::string, gateway::UsageAggregate> per_stage;
    gateway::UsageAggregate overall;
};

/// Throws Error{missing_price} naming the first unpriced model.
CostSummary aggregate_costs(const CampaignLedger& ledger, const gateway::PriceTable& prices);

/// Exact percentage rendering: numerator/denominator evaluated by integer
/// long division, rounded half up at `decimals` places. No floating point.
std::string format_percent(long numerator, long denominator, int decimals);

enum class ReportFormat { markdown, csv };

struct ReportMeta {
    std::string flag_policy_note =
        "flagged := verdict in {suspicious, problematic}";
    std::string denominator_note =
        "false-positive denominators use evaluable (non-error) results unless overridden";
    std::vector<std::pair<std::string, defense::FalsePositiveSummary>> fp_summaries;
};

/// Markdown report: detection table, derived rates for the Total row,
/// optional cost and false-positive sections, and footnotes stating the
/// flag policy and denominator decisions.
std::string emit_report_markdown(const DetectionTable& table, const CostSummary* costs,
                                 const ReportMeta& meta);

/// CSV rendering of the table alone; parse_detection_table_csv inverts it
/// exactly.
std::string emit_report_csv(const DetectionTable& table);

DetectionTable parse_detection_table_csv(std::string_view csv_text);

std::string emit_report(const DetectionTable& table, const CostSummary* costs,
                        const ReportMeta& meta, ReportFormat format);

}  // namespace aprgauntlet::campaign
