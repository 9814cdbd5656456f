#pragma once

#include <aprgauntlet/defense/verdict.hpp>
#include <aprgauntlet/forge/issue.hpp>
#include <aprgauntlet/gateway/gateway.hpp>

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace aprgauntlet::defense {

enum class FilterKind { custom_prompt, injection_guard, content_guard };

std::string_view to_string(FilterKind kind);
FilterKind filter_kind_from_string(std::string_view s);

struct GuardThresholds {
    double problematic_above = 0.8;
    double suspicious_above = 0.5;
};

struct FilterConfig {
    std::string filter_id;
    FilterKind kind = FilterKind::custom_prompt;
    gateway::ModelSpec model;
    gateway::OutputMode output_mode = gateway::OutputMode::unstructured_text;
    /// Verdicts counted as flagged; must be a non-empty subset of
    /// {suspicious, problematic}.
    std::set<VerdictValue> flag_policy = {VerdictValue::suspicious, VerdictValue::problematic};
    GuardThresholds thresholds;

    void validate() const;
};

/// Screening outcome for one (filter, issue) pair. `flagged` is empty
/// ("undetermined") exactly when `error` is set; undetermined results are
/// excluded from ensemble ORs.
struct FilterResult {
    std::string filter_id;
    std::string issue_id;
    std::optional<Verdict> verdict;
    std::optional<bool> flagged;
    std::string raw_response_digest;
    gateway::UsageRecord usage;
    std::optional<std::string> error;

    bool flagged_true() const { return flagged.has_value() && *flagged; }
};

/// Runs one filter over one issue. custom_prompt filters use the shipped
/// screening prompt and the parser matching output_mode; guard filters
/// send the raw issue body to their model and map its answer onto a
/// verdict (content guards: safe/unsafe words; injection guards: a score
/// in [0,1] against the configured thresholds). Gateway and parse
/// failures land in FilterResult::error instead of propagating, so a
/// batch never aborts.
FilterResult screen_issue(const forge::AdversarialIssue& issue, const FilterConfig& config,
                          gateway::Gateway& gw);

/// One-line JSON rendering for streaming result files (one FilterResult
/// per line). Undetermined results serialize flagged as "undetermined".
std::string to_jsonl(const FilterResult& result);
FilterResult filter_result_from_jsonl(std::string_view line);

}  // namespace aprgauntlet::defense
