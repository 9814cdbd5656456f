#pragma once

#include <aprgauntlet/campaign/config.hpp>
#include <aprgauntlet/campaign/ledger.hpp>
#include <aprgauntlet/context/retrieve.hpp>
#include <aprgauntlet/gateway/gateway.hpp>

#include <functional>
#include <string>
#include <vector>

namespace aprgauntlet::campaign {

struct CampaignFailure {
    std::string plan_ref;  // "<kind>/<seed>#<ordinal>"
    std::string stage;     // "retrieve", "forge"
    std::string message;
};

struct CampaignOutcome {
    CampaignLedger ledger;
    std::vector<CampaignFailure> failures;
};

struct RunHooks {
    /// Called after each record is appended; used for streaming persistence.
    std::function<void(const IssueRecord&)> on_record;
};

/// Executes the configured plan: retrieve context for each seed, render
/// the attack template, generate the issue, screen it through the filter
/// suite, combine the pre-ensemble and append the record.
///
/// Config validation errors abort before any generation. Failures of a
/// single issue (retrieval, rendering, generation) are collected in
/// `failures` and the campaign continues; filter failures are recorded in
/// the issue's own FilterResults and never abort anything. Deterministic
/// end to end when the gateway is deterministic.
CampaignOutcome run_campaign(const CampaignConfig& config,
                             const context::RepoSnapshot& snapshot,
                             const context::LshIndex& index, gateway::Gateway& gw,
                             const RunHooks& hooks = {});

/// Screens pre-built issues through a filter suite (the `screen` CLI
/// path: no forging, no retrieval).
CampaignOutcome screen_issues(const std::vector<forge::AdversarialIssue>& issues,
                              const std::vector<defense::FilterConfig>& suite,
                              gateway::Gateway& gw, const std::string& config_digest,
                              const RunHooks& hooks = {});

}  // namespace aprgauntlet::campaign
