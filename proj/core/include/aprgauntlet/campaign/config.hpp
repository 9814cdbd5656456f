#pragma once

#include <aprgauntlet/defense/screen.hpp>
#include <aprgauntlet/forge/attack_kind.hpp>
#include <aprgauntlet/gateway/cost.hpp>
#include <aprgauntlet/gateway/model.hpp>

#include <optional>
#include <string>
#include <vector>

namespace aprgauntlet::campaign {

enum class CombinedStrategy { pre_ensemble_plus_post, pre_best_plus_post };

std::string_view to_string(CombinedStrategy s);
CombinedStrategy combined_strategy_from_string(std::string_view s);

struct AttackPlanEntry {
    forge::AttackVariant kind = forge::AttackVariant::naive_apr;
    std::vector<std::string> seeds;  // "commit:<id>" or free text
    std::string template_spec;       // "builtin:<name>" or a file path
    int count = 1;                   // issues per seed
};

struct RetrievalSettings {
    std::size_t k = 5;
    std::size_t token_budget = 12000;
};

struct CampaignConfig {
    std::string name;
    std::string created_at = "1970-01-01T00:00:00Z";
    std::vector<AttackPlanEntry> attack_plan;
    std::vector<defense::FilterConfig> filter_suite;
    gateway::PriceTable prices;
    std::vector<CombinedStrategy> combined_strategies;
    std::optional<std::string> best_pre_filter_id;
    gateway::ModelSpec generator;
    RetrievalSettings retrieval;
    std::string source_text;  // raw config bytes; feeds the config digest

    std::string digest() const;

    /// Full validation: templates resolvable, filters well-formed, unique
    /// ids, strategy/best-filter consistency, plan counts positive.
    /// Throws Error{configuration}.
    void validate() const;
};

CampaignConfig load_campaign_config(const std::string& toml_text);
CampaignConfig load_campaign_config_file(const std::string& path);

/// Parses just the [[filter]] blocks and [prices]; used by `screen` when
/// no full campaign is defined.
std::vector<defense::FilterConfig> parse_filter_suite(const std::string& toml_text);

}  // namespace aprgauntlet::campaign
