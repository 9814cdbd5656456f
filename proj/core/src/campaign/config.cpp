#include <aprgauntlet/campaign/config.hpp>

#include <aprgauntlet/digest.hpp>
#include <aprgauntlet/error.hpp>
#include <aprgauntlet/forge/builtin_templates.hpp>
#include <aprgauntlet/toml.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace aprgauntlet::campaign {

std::string_view to_string(CombinedStrategy s) {
    switch (s) {
        case CombinedStrategy::pre_ensemble_plus_post: return "pre_ensemble_plus_post";
        case CombinedStrategy::pre_best_plus_post: return "pre_best_plus_post";
    }
    return "pre_ensemble_plus_post";
}

CombinedStrategy combined_strategy_from_string(std::string_view s) {
    if (s == "pre_ensemble_plus_post") return CombinedStrategy::pre_ensemble_plus_post;
    if (s == "pre_best_plus_post") return CombinedStrategy::pre_best_plus_post;
    throw Error(ErrorKind::schema, "unknown combined strategy '" + std::string(s) + "'");
}

namespace {

gateway::ModelSpec model_from_toml(const toml::Table& t) {
    gateway::ModelSpec model;
    model.name = toml::require_string(t, "name");
    model.provider = gateway::provider_from_string(
        toml::find(t, "provider") ? toml::find(t, "provider")->as_string() : "mock");
    if (const auto* v = toml::find(t, "endpoint")) model.endpoint = v->as_string();
    if (const auto* v = toml::find(t, "output_mode")) {
        model.output_mode = gateway::output_mode_from_string(v->as_string());
    }
    if (const auto* v = toml::find(t, "temperature")) model.temperature = v->as_float();
    if (const auto* v = toml::find(t, "response_schema")) model.response_schema = v->as_string();
    return model;
}

defense::FilterConfig filter_from_toml(const toml::Table& t) {
    defense::FilterConfig fc;
    fc.filter_id = toml::require_string(t, "id");
    fc.kind = defense::filter_kind_from_string(
        toml::find(t, "kind") ? toml::find(t, "kind")->as_string() : "custom_prompt");
    fc.model = model_from_toml(toml::require(t, "model").as_table());
    if (const auto* v = toml::find(t, "output_mode")) {
        fc.output_mode = gateway::output_mode_from_string(v->as_string());
    } else {
        fc.output_mode = fc.model.output_mode;
    }
    if (const auto* v = toml::find(t, "flag_policy")) {
        fc.flag_policy.clear();
        for (const auto& label : v->as_array()) {
            fc.flag_policy.insert(defense::verdict_value_from_string(label.as_string()));
        }
    }
    if (const auto* v = toml::find(t, "problematic_above")) {
        fc.thresholds.problematic_above = v->as_float();
    }
    if (const auto* v = toml::find(t, "suspicious_above")) {
        fc.thresholds.suspicious_above = v->as_float();
    }
    return fc;
}

Money money_from_toml(const toml::Value& v) {
    return v.is_string() ? Money::parse(v.as_string()) : Money::parse(v.raw_number());
}

}  // namespace

std::string CampaignConfig::digest() const {
    return sha256_hex(source_text);
}

void CampaignConfig::validate() const {
    if (name.empty()) throw Error(ErrorKind::configuration, "campaign needs a name");
    generator.validate();

    std::set<std::string> filter_ids;
    for (const auto& fc : filter_suite) {
        fc.validate();
        if (!filter_ids.insert(fc.filter_id).second) {
            throw Error(ErrorKind::configuration, "duplicate filter id '" + fc.filter_id + "'");
        }
    }
    for (const auto& entry : attack_plan) {
        if (entry.count < 1) {
            throw Error(ErrorKind::configuration, "attack plan count must be >= 1");
        }
        if (entry.seeds.empty()) {
            throw Error(ErrorKind::configuration, "attack plan entry without seeds");
        }
        forge::resolve_template(entry.template_spec);  // throws when unknown/unreadable
    }
    for (CombinedStrategy s : combined_strategies) {
        if (s == CombinedStrategy::pre_best_plus_post && !best_pre_filter_id.has_value()) {
            throw Error(ErrorKind::configuration,
                        "pre_best_plus_post requires best_pre_filter_id");
        }
    }
    if (best_pre_filter_id.has_value() && filter_ids.count(*best_pre_filter_id) == 0) {
        throw Error(ErrorKind::configuration,
                    "best_pre_filter_id '" + *best_pre_filter_id + "' is not in the suite");
    }
}

CampaignConfig load_campaign_config(const std::string& toml_text) {
    const toml::Value root = toml::parse(toml_text);
    const toml::Table& t = root.as_table();

    CampaignConfig config;
    config.source_text = toml_text;
    config.name = toml::require_string(t, "name");
    if (const auto* v = toml::find(t, "created_at")) config.created_at = v->as_string();
    if (const auto* v = toml::find(t, "combined_strategies")) {
        for (const auto& s : v->as_array()) {
            config.combined_strategies.push_back(combined_strategy_from_string(s.as_string()));
        }
    }
    if (const auto* v = toml::find(t, "best_pre_filter_id")) {
        config.best_pre_filter_id = v->as_string();
    }
    if (const auto* v = toml::find(t, "generator")) {
        config.generator = model_from_toml(v->as_table());
    } else {
        config.generator.name = "mock-generator";
        config.generator.provider = gateway::Provider::mock;
    }
    if (const auto* v = toml::find(t, "retrieval")) {
        const toml::Table& r = v->as_table();
        if (const auto* k = toml::find(r, "k")) {
            config.retrieval.k = static_cast<std::size_t>(k->as_integer());
        }
        if (const auto* b = toml::find(r, "token_budget")) {
            config.retrieval.token_budget = static_cast<std::size_t>(b->as_integer());
        }
    }
    if (const auto* v = toml::find(t, "attack")) {
        for (const auto& item : v->as_array()) {
            const toml::Table& a = item.as_table();
            AttackPlanEntry entry;
            entry.kind = forge::attack_variant_from_string(toml::require_string(a, "kind"));
            entry.template_spec = toml::require_string(a, "template");
            if (const auto* seeds = toml::find(a, "seeds")) {
                for (const auto& s : seeds->as_array()) entry.seeds.push_back(s.as_string());
            }
            if (const auto* count = toml::find(a, "count")) {
                entry.count = static_cast<int>(count->as_integer());
            }
            config.attack_plan.push_back(std::move(entry));
        }
    }
    if (const auto* v = toml::find(t, "filter")) {
        for (const auto& item : v->as_array()) {
            config.filter_suite.push_back(filter_from_toml(item.as_table()));
        }
    }
    if (const auto* v = toml::find(t, "prices")) {
        for (const auto& [model_name, price] : v->as_table()) {
            const toml::Table& p = price.as_table();
            gateway::ModelPrice mp;
            mp.input_per_1m = money_from_toml(toml::require(p, "input"));
            mp.output_per_1m = money_from_toml(toml::require(p, "output"));
            config.prices.set(model_name, mp);
        }
    }
    return config;
}

CampaignConfig load_campaign_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_campaign_config(buf.str());
}

std::vector<defense::FilterConfig> parse_filter_suite(const std::string& toml_text) {
    const toml::Value root = toml::parse(toml_text);
    const toml::Table& t = root.as_table();
    std::vector<defense::FilterConfig> suite;
    if (const auto* v = toml::find(t, "filter")) {
        for (const auto& item : v->as_array()) {
            suite.push_back(filter_from_toml(item.as_table()));
        }
    }
    for (const auto& fc : suite) fc.validate();
    return suite;
}

}  // namespace aprgauntlet::campaign
