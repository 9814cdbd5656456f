#include <aprgauntlet/campaign/run.hpp>

#include <aprgauntlet/error.hpp>
#include <aprgauntlet/forge/builtin_templates.hpp>

#include <map>

namespace aprgauntlet::campaign {

namespace {

// Standard bindings offered to attack templates. Only the placeholders a
// template actually declares are required; the rest are ignored.
std::map<std::string, std::string> standard_bindings(const context::ContextBundle& bundle,
                                                     const std::string& seed_ref,
                                                     const std::string& project) {
    std::string excerpts;
    for (const auto& e : bundle.entries) {
        excerpts += "--- " + e.ref_id + " ---\n";
        excerpts += e.excerpt;
        if (excerpts.empty() || excerpts.back() != '\n') excerpts.push_back('\n');
    }
    std::string sanitized;
    if (bundle.sanitized_diff.has_value()) {
        sanitized = bundle.sanitized_diff->retained.to_text();
    }
    return {
        {"_fcommit", sanitized.empty() ? excerpts : sanitized},
        {"context", excerpts},
        {"task", seed_ref},
        {"seed", seed_ref},
        {"project", project},
    };
}

void screen_into_record(IssueRecord& record, const std::vector<defense::FilterConfig>& suite,
                        gateway::Gateway& gw) {
    for (const auto& fc : suite) {
        defense::FilterResult result = defense::screen_issue(record.issue, fc, gw);
        record.usage.push_back({"screen", fc.filter_id, result.usage});
        record.pre_results.push_back(std::move(result));
    }
    record.pre_ensemble = defense::combine_pre_ensemble(record.pre_results);
}

}  // namespace

CampaignOutcome run_campaign(const CampaignConfig& config,
                             const context::RepoSnapshot& snapshot,
                             const context::LshIndex& index, gateway::Gateway& gw,
                             const RunHooks& hooks) {
    config.validate();

    CampaignOutcome outcome;
    outcome.ledger = CampaignLedger(config.digest(), "1");

    std::size_t sequence = 0;
    for (const auto& entry : config.attack_plan) {
        const forge::PromptTemplate tmpl = forge::resolve_template(entry.template_spec);
        const forge::AttackKind kind = forge::AttackKind::of(entry.kind);

        for (const auto& seed_ref : entry.seeds) {
            for (int ordinal = 0; ordinal < entry.count; ++ordinal, ++sequence) {
                const std::string plan_ref = std::string(to_string(entry.kind)) + "/" + seed_ref +
                                             "#" + std::to_string(ordinal);
                try {
                    context::Seed seed;
                    if (seed_ref.starts_with("commit:")) {
                        const context::CommitRecord* commit =
                            snapshot.find_commit(seed_ref.substr(7));
                        if (commit == nullptr) {
                            throw Error(ErrorKind::invalid_input,
                                        "seed '" + seed_ref + "' not in snapshot");
                        }
                        seed = context::Seed::from_commit(*commit);
                    } else {
                        seed = context::Seed::from_text(seed_ref);
                    }

                    context::RetrieveOptions ropts;
                    ropts.token_budget = config.retrieval.token_budget;
                    context::ContextBundle bundle =
                        context::retrieve_context(snapshot, index, seed, config.retrieval.k, ropts);

                    forge::RenderedPrompt prompt = forge::render_prompt(
                        tmpl, standard_bindings(bundle, seed_ref, snapshot.root_path));

                    forge::GenerateOptions gopts;
                    // The sequence number salts the issue id so repeated
                    // seeds with an echoing backend stay distinct.
                    gopts.seed_ref = seed_ref + "#" + std::to_string(sequence);
                    gopts.created_at = config.created_at;
                    forge::GeneratedIssue generated =
                        forge::generate_issue(prompt, kind, config.generator, gw, gopts);
                    generated.issue.seed_ref = seed_ref;

                    IssueRecord record;
                    record.issue = std::move(generated.issue);
                    record.usage.push_back({"forge", "", generated.usage});
                    screen_into_record(record, config.filter_suite, gw);

                    outcome.ledger.append(record);
                    if (hooks.on_record) hooks.on_record(outcome.ledger.records().back());
                } catch (const Error& e) {
                    outcome.failures.push_back({plan_ref, "forge", e.what()});
                }
            }
        }
    }
    return outcome;
}

CampaignOutcome screen_issues(const std::vector<forge::AdversarialIssue>& issues,
                              const std::vector<defense::FilterConfig>& suite,
                              gateway::Gateway& gw, const std::string& config_digest,
                              const RunHooks& hooks) {
    for (const auto& fc : suite) fc.validate();

    CampaignOutcome outcome;
    outcome.ledger = CampaignLedger(config_digest, "1");
    for (const auto& issue : issues) {
        IssueRecord record;
        record.issue = issue;
        screen_into_record(record, suite, gw);
        outcome.ledger.append(record);
        if (hooks.on_record) hooks.on_record(outcome.ledger.records().back());
    }
    return outcome;
}

}  // namespace aprgauntlet::campaign
