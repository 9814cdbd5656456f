// aprgauntlet: red-team harness CLI for LLM-based program-repair pipelines.
//
// Subcommands: index, forge, screen, ingest, report, campaign.
// Exit codes: 0 success, 1 validation/configuration error, 2 partial failures.

#include <aprgauntlet/campaign/config.hpp>
#include <aprgauntlet/campaign/ledger.hpp>
#include <aprgauntlet/campaign/report.hpp>
#include <aprgauntlet/campaign/run.hpp>
#include <aprgauntlet/campaign/table.hpp>
#include <aprgauntlet/context/retrieve.hpp>
#include <aprgauntlet/digest.hpp>
#include <aprgauntlet/error.hpp>
#include <aprgauntlet/forge/builtin_templates.hpp>
#include <aprgauntlet/forge/issue.hpp>
#include <aprgauntlet/gateway/gateway.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace fs = std::filesystem;
using namespace aprgauntlet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitPartial = 2;

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
    out << content;
}

// Routes requests to the scripted mock (when forced) or per provider.
class RoutingGateway : public gateway::Gateway {
public:
    RoutingGateway(std::unique_ptr<gateway::MockGateway> forced_mock)
        : forced_mock_(std::move(forced_mock)),
          default_mock_(std::make_unique<gateway::MockGateway>(gateway::MockGateway::echo())) {}

    gateway::Completion complete(const gateway::ChatRequest& request) override {
        if (forced_mock_ != nullptr) return forced_mock_->complete(request);
        if (request.model.provider == gateway::Provider::mock) {
            return default_mock_->complete(request);
        }
        return remote_.complete(request);
    }

private:
    std::unique_ptr<gateway::MockGateway> forced_mock_;
    std::unique_ptr<gateway::MockGateway> default_mock_;
    gateway::RemoteGateway remote_;
};

std::unique_ptr<RoutingGateway> make_gateway(const std::string& mock_script) {
    std::unique_ptr<gateway::MockGateway> forced;
    if (!mock_script.empty()) {
        forced = std::make_unique<gateway::MockGateway>(
            gateway::MockGateway::from_script_file(mock_script));
    }
    return std::make_unique<RoutingGateway>(std::move(forced));
}

struct IndexDir {
    context::RepoSnapshot snapshot;
    context::LshIndex index;
};

context::LshParams params_from_json(const nlohmann::json& j) {
    context::LshParams params;
    params.num_perm = j.value("num_perm", 128u);
    params.bands = j.value("bands", 16u);
    params.rows_per_band = j.value("rows_per_band", 8u);
    params.shingle_k = j.value("shingle_k", 5u);
    params.seed = j.value("seed", 42ull);
    params.validate();
    return params;
}

IndexDir load_index_dir(const std::string& dir) {
    auto snapshot = context::RepoSnapshot::from_json(read_file(dir + "/snapshot.json"));
    auto meta = nlohmann::json::parse(read_file(dir + "/index.json"));
    auto params = params_from_json(meta);
    auto index = context::LshIndex::build(snapshot.indexables(), params);
    return {std::move(snapshot), std::move(index)};
}

int cmd_index(const std::string& repo, const std::string& out_dir, const std::string& commits,
              const context::LshParams& params, std::string timestamp) {
    if (timestamp.empty()) timestamp = utc_now();
    params.validate();
    auto snapshot = context::RepoSnapshot::scan_working_tree(repo, timestamp);
    if (!commits.empty()) {
        snapshot.commits = context::RepoSnapshot::load_commit_log(commits);
    }
    snapshot.validate();
    // Building proves the parameters work against this corpus.
    auto index = context::LshIndex::build(snapshot.indexables(), params);

    fs::create_directories(out_dir);
    write_file(out_dir + "/snapshot.json", snapshot.to_json());
    nlohmann::ordered_json meta;
    meta["num_perm"] = params.num_perm;
    meta["bands"] = params.bands;
    meta["rows_per_band"] = params.rows_per_band;
    meta["shingle_k"] = params.shingle_k;
    meta["seed"] = params.seed;
    meta["documents"] = snapshot.documents.size();
    meta["commits"] = snapshot.commits.size();
    write_file(out_dir + "/index.json", meta.dump(2) + "\n");
    std::cout << "indexed " << snapshot.documents.size() << " documents and "
              << snapshot.commits.size() << " commits into " << out_dir << "\n";
    (void)index;
    return kExitOk;
}

int cmd_forge(const std::string& attack, const std::string& seed_ref,
              const std::string& template_spec, const std::string& out_dir,
              const std::string& index_dir, int count, const std::string& mock_script,
              const std::string& config_path, std::string timestamp) {
    auto kind = forge::AttackKind::of(forge::attack_variant_from_string(attack));
    auto tmpl = forge::resolve_template(template_spec);
    auto gw = make_gateway(mock_script);

    gateway::ModelSpec generator;
    generator.name = "mock-generator";
    generator.provider = gateway::Provider::mock;
    campaign::RetrievalSettings retrieval;
    if (!config_path.empty()) {
        auto config = campaign::load_campaign_config_file(config_path);
        generator = config.generator;
        retrieval = config.retrieval;
        if (timestamp.empty()) timestamp = config.created_at;
    }
    if (timestamp.empty()) timestamp = utc_now();

    context::RepoSnapshot snapshot;
    std::optional<context::LshIndex> index;
    if (!index_dir.empty()) {
        auto loaded = load_index_dir(index_dir);
        snapshot = std::move(loaded.snapshot);
        index = std::move(loaded.index);
    } else {
        index = context::LshIndex::build({}, {});
    }

    context::Seed seed;
    if (seed_ref.starts_with("commit:")) {
        const auto* commit = snapshot.find_commit(seed_ref.substr(7));
        if (commit == nullptr) {
            throw Error(ErrorKind::invalid_input, "seed '" + seed_ref + "' not in snapshot");
        }
        seed = context::Seed::from_commit(*commit);
    } else {
        seed = context::Seed::from_text(seed_ref);
    }

    context::RetrieveOptions ropts;
    ropts.token_budget = retrieval.token_budget;
    auto bundle = context::retrieve_context(snapshot, *index, seed, retrieval.k, ropts);
    fs::create_directories(out_dir);
    write_file(out_dir + "/context-bundle.json", bundle.to_json());

    std::string excerpts;
    for (const auto& e : bundle.entries) {
        excerpts += "--- " + e.ref_id + " ---\n" + e.excerpt + "\n";
    }
    std::string sanitized;
    if (bundle.sanitized_diff.has_value()) {
        sanitized = bundle.sanitized_diff->retained.to_text();
    }
    std::map<std::string, std::string> bindings = {
        {"_fcommit", sanitized.empty() ? excerpts : sanitized},
        {"context", excerpts},
        {"task", seed_ref},
        {"seed", seed_ref},
        {"project", snapshot.root_path},
    };

    int failures = 0;
    for (int i = 0; i < count; ++i) {
        try {
            auto prompt = forge::render_prompt(tmpl, bindings);
            forge::GenerateOptions gopts;
            gopts.seed_ref = seed_ref + "#" + std::to_string(i);
            gopts.created_at = timestamp;
            auto generated = forge::generate_issue(prompt, kind, generator, *gw, gopts);
            generated.issue.seed_ref = seed_ref;
            const std::string base = out_dir + "/issue-" + generated.issue.issue_id;
            write_file(base + ".json", generated.issue.to_json());
            write_file(base + ".md", generated.issue.to_markdown());
            std::cout << "wrote " << base << ".json\n";
        } catch (const Error& e) {
            std::cerr << "forge failure (#" << i << "): " << e.what() << "\n";
            ++failures;
        }
    }
    if (failures == count) return kExitValidation;
    return failures > 0 ? kExitPartial : kExitOk;
}

std::vector<forge::AdversarialIssue> load_issue_dir(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.starts_with("issue-") && name.ends_with(".json")) {
            files.push_back(entry.path().string());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<forge::AdversarialIssue> issues;
    for (const auto& f : files) {
        issues.push_back(forge::AdversarialIssue::from_json(read_file(f)));
    }
    return issues;
}

int cmd_screen(const std::string& issues_dir, const std::string& suite_path,
               const std::string& out_dir, const std::string& mock_script) {
    const std::string suite_text = read_file(suite_path);
    auto suite = campaign::parse_filter_suite(suite_text);
    if (suite.empty()) {
        throw Error(ErrorKind::configuration, "suite '" + suite_path + "' defines no filters");
    }
    auto issues = load_issue_dir(issues_dir);
    auto gw = make_gateway(mock_script);

    campaign::LedgerManifest manifest;
    manifest.name = "screen:" + fs::path(issues_dir).filename().string();
    manifest.config_digest = sha256_hex(suite_text);
    manifest.created_at = utc_now();
    // A corpus-level benign marker turns this ledger into an FP study.
    const std::string corpus_marker = issues_dir + "/corpus.json";
    if (fs::exists(corpus_marker)) {
        auto corpus = nlohmann::json::parse(read_file(corpus_marker), nullptr, false);
        manifest.benign_corpus = corpus.is_object() && corpus.value("benign", false);
    }
    campaign::ledger_io::init_dir(out_dir, manifest);

    // Per-issue records plus a flat stream with one FilterResult per line.
    std::ofstream stream(fs::path(out_dir) / "filter_results.jsonl",
                         std::ios::binary | std::ios::trunc);
    campaign::RunHooks hooks;
    hooks.on_record = [&](const campaign::IssueRecord& rec) {
        campaign::ledger_io::append_record(out_dir, rec);
        for (const auto& r : rec.pre_results) stream << defense::to_jsonl(r) << "\n";
    };
    auto outcome = campaign::screen_issues(issues, suite, *gw, manifest.config_digest, hooks);

    std::size_t errored = 0;
    for (const auto& rec : outcome.ledger.records()) {
        for (const auto& r : rec.pre_results) {
            if (r.error.has_value()) ++errored;
        }
    }
    std::cout << "screened " << issues.size() << " issues through " << suite.size()
              << " filters into " << out_dir << " (" << errored << " filter errors)\n";
    return errored > 0 ? kExitPartial : kExitOk;
}

int cmd_ingest(const std::string& ledger_dir, const std::string& sarif_path,
               const std::string& comments_path, const std::string& labels_path,
               const std::string& patches_path) {
    auto ledger = campaign::ledger_io::load(ledger_dir);

    std::map<std::string, std::vector<postrepair::StaticFinding>> findings_by_issue;
    if (!sarif_path.empty()) {
        // Our SARIF exports tag each run with properties.issue_id.
        auto doc = nlohmann::json::parse(read_file(sarif_path), nullptr, false);
        if (doc.is_discarded() || !doc.is_object() || !doc.contains("runs")) {
            throw Error(ErrorKind::parse, "sarif $: missing runs");
        }
        for (std::size_t i = 0; i < doc["runs"].size(); ++i) {
            const auto& run = doc["runs"][i];
            if (!run.contains("properties") || !run["properties"].contains("issue_id")) {
                throw Error(ErrorKind::validation,
                            "sarif run " + std::to_string(i) + " lacks properties.issue_id");
            }
            const std::string issue_id = run["properties"]["issue_id"].get<std::string>();
            nlohmann::json single = {{"version", "2.1.0"}, {"runs", {run}}};
            auto findings = postrepair::ingest_static_findings(single.dump());
            auto& bucket = findings_by_issue[issue_id];
            bucket.insert(bucket.end(), findings.begin(), findings.end());
        }
    }

    std::map<std::string, std::vector<postrepair::ReviewComment>> comments_by_issue;
    if (!comments_path.empty()) {
        for (auto& c : postrepair::ingest_review_comments(read_file(comments_path))) {
            comments_by_issue[c.issue_id].push_back(std::move(c));
        }
    }

    std::map<std::string, postrepair::CompromiseLabel> labels_by_issue;
    if (!labels_path.empty()) {
        for (auto& l : postrepair::ingest_labels(read_file(labels_path))) {
            labels_by_issue.emplace(l.issue_id, std::move(l));
        }
    }

    std::map<std::string, postrepair::PatchRecord> patches_by_issue;
    if (!patches_path.empty()) {
        std::istringstream in(read_file(patches_path));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object()) {
                throw Error(ErrorKind::parse, "patches: bad JSONL record");
            }
            postrepair::PatchRecord p;
            p.issue_id = j.at("issue_id").get<std::string>();
            p.created = j.value("created", true);
            p.patch_text = j.value("patch_text", std::string{});
            p.apr_agent = j.value("apr_agent", std::string{});
            p.provenance_digest = j.value("provenance_digest", std::string{});
            p.validate();
            patches_by_issue.emplace(p.issue_id, std::move(p));
        }
    }

    std::set<std::string> touched;
    for (const auto& [id, _] : findings_by_issue) touched.insert(id);
    for (const auto& [id, _] : comments_by_issue) touched.insert(id);
    for (const auto& [id, _] : labels_by_issue) touched.insert(id);
    for (const auto& [id, _] : patches_by_issue) touched.insert(id);

    int appended = 0;
    for (const std::string& issue_id : touched) {
        const campaign::IssueRecord* current = nullptr;
        for (const auto* rec : ledger.effective_records()) {
            if (rec->issue.issue_id == issue_id) current = rec;
        }
        if (current == nullptr) {
            throw Error(ErrorKind::validation,
                        "artifacts reference unknown issue '" + issue_id + "'");
        }
        campaign::IssueRecord next = *current;
        next.revision = current->revision + 1;
        if (auto it = patches_by_issue.find(issue_id); it != patches_by_issue.end()) {
            next.patch = it->second;
        }
        if (auto it = labels_by_issue.find(issue_id); it != labels_by_issue.end()) {
            next.label = it->second;
        }
        const bool has_post_inputs = findings_by_issue.count(issue_id) != 0 ||
                                     comments_by_issue.count(issue_id) != 0;
        if (has_post_inputs) {
            if (!next.patch.has_value() || !next.patch->created) {
                throw Error(ErrorKind::validation,
                            "post-repair artifacts for '" + issue_id +
                                "' but no created patch on record");
            }
            next.post = postrepair::combine_post_ensemble(
                issue_id, findings_by_issue[issue_id], comments_by_issue[issue_id]);
        }
        ledger.append(next);
        campaign::ledger_io::append_record(ledger_dir, ledger.records().back());
        ++appended;
    }
    std::cout << "appended " << appended << " superseding records to " << ledger_dir << "\n";
    return kExitOk;
}

int cmd_report(const std::string& ledger_dir, const std::string& format,
               const std::string& out_path, const std::string& best_filter,
               const std::string& config_path, std::optional<std::size_t> fp_denominator) {
    auto ledger = campaign::ledger_io::load(ledger_dir);
    auto manifest = campaign::ledger_io::read_manifest(ledger_dir);

    campaign::TableOptions options;
    options.strategies = {campaign::CombinedStrategy::pre_ensemble_plus_post};
    if (!best_filter.empty()) {
        options.best_pre_filter_id = best_filter;
        options.strategies.push_back(campaign::CombinedStrategy::pre_best_plus_post);
    }

    std::optional<gateway::PriceTable> prices;
    if (!config_path.empty()) {
        auto config = campaign::load_campaign_config_file(config_path);
        prices = config.prices;
        if (!options.best_pre_filter_id.has_value() && config.best_pre_filter_id.has_value()) {
            options.best_pre_filter_id = config.best_pre_filter_id;
            options.strategies.push_back(campaign::CombinedStrategy::pre_best_plus_post);
        }
    }

    auto table = campaign::compute_detection_table(ledger, options);

    campaign::ReportMeta meta;
    if (manifest.benign_corpus) {
        meta.denominator_note = fp_denominator.has_value()
                                    ? "false-positive denominator overridden to " +
                                          std::to_string(*fp_denominator)
                                    : "false-positive denominator = evaluable results";
        // Per-filter FP summaries over the benign corpus.
        std::map<std::string, std::vector<defense::FilterResult>> by_filter;
        for (const auto* rec : ledger.effective_records()) {
            for (const auto& r : rec->pre_results) by_filter[r.filter_id].push_back(r);
        }
        for (const auto& [filter_id, results] : by_filter) {
            meta.fp_summaries.emplace_back(
                filter_id, defense::evaluate_false_positives(results, fp_denominator));
        }
    }

    std::string text;
    if (format == "csv") {
        text = campaign::emit_report_csv(table);
    } else if (format == "md") {
        std::optional<campaign::CostSummary> costs;
        if (prices.has_value()) costs = campaign::aggregate_costs(ledger, *prices);
        text = campaign::emit_report_markdown(table, costs.has_value() ? &*costs : nullptr, meta);
    } else {
        throw Error(ErrorKind::configuration, "unknown report format '" + format + "'");
    }

    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
        std::cout << "wrote " << out_path << "\n";
    }
    return kExitOk;
}

int cmd_campaign(const std::string& config_path, const std::string& index_dir,
                 const std::string& out_dir, const std::string& mock_script) {
    auto config = campaign::load_campaign_config_file(config_path);
    auto gw = make_gateway(mock_script);
    auto loaded = load_index_dir(index_dir);

    campaign::LedgerManifest manifest;
    manifest.name = config.name;
    manifest.config_digest = config.digest();
    manifest.created_at = config.created_at;
    campaign::ledger_io::init_dir(out_dir, manifest);

    campaign::RunHooks hooks;
    hooks.on_record = [&](const campaign::IssueRecord& rec) {
        campaign::ledger_io::append_record(out_dir, rec);
    };
    auto outcome = campaign::run_campaign(config, loaded.snapshot, loaded.index, *gw, hooks);
    for (const auto& failure : outcome.failures) {
        std::cerr << "failure at " << failure.plan_ref << " (" << failure.stage
                  << "): " << failure.message << "\n";
    }
    std::cout << "campaign '" << config.name << "': " << outcome.ledger.records().size()
              << " issues recorded in " << out_dir << ", " << outcome.failures.size()
              << " failures\n";
    return outcome.failures.empty() ? kExitOk : kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Red-team harness for LLM-based automated program repair pipelines"};
    app.require_subcommand(1);

    std::string config_path;
    std::string mock_script;
    app.add_option("--config", config_path, "Campaign/suite config (TOML)");
    app.add_option("--mock", mock_script, "Force the mock gateway with this script file");

    // index
    auto* index_cmd = app.add_subcommand("index", "Index a repository working tree");
    std::string repo, out_dir, commits, timestamp;
    context::LshParams params;
    index_cmd->add_option("repo", repo, "Repository root")->required();
    index_cmd->add_option("--out", out_dir, "Output directory")->required();
    index_cmd->add_option("--commits", commits, "Commit log export (JSONL)");
    index_cmd->add_option("--num-perm", params.num_perm, "MinHash permutations");
    index_cmd->add_option("--bands", params.bands, "LSH bands");
    index_cmd->add_option("--rows", params.rows_per_band, "Rows per band");
    index_cmd->add_option("--shingle-k", params.shingle_k, "Character shingle length");
    index_cmd->add_option("--seed", params.seed, "Permutation seed");
    index_cmd->add_option("--timestamp", timestamp, "Fixed built_at timestamp");

    // forge
    auto* forge_cmd = app.add_subcommand("forge", "Generate adversarial issues");
    std::string attack, seed_ref, template_spec, forge_out, index_dir;
    int count = 1;
    forge_cmd->add_option("--attack", attack, "Attack kind")->required();
    forge_cmd->add_option("--seed", seed_ref, "Seed (commit:<id> or free text)")->required();
    forge_cmd->add_option("--template", template_spec, "Template file or builtin:<name>")
        ->required();
    forge_cmd->add_option("--out", forge_out, "Output directory")->required();
    forge_cmd->add_option("--index", index_dir, "Index directory from `index`");
    forge_cmd->add_option("--count", count, "Issues to generate");
    forge_cmd->add_option("--timestamp", timestamp, "Fixed created_at timestamp");

    // screen
    auto* screen_cmd = app.add_subcommand("screen", "Screen issues through a filter suite");
    std::string issues_dir, suite_path, screen_out;
    screen_cmd->add_option("--issues", issues_dir, "Directory of issue-*.json")->required();
    screen_cmd->add_option("--suite", suite_path, "Filter suite config (TOML)")->required();
    screen_cmd->add_option("--out", screen_out, "Ledger directory")->required();

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "Attach post-repair artifacts to a ledger");
    std::string ledger_dir, sarif_path, comments_path, labels_path, patches_path;
    ingest_cmd->add_option("--ledger", ledger_dir, "Ledger directory")->required();
    ingest_cmd->add_option("--sarif", sarif_path, "SARIF 2.1.0 findings");
    ingest_cmd->add_option("--comments", comments_path, "Review comments (JSONL)");
    ingest_cmd->add_option("--labels", labels_path, "Compromise labels (JSONL)");
    ingest_cmd->add_option("--patches", patches_path, "Patch records (JSONL)");

    // report
    auto* report_cmd = app.add_subcommand("report", "Compute and emit the detection table");
    std::string report_ledger, format = "md", report_out, best_filter;
    std::optional<std::size_t> fp_denominator;
    report_cmd->add_option("--ledger", report_ledger, "Ledger directory")->required();
    report_cmd->add_option("--format", format, "md or csv");
    report_cmd->add_option("--out", report_out, "Write to file instead of stdout");
    report_cmd->add_option("--best", best_filter, "Best pre-filter id for pre_best_plus_post");
    report_cmd->add_option("--fp-denominator", fp_denominator,
                           "Override the benign-corpus denominator");

    // campaign
    auto* campaign_cmd = app.add_subcommand("campaign", "Run a full campaign from a config");
    std::string campaign_index, campaign_out;
    campaign_cmd->add_option("--index", campaign_index, "Index directory")->required();
    campaign_cmd->add_option("--out", campaign_out, "Ledger directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (index_cmd->parsed()) return cmd_index(repo, out_dir, commits, params, timestamp);
        if (forge_cmd->parsed()) {
            return cmd_forge(attack, seed_ref, template_spec, forge_out, index_dir, count,
                             mock_script, config_path, timestamp);
        }
        if (screen_cmd->parsed()) {
            return cmd_screen(issues_dir, suite_path, screen_out, mock_script);
        }
        if (ingest_cmd->parsed()) {
            return cmd_ingest(ledger_dir, sarif_path, comments_path, labels_path, patches_path);
        }
        if (report_cmd->parsed()) {
            return cmd_report(report_ledger, format, report_out, best_filter, config_path,
                              fp_denominator);
        }
        if (campaign_cmd->parsed()) {
            if (config_path.empty()) {
                throw Error(ErrorKind::configuration, "campaign requires --config");
            }
            return cmd_campaign(config_path, campaign_index, campaign_out, mock_script);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
