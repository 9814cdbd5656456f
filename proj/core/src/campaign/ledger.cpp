#include <aprgauntlet/campaign/ledger.hpp>

#include <aprgauntlet/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace aprgauntlet::campaign {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json usage_to_json(const gateway::UsageRecord& u) {
    return {{"prompt_tokens", u.prompt_tokens},
            {"completion_tokens", u.completion_tokens},
            {"model_name", u.model_name},
            {"wall_time_s", u.wall_time_s},
            {"estimated", u.estimated}};
}

gateway::UsageRecord usage_from_json(const ordered_json& j) {
    gateway::UsageRecord u;
    u.prompt_tokens = j.value("prompt_tokens", 0L);
    u.completion_tokens = j.value("completion_tokens", 0L);
    u.model_name = j.value("model_name", std::string{});
    u.wall_time_s = j.value("wall_time_s", 0.0);
    u.estimated = j.value("estimated", false);
    return u;
}

}  // namespace

void IssueRecord::validate() const {
    if (issue.issue_id.empty()) {
        throw Error(ErrorKind::validation, "record with empty issue id");
    }
    if (revision < 0) {
        throw Error(ErrorKind::validation, "record revision must be >= 0");
    }
    for (const auto& r : pre_results) {
        if (r.issue_id != issue.issue_id) {
            throw Error(ErrorKind::validation, "filter result for '" + r.issue_id +
                                                   "' attached to issue '" + issue.issue_id + "'");
        }
    }
    if (pre_ensemble.has_value()) {
        defense::PreEnsembleResult recomputed = defense::combine_pre_ensemble(pre_results);
        if (recomputed.flagged != pre_ensemble->flagged ||
            recomputed.flagging_filters != pre_ensemble->flagging_filters) {
            throw Error(ErrorKind::validation, "stored pre-ensemble for '" + issue.issue_id +
                                                   "' does not match its member results");
        }
    }
    if (patch.has_value()) {
        patch->validate();
        if (patch->issue_id != issue.issue_id) {
            throw Error(ErrorKind::validation, "patch issue id mismatch");
        }
    }
    if (post.has_value()) {
        if (!patch.has_value() || !patch->created) {
            throw Error(ErrorKind::validation,
                        "post-repair result for '" + issue.issue_id + "' without a created patch");
        }
        if (post->issue_id != issue.issue_id) {
            throw Error(ErrorKind::validation, "post result issue id mismatch");
        }
        if (post->flagged != (post->static_flag || post->any_comment_flag())) {
            throw Error(ErrorKind::validation, "post result for '" + issue.issue_id +
                                                   "' breaks the OR invariant");
        }
    }
    if (label.has_value() && label->issue_id != issue.issue_id) {
        throw Error(ErrorKind::validation, "label issue id mismatch");
    }
}

std::string IssueRecord::to_jsonl() const {
    ordered_json j;
    j["issue"] = ordered_json::parse(issue.to_json());
    j["pre"] = ordered_json::object();
    j["pre"]["results"] = ordered_json::array();
    for (const auto& r : pre_results) {
        j["pre"]["results"].push_back(ordered_json::parse(defense::to_jsonl(r)));
    }
    if (pre_ensemble.has_value()) {
        j["pre"]["ensemble"] = {{"issue_id", pre_ensemble->issue_id},
                                {"member_filter_ids", pre_ensemble->member_filter_ids},
                                {"flagged", pre_ensemble->flagged},
                                {"flagging_filters", pre_ensemble->flagging_filters}};
    } else {
        j["pre"]["ensemble"] = nullptr;
    }
    if (patch.has_value()) {
        j["patch"] = {{"issue_id", patch->issue_id},
                      {"created", patch->created},
                      {"patch_text", patch->patch_text},
                      {"apr_agent", patch->apr_agent},
                      {"provenance_digest", patch->provenance_digest}};
    } else {
        j["patch"] = nullptr;
    }
    if (post.has_value()) {
        j["post"] = {{"issue_id", post->issue_id},
                     {"static_flag", post->static_flag},
                     {"comment_general", post->comment_general},
                     {"comment_low_confidence", post->comment_low_confidence},
                     {"comment_file_level", post->comment_file_level},
                     {"flagged", post->flagged}};
    } else {
        j["post"] = nullptr;
    }
    if (label.has_value()) {
        j["label"] = {{"issue_id", label->issue_id},
                      {"compromised", label->compromised},
                      {"rationale", label->rationale},
                      {"annotators", label->annotators}};
    } else {
        j["label"] = nullptr;
    }
    j["usage"] = ordered_json::array();
    for (const auto& u : usage) {
        j["usage"].push_back({{"stage", u.stage},
                              {"filter_id", u.filter_id},
                              {"usage", usage_to_json(u.usage)}});
    }
    j["errors"] = ordered_json::array();
    for (const auto& e : errors) {
        j["errors"].push_back({{"stage", e.stage}, {"message", e.message}});
    }
    j["revision"] = revision;
    return j.dump();
}

IssueRecord IssueRecord::from_json(std::string_view text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw Error(ErrorKind::parse, "issue record: not a JSON object");
    }
    IssueRecord rec;
    try {
        rec.issue = forge::AdversarialIssue::from_json(j.at("issue").dump());
        const auto& pre = j.at("pre");
        for (const auto& r : pre.value("results", ordered_json::array())) {
            rec.pre_results.push_back(defense::filter_result_from_jsonl(r.dump()));
        }
        if (pre.contains("ensemble") && pre["ensemble"].is_object()) {
            defense::PreEnsembleResult ens;
            const auto& e = pre["ensemble"];
            ens.issue_id = e.at("issue_id").get<std::string>();
            ens.flagged = e.at("flagged").get<bool>();
            for (const auto& id : e.value("member_filter_ids", ordered_json::array())) {
                ens.member_filter_ids.push_back(id.get<std::string>());
            }
            for (const auto& id : e.value("flagging_filters", ordered_json::array())) {
                ens.flagging_filters.push_back(id.get<std::string>());
            }
            rec.pre_ensemble = std::move(ens);
        }
        if (j.contains("patch") && j["patch"].is_object()) {
            postrepair::PatchRecord p;
            const auto& jp = j["patch"];
            p.issue_id = jp.at("issue_id").get<std::string>();
            p.created = jp.at("created").get<bool>();
            p.patch_text = jp.value("patch_text", std::string{});
            p.apr_agent = jp.value("apr_agent", std::string{});
            p.provenance_digest = jp.value("provenance_digest", std::string{});
            rec.patch = std::move(p);
        }
        if (j.contains("post") && j["post"].is_object()) {
            postrepair::PostResult p;
            const auto& jp = j["post"];
            p.issue_id = jp.at("issue_id").get<std::string>();
            p.static_flag = jp.at("static_flag").get<bool>();
            p.comment_general = jp.at("comment_general").get<bool>();
            p.comment_low_confidence = jp.at("comment_low_confidence").get<bool>();
            p.comment_file_level = jp.at("comment_file_level").get<bool>();
            p.flagged = jp.at("flagged").get<bool>();
            rec.post = std::move(p);
        }
        if (j.contains("label") && j["label"].is_object()) {
            postrepair::CompromiseLabel l;
            const auto& jl = j["label"];
            l.issue_id = jl.at("issue_id").get<std::string>();
            l.compromised = jl.at("compromised").get<bool>();
            l.rationale = jl.value("rationale", std::string{});
            for (const auto& a : jl.value("annotators", ordered_json::array())) {
                l.annotators.push_back(a.get<std::string>());
            }
            rec.label = std::move(l);
        }
        for (const auto& u : j.value("usage", ordered_json::array())) {
            StageUsage su;
            su.stage = u.at("stage").get<std::string>();
            su.filter_id = u.value("filter_id", std::string{});
            su.usage = usage_from_json(u.at("usage"));
            rec.usage.push_back(std::move(su));
        }
        for (const auto& e : j.value("errors", ordered_json::array())) {
            rec.errors.push_back({e.at("stage").get<std::string>(),
                                  e.at("message").get<std::string>()});
        }
        rec.revision = j.value("revision", 0);
    } catch (const ordered_json::exception& e) {
        throw Error(ErrorKind::parse, std::string("issue record: ") + e.what());
    }
    rec.validate();
    return rec;
}

CampaignLedger::CampaignLedger(std::string config_digest, std::string version)
    : config_digest_(std::move(config_digest)), version_(std::move(version)) {}

void CampaignLedger::append(IssueRecord record) {
    record.validate();
    int latest = -1;
    for (const auto& existing : records_) {
        if (existing.issue.issue_id == record.issue.issue_id) {
            latest = std::max(latest, existing.revision);
        }
    }
    if (record.revision != latest + 1) {
        throw Error(ErrorKind::validation,
                    "issue '" + record.issue.issue_id + "': expected revision " +
                        std::to_string(latest + 1) + ", got " + std::to_string(record.revision));
    }
    records_.push_back(std::move(record));
}

std::vector<const IssueRecord*> CampaignLedger::effective_records() const {
    std::vector<const IssueRecord*> out;
    std::map<std::string, std::size_t> position;
    for (const auto& rec : records_) {
        auto it = position.find(rec.issue.issue_id);
        if (it == position.end()) {
            position.emplace(rec.issue.issue_id, out.size());
            out.push_back(&rec);
        } else if (rec.revision > out[it->second]->revision) {
            out[it->second] = &rec;
        }
    }
    return out;
}

std::size_t CampaignLedger::issue_count() const {
    return effective_records().size();
}

std::string LedgerManifest::to_json() const {
    ordered_json j;
    j["version"] = version;
    j["name"] = name;
    j["config_digest"] = config_digest;
    j["created_at"] = created_at;
    j["benign_corpus"] = benign_corpus;
    return j.dump(2) + "\n";
}

LedgerManifest LedgerManifest::from_json(std::string_view text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw Error(ErrorKind::parse, "manifest: not a JSON object");
    }
    LedgerManifest m;
    m.version = j.value("version", "1");
    m.name = j.value("name", std::string{});
    m.config_digest = j.value("config_digest", std::string{});
    m.created_at = j.value("created_at", std::string{});
    m.benign_corpus = j.value("benign_corpus", false);
    return m;
}

namespace ledger_io {

void init_dir(const std::string& dir, const LedgerManifest& manifest) {
    fs::create_directories(dir);
    std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write manifest in '" + dir + "'");
    out << manifest.to_json();
    // Fresh ledger: truncate any stale record file.
    std::ofstream records(fs::path(dir) / "records.jsonl", std::ios::binary | std::ios::trunc);
}

void append_record(const std::string& dir, const IssueRecord& record) {
    std::ofstream out(fs::path(dir) / "records.jsonl", std::ios::binary | std::ios::app);
    if (!out) throw Error(ErrorKind::io, "cannot append to ledger in '" + dir + "'");
    out << record.to_jsonl() << "\n";
}

LedgerManifest read_manifest(const std::string& dir) {
    std::ifstream in(fs::path(dir) / "manifest.json", std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "no manifest in '" + dir + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return LedgerManifest::from_json(buf.str());
}

CampaignLedger load(const std::string& dir) {
    LedgerManifest manifest = read_manifest(dir);
    CampaignLedger ledger(manifest.config_digest, manifest.version);
    std::ifstream in(fs::path(dir) / "records.jsonl", std::ios::binary);
    if (!in) return ledger;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            ledger.append(IssueRecord::from_json(line));
        } catch (const Error& e) {
            throw Error(e.kind(), "records.jsonl line " + std::to_string(line_no) + ": " +
                                      e.detail());
        }
    }
    return ledger;
}

void save(const std::string& dir, const LedgerManifest& manifest, const CampaignLedger& ledger) {
    init_dir(dir, manifest);
    for (const auto& rec : ledger.records()) append_record(dir, rec);
}

}  // namespace ledger_io

}  // namespace aprgauntlet::campaign
