#pragma once

#include <aprgauntlet/defense/ensemble.hpp>
#include <aprgauntlet/defense/screen.hpp>
#include <aprgauntlet/forge/issue.hpp>
#include <aprgauntlet/gateway/model.hpp>
#include <aprgauntlet/postrepair/artifacts.hpp>

#include <optional>
#include <string>
#include <vector>

namespace aprgauntlet::campaign {

/// Usage entry tagged with the pipeline stage ("forge" or "screen") that
/// spent it; screen entries also carry the filter id.
struct StageUsage {
    std::string stage;
    std::string filter_id;
    gateway::UsageRecord usage;
};

struct StageError {
    std::string stage;
    std::string message;
};

/// Everything recorded for one adversarial issue. Serialized as a single
/// JSON line with stable key order.
struct IssueRecord {
    forge::AdversarialIssue issue;
    std::vector<defense::FilterResult> pre_results;
    std::optional<defense::PreEnsembleResult> pre_ensemble;
    std::optional<postrepair::PatchRecord> patch;
    std::optional<postrepair::PostResult> post;
    std::optional<postrepair::CompromiseLabel> label;
    std::vector<StageUsage> usage;
    std::vector<StageError> errors;
    /// Corrections are appended as new revisions of the same issue_id;
    /// readers use the highest revision.
    int revision = 0;

    /// Enforces: post only with a created patch; stored pre-ensemble
    /// recomputable from members; patch/post/label ids match the issue.
    void validate() const;

    std::string to_jsonl() const;
    static IssueRecord from_json(std::string_view text);
};

/// Append-only campaign record. Records are never mutated; a correction
/// is a superseding append carrying the next revision number.
class CampaignLedger {
public:
    CampaignLedger() = default;
    CampaignLedger(std::string config_digest, std::string version);

    const std::string& config_digest() const { return config_digest_; }
    const std::string& version() const { return version_; }

    /// Validates the record; revision must be exactly one above the
    /// latest revision for that issue_id (0 for a new issue).
    void append(IssueRecord record);

    const std::vector<IssueRecord>& records() const { return records_; }

    /// Latest revision per issue_id, in first-appearance order.
    std::vector<const IssueRecord*> effective_records() const;

    std::size_t issue_count() const;

private:
    std::string config_digest_;
    std::string version_ = "1";
    std::vector<IssueRecord> records_;
};

struct LedgerManifest {
    std::string version = "1";
    std::string name;
    std::string config_digest;
    std::string created_at;
    bool benign_corpus = false;

    std::string to_json() const;
    static LedgerManifest from_json(std::string_view text);
};

/// On-disk layout: <dir>/manifest.json plus <dir>/records.jsonl.
namespace ledger_io {

void init_dir(const std::string& dir, const LedgerManifest& manifest);
void append_record(const std::string& dir, const IssueRecord& record);
LedgerManifest read_manifest(const std::string& dir);
CampaignLedger load(const std::string& dir);
void save(const std::string& dir, const LedgerManifest& manifest, const CampaignLedger& ledger);

}  // namespace ledger_io

}  // namespace aprgauntlet::campaign
