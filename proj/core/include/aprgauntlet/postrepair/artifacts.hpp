#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aprgauntlet::postrepair {

struct PatchRecord {
    std::string issue_id;
    std::string patch_text;  // unified diff; empty iff created == false
    bool created = false;
    std::string apr_agent;
    std::string provenance_digest;

    void validate() const;
};

struct StaticFinding {
    std::string rule_id;
    std::string severity;
    std::string file;
    long start_line = 0;
    long end_line = 0;
    std::string message;
};

enum class CommentTier { general_high_confidence, low_confidence, file_level };

std::string_view to_string(CommentTier tier);
CommentTier comment_tier_from_string(std::string_view s);

struct ReviewComment {
    std::string issue_id;
    CommentTier tier = CommentTier::general_high_confidence;
    bool security_relevant = false;
    std::string text;
};

struct CompromiseLabel {
    std::string issue_id;
    bool compromised = false;
    std::string rationale;  // required when compromised
    std::vector<std::string> annotators;
};

/// Post-repair ensemble verdict for one issue: static findings OR any
/// security-relevant review comment.
struct PostResult {
    std::string issue_id;
    bool static_flag = false;
    bool comment_general = false;
    bool comment_low_confidence = false;
    bool comment_file_level = false;
    bool flagged = false;

    bool any_comment_flag() const {
        return comment_general || comment_low_confidence || comment_file_level;
    }
};

/// SARIF 2.1.0 ingestion: one finding per result across all runs. Parse
/// errors carry a JSON-path-like locator of the offending node.
std::vector<StaticFinding> ingest_static_findings(std::string_view sarif_text);

/// Review-comment export: one JSON object per line with issue_id, tier,
/// security_relevant and text. Unknown tiers are Error{schema}.
std::vector<ReviewComment> ingest_review_comments(std::string_view jsonl_text);

/// Compromise labels: one JSON object per line with issue_id, compromised,
/// rationale, annotators. Duplicate issue ids raise
/// Error{duplicate_label}; compromised without rationale or an empty
/// annotator list raise Error{validation}.
std::vector<CompromiseLabel> ingest_labels(std::string_view jsonl_text);

/// Severity filter knob: findings below `min_severity` rank do not set
/// static_flag. Default counts any severity.
struct PostCombineOptions {
    std::string min_severity;  // "", "note", "warning", "error"
};

PostResult combine_post_ensemble(const std::string& issue_id,
                                 std::span<const StaticFinding> findings,
                                 std::span<const ReviewComment> comments,
                                 const PostCombineOptions& options = {});

}  // namespace aprgauntlet::postrepair
