#include <aprgauntlet/postrepair/artifacts.hpp>

#include <aprgauntlet/error.hpp>

#include <json.hpp>

#include <map>
#include <set>
#include <sstream>

namespace aprgauntlet::postrepair {

using ordered_json = nlohmann::ordered_json;

void PatchRecord::validate() const {
    if (!created && !patch_text.empty()) {
        throw Error(ErrorKind::validation,
                    "patch for '" + issue_id + "': created=false but patch text present");
    }
}

std::string_view to_string(CommentTier tier) {
    switch (tier) {
        case CommentTier::general_high_confidence: return "general_high_confidence";
        case CommentTier::low_confidence: return "low_confidence";
        case CommentTier::file_level: return "file_level";
    }
    return "general_high_confidence";
}

CommentTier comment_tier_from_string(std::string_view s) {
    if (s == "general_high_confidence") return CommentTier::general_high_confidence;
    if (s == "low_confidence") return CommentTier::low_confidence;
    if (s == "file_level") return CommentTier::file_level;
    throw Error(ErrorKind::schema, "unknown comment tier '" + std::string(s) + "'");
}

namespace {

[[noreturn]] void sarif_fail(const std::string& path, const std::string& message) {
    throw Error(ErrorKind::parse, "sarif " + path + ": " + message);
}

}  // namespace

std::vector<StaticFinding> ingest_static_findings(std::string_view sarif_text) {
    ordered_json doc = ordered_json::parse(sarif_text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        sarif_fail("$", "document is not a JSON object");
    }
    if (!doc.contains("runs")) sarif_fail("$", "missing 'runs'");
    if (!doc["runs"].is_array()) sarif_fail("$.runs", "not an array");

    std::vector<StaticFinding> findings;
    for (std::size_t ri = 0; ri < doc["runs"].size(); ++ri) {
        const auto& run = doc["runs"][ri];
        const std::string run_path = "$.runs[" + std::to_string(ri) + "]";
        if (!run.is_object()) sarif_fail(run_path, "not an object");
        if (!run.contains("results")) continue;  // empty run
        if (!run["results"].is_array()) sarif_fail(run_path + ".results", "not an array");
        for (std::size_t i = 0; i < run["results"].size(); ++i) {
            const auto& res = run["results"][i];
            const std::string res_path = run_path + ".results[" + std::to_string(i) + "]";
            if (!res.is_object()) sarif_fail(res_path, "not an object");
            StaticFinding f;
            if (res.contains("ruleId") && res["ruleId"].is_string()) {
                f.rule_id = res["ruleId"].get<std::string>();
            } else if (res.contains("rule") && res["rule"].is_object() &&
                       res["rule"].contains("id")) {
                f.rule_id = res["rule"]["id"].get<std::string>();
            } else {
                sarif_fail(res_path, "missing ruleId");
            }
            f.severity = res.value("level", "warning");
            if (res.contains("message")) {
                if (!res["message"].is_object() || !res["message"].contains("text")) {
                    sarif_fail(res_path + ".message", "missing text");
                }
                f.message = res["message"]["text"].get<std::string>();
            }
            if (res.contains("locations") && res["locations"].is_array() &&
                !res["locations"].empty()) {
                const auto& loc = res["locations"][0];
                if (loc.contains("physicalLocation")) {
                    const auto& phys = loc["physicalLocation"];
                    if (phys.contains("artifactLocation") &&
                        phys["artifactLocation"].contains("uri")) {
                        f.file = phys["artifactLocation"]["uri"].get<std::string>();
                    }
                    if (phys.contains("region")) {
                        f.start_line = phys["region"].value("startLine", 0L);
                        f.end_line = phys["region"].value("endLine", f.start_line);
                    }
                }
            }
            findings.push_back(std::move(f));
        }
    }
    return findings;
}

namespace {

std::vector<ordered_json> parse_jsonl(std::string_view text, const char* what) {
    std::vector<ordered_json> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw Error(ErrorKind::parse, std::string(what) + " line " + std::to_string(line_no) +
                                              ": not a JSON object");
        }
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace

std::vector<ReviewComment> ingest_review_comments(std::string_view jsonl_text) {
    std::vector<ReviewComment> comments;
    for (const auto& j : parse_jsonl(jsonl_text, "comments")) {
        ReviewComment c;
        try {
            c.issue_id = j.at("issue_id").get<std::string>();
            c.tier = comment_tier_from_string(j.at("tier").get<std::string>());
            c.security_relevant = j.at("security_relevant").get<bool>();
            c.text = j.value("text", std::string{});
        } catch (const ordered_json::exception& e) {
            throw Error(ErrorKind::schema, std::string("comment record: ") + e.what());
        }
        comments.push_back(std::move(c));
    }
    return comments;
}

std::vector<CompromiseLabel> ingest_labels(std::string_view jsonl_text) {
    std::vector<CompromiseLabel> labels;
    std::set<std::string> seen;
    for (const auto& j : parse_jsonl(jsonl_text, "labels")) {
        CompromiseLabel label;
        try {
            label.issue_id = j.at("issue_id").get<std::string>();
            label.compromised = j.at("compromised").get<bool>();
            label.rationale = j.value("rationale", std::string{});
            for (const auto& a : j.value("annotators", ordered_json::array())) {
                label.annotators.push_back(a.get<std::string>());
            }
        } catch (const ordered_json::exception& e) {
            throw Error(ErrorKind::schema, std::string("label record: ") + e.what());
        }
        if (!seen.insert(label.issue_id).second) {
            throw Error(ErrorKind::duplicate_label,
                        "issue '" + label.issue_id + "' labeled twice");
        }
        if (label.compromised && label.rationale.empty()) {
            throw Error(ErrorKind::validation,
                        "issue '" + label.issue_id + "': compromised without rationale");
        }
        if (label.annotators.empty()) {
            throw Error(ErrorKind::validation,
                        "issue '" + label.issue_id + "': needs at least one annotator");
        }
        labels.push_back(std::move(label));
    }
    return labels;
}

namespace {

int severity_rank(std::string_view severity) {
    if (severity == "error") return 3;
    if (severity == "warning") return 2;
    if (severity == "note") return 1;
    return 2;  // unknown levels count like warnings
}

}  // namespace

PostResult combine_post_ensemble(const std::string& issue_id,
                                 std::span<const StaticFinding> findings,
                                 std::span<const ReviewComment> comments,
                                 const PostCombineOptions& options) {
    PostResult result;
    result.issue_id = issue_id;
    const int min_rank = options.min_severity.empty() ? 0 : severity_rank(options.min_severity);
    for (const auto& f : findings) {
        if (severity_rank(f.severity) >= min_rank) {
            result.static_flag = true;
            break;
        }
    }
    for (const auto& c : comments) {
        if (!c.security_relevant) continue;
        switch (c.tier) {
            case CommentTier::general_high_confidence: result.comment_general = true; break;
            case CommentTier::low_confidence: result.comment_low_confidence = true; break;
            case CommentTier::file_level: result.comment_file_level = true; break;
        }
    }
    result.flagged = result.static_flag || result.any_comment_flag();
    return result;
}

}  // namespace aprgauntlet::postrepair
