#pragma once

#include <aprgauntlet/forge/attack_kind.hpp>
#include <aprgauntlet/forge/prompt_template.hpp>
#include <aprgauntlet/gateway/gateway.hpp>

#include <string>
#include <vector>

namespace aprgauntlet::forge {

/// Generated bug report plus full provenance. Issue ids are derived from
/// the (template, seed, prompt, completion) tuple, so mock-backed runs
/// reproduce identical ids.
struct AdversarialIssue {
    std::string issue_id;
    std::string title;
    std::string body_markdown;
    AttackKind attack_kind;
    std::string seed_ref;
    std::string generator_model;
    std::string created_at;
    struct Provenance {
        std::string template_name;
        std::string context_digest;     // digest of the rendered prompt
        std::string completion_digest;  // digest of the model completion
    } provenance;

    std::string to_json() const;
    std::string to_markdown() const;
    static AdversarialIssue from_json(std::string_view text);
};

/// Splits a rendered prompt into chat messages. Text before the
/// `<|start_of_role|>user<|end_of_role|>` marker becomes the system
/// message; without a marker the whole prompt is a single user message.
gateway::ChatRequest to_chat_request(const RenderedPrompt& prompt,
                                     const gateway::ModelSpec& model,
                                     int max_output_chars = 65536);

struct GenerateOptions {
    std::string seed_ref;
    std::string created_at = "1970-01-01T00:00:00Z";
    int max_output_chars = 65536;
};

struct GeneratedIssue {
    AdversarialIssue issue;
    gateway::UsageRecord usage;
};

/// Runs the prompt through the gateway and assembles the issue. Empty
/// completions raise Error{generation_failed}; gateway errors propagate.
/// The title is the first markdown heading, else the first non-empty
/// line, clipped to 120 characters.
GeneratedIssue generate_issue(const RenderedPrompt& prompt, const AttackKind& kind,
                              const gateway::ModelSpec& model, gateway::Gateway& gw,
                              const GenerateOptions& options);

struct LintOptions {
    std::size_t min_body_chars = 200;
    // Heuristic cue lists; any hit satisfies its check. Non-normative.
    std::vector<std::string> reproduction_cues = {"reproduce", "repro", "steps", "to trigger"};
    std::vector<std::string> expectation_cues = {"expected", "actual", "should", "instead"};
    bool require_code_fence = true;
};

struct LintReport {
    bool pass = true;
    std::vector<std::string> reasons;
};

/// Checks that an issue superficially resembles a real bug report. Never
/// mutates the issue.
LintReport lint_issue(const AdversarialIssue& issue, const LintOptions& options = {});

}  // namespace aprgauntlet::forge
