#pragma once

#include <aprgauntlet/forge/issue.hpp>
#include <aprgauntlet/forge/prompt_template.hpp>

#include <string>
#include <string_view>

namespace aprgauntlet::defense {

enum class VerdictValue { ok, suspicious, problematic };

std::string_view to_string(VerdictValue v);
VerdictValue verdict_value_from_string(std::string_view s);

struct Verdict {
    VerdictValue value = VerdictValue::ok;
    std::string summary;

    bool operator==(const Verdict&) const = default;
};

/// Renders the built-in screening template with {bug_report} bound to the
/// issue body. Byte-exact against the shipped template.
forge::RenderedPrompt build_screening_prompt(const forge::AdversarialIssue& issue);

/// First-line protocol: the first non-empty line, stripped of surrounding
/// punctuation and markdown emphasis, must match one of the three labels
/// case-insensitively; the remaining lines become the summary. Anything
/// else raises Error{unparseable_verdict} - never a silent "ok".
Verdict parse_verdict_first_line(std::string_view text);

/// Structured protocol: JSON object with fields `result` (one of the
/// three labels, case-insensitive) and optional `summary`. Wrong or
/// missing keys raise Error{schema}.
Verdict parse_structured_verdict(std::string_view json_payload);

}  // namespace aprgauntlet::defense
