#pragma once

#include <aprgauntlet/forge/prompt_template.hpp>

#include <optional>
#include <string_view>
#include <vector>

namespace aprgauntlet::forge {

/// Built-in prompt templates, addressable from configs and the CLI as
/// "builtin:<name>".
///
///  - "revert-cve":      bug report that argues a security fix is a
///                       regression; placeholder {_fcommit} receives the
///                       sanitized commit text.
///  - "naive-noise":     plausible but pointless issue; placeholders
///                       {context} and {task}.
///  - "issue-screening": pre-repair classifier prompt; placeholder
///                       {bug_report}. Its wording is load-bearing: the
///                       verdict parser expects the OK / problematic /
///                       suspicious label contract this prompt states.
std::optional<PromptTemplate> builtin_template(std::string_view name);

std::vector<std::string_view> builtin_template_names();

/// Resolves "builtin:<name>" to a built-in and anything else to a file
/// path. Throws Error{configuration} for unknown builtin names.
PromptTemplate resolve_template(const std::string& spec);

}  // namespace aprgauntlet::forge
