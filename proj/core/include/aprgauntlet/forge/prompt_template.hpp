#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace aprgauntlet::forge {

/// Text template with `{identifier}` placeholders. `{{` and `}}` escape
/// literal braces (needed because diffs and code snippets contain them).
/// Identifiers match [A-Za-z_][A-Za-z0-9_]*.
struct PromptTemplate {
    std::string name;
    std::string body;
    std::set<std::string> required_placeholders;
    std::optional<std::string> attack_kind;  // variant name, when attack-specific
};

/// Parses `source` and records its placeholders. Unbalanced braces or a
/// bad identifier raise Error{template_syntax} with the byte offset.
PromptTemplate load_template(std::string_view source, std::string name = "inline");

PromptTemplate load_template_file(const std::string& path);

struct RenderedPrompt {
    std::string text;
    std::map<std::string, std::string> bindings_used;  // placeholder -> value digest
    std::string template_name;
};

/// Substitutes every placeholder. Extra bindings are ignored; a missing
/// one raises Error{missing_placeholder} naming it. Binding values are
/// inserted verbatim (single pass; values are never re-scanned).
RenderedPrompt render_prompt(const PromptTemplate& tmpl,
                             const std::map<std::string, std::string>& bindings);

}  // namespace aprgauntlet::forge
