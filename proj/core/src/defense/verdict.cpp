#include <aprgauntlet/defense/verdict.hpp>

#include <aprgauntlet/error.hpp>
#include <aprgauntlet/forge/builtin_templates.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>

namespace aprgauntlet::defense {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(VerdictValue v) {
    switch (v) {
        case VerdictValue::ok: return "ok";
        case VerdictValue::suspicious: return "suspicious";
        case VerdictValue::problematic: return "problematic";
    }
    return "ok";
}

VerdictValue verdict_value_from_string(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "ok") return VerdictValue::ok;
    if (lower == "suspicious") return VerdictValue::suspicious;
    if (lower == "problematic") return VerdictValue::problematic;
    throw Error(ErrorKind::unparseable_verdict, "'" + std::string(s) + "' is not a verdict label");
}

forge::RenderedPrompt build_screening_prompt(const forge::AdversarialIssue& issue) {
    auto tmpl = forge::builtin_template("issue-screening");
    return forge::render_prompt(*tmpl, {{"bug_report", issue.body_markdown}});
}

namespace {

// Characters stripped from both ends of a candidate label line: markdown
// emphasis, quotes, list markers and sentence punctuation.
bool is_decoration(char c) {
    switch (c) {
        case '*': case '_': case '~': case '`': case '#': case '>': case '-':
        case ':': case '.': case ',': case ';': case '!': case '"': case '\'':
        case '(': case ')': case '[': case ']': case '{': case '}':
            return true;
        default:
            return std::isspace(static_cast<unsigned char>(c)) != 0;
    }
}

std::string strip_decoration(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_decoration(s[b])) ++b;
    while (e > b && is_decoration(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

Verdict parse_verdict_first_line(std::string_view text) {
    std::size_t pos = 0;
    std::string first_line;
    std::size_t rest_start = text.size();
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        std::string stripped = strip_decoration(line);
        if (!stripped.empty()) {
            first_line = std::move(stripped);
            rest_start = pos;
            break;
        }
    }
    if (first_line.empty()) {
        throw Error(ErrorKind::unparseable_verdict, "response has no non-empty line");
    }
    Verdict verdict;
    verdict.value = verdict_value_from_string(first_line);

    std::string_view rest = text.substr(rest_start);
    std::size_t b = 0;
    std::size_t e = rest.size();
    while (b < e && std::isspace(static_cast<unsigned char>(rest[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(rest[e - 1]))) --e;
    verdict.summary = std::string(rest.substr(b, e - b));
    return verdict;
}

Verdict parse_structured_verdict(std::string_view json_payload) {
    ordered_json j = ordered_json::parse(json_payload, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw Error(ErrorKind::schema, "structured verdict: payload is not a JSON object");
    }
    if (!j.contains("result")) {
        throw Error(ErrorKind::schema, "structured verdict: missing 'result' field");
    }
    if (!j["result"].is_string()) {
        throw Error(ErrorKind::schema, "structured verdict: 'result' must be a string");
    }
    Verdict verdict;
    try {
        verdict.value = verdict_value_from_string(j["result"].get<std::string>());
    } catch (const Error&) {
        throw Error(ErrorKind::schema, "structured verdict: invalid 'result' value '" +
                                           j["result"].get<std::string>() + "'");
    }
    if (j.contains("summary")) {
        if (!j["summary"].is_string()) {
            throw Error(ErrorKind::schema, "structured verdict: 'summary' must be a string");
        }
        verdict.summary = j["summary"].get<std::string>();
    }
    return verdict;
}

}  // namespace aprgauntlet::defense
