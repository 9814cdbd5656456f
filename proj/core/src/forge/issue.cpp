#include <aprgauntlet/forge/issue.hpp>

#include <aprgauntlet/digest.hpp>
#include <aprgauntlet/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace aprgauntlet::forge {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kRoleMarker = "<|start_of_role|>user<|end_of_role|>";

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string extract_title(const std::string& body) {
    std::istringstream in(body);
    std::string line;
    std::string first_nonempty;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            std::size_t h = 0;
            while (h < t.size() && t[h] == '#') ++h;
            std::string heading = trim(t.substr(h));
            if (!heading.empty()) return heading.substr(0, 120);
        }
        if (first_nonempty.empty()) first_nonempty = t;
    }
    return first_nonempty.substr(0, std::min<std::size_t>(first_nonempty.size(), 120));
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

gateway::ChatRequest to_chat_request(const RenderedPrompt& prompt,
                                     const gateway::ModelSpec& model, int max_output_chars) {
    gateway::ChatRequest request;
    request.model = model;
    request.max_output_chars = max_output_chars;
    std::size_t marker = prompt.text.find(kRoleMarker);
    if (marker == std::string::npos) {
        request.messages.push_back({gateway::Role::user, prompt.text});
    } else {
        std::string system = prompt.text.substr(0, marker);
        std::string user = prompt.text.substr(marker + kRoleMarker.size());
        if (!user.empty() && user.front() == '\n') user.erase(user.begin());
        if (!system.empty() && system.back() == '\n') system.pop_back();
        request.messages.push_back({gateway::Role::system, std::move(system)});
        request.messages.push_back({gateway::Role::user, std::move(user)});
    }
    return request;
}

GeneratedIssue generate_issue(const RenderedPrompt& prompt, const AttackKind& kind,
                              const gateway::ModelSpec& model, gateway::Gateway& gw,
                              const GenerateOptions& options) {
    gateway::ChatRequest request = to_chat_request(prompt, model, options.max_output_chars);
    gateway::Completion completion = gw.complete(request);
    if (completion.text.empty()) {
        throw Error(ErrorKind::generation_failed,
                    "model '" + model.name + "' returned an empty completion");
    }

    GeneratedIssue out;
    out.usage = completion.usage;
    AdversarialIssue& issue = out.issue;
    issue.body_markdown = completion.text;
    issue.title = extract_title(issue.body_markdown);
    issue.attack_kind = kind;
    issue.seed_ref = options.seed_ref;
    issue.generator_model = model.name;
    issue.created_at = options.created_at;
    issue.provenance.template_name = prompt.template_name;
    issue.provenance.context_digest = sha256_hex(prompt.text);
    issue.provenance.completion_digest = sha256_hex(completion.text);
    issue.issue_id =
        "iss-" + short_digest(prompt.template_name + "\x1f" + options.seed_ref + "\x1f" +
                              prompt.text + "\x1f" + completion.text);
    return out;
}

LintReport lint_issue(const AdversarialIssue& issue, const LintOptions& options) {
    LintReport report;
    const std::string body = lowercase(issue.body_markdown);

    if (body.size() < options.min_body_chars) {
        report.reasons.push_back("too short");
    }
    auto any_cue = [&](const std::vector<std::string>& cues) {
        return std::any_of(cues.begin(), cues.end(), [&](const std::string& cue) {
            return body.find(lowercase(cue)) != std::string::npos;
        });
    };
    if (!any_cue(options.reproduction_cues)) {
        report.reasons.push_back("no reproduction cue");
    }
    if (!any_cue(options.expectation_cues)) {
        report.reasons.push_back("no expected/actual phrasing");
    }
    if (options.require_code_fence && body.find("```") == std::string::npos) {
        report.reasons.push_back("no code fence");
    }
    report.pass = report.reasons.empty();
    return report;
}

std::string AdversarialIssue::to_json() const {
    ordered_json j;
    j["issue_id"] = issue_id;
    j["title"] = title;
    j["body_markdown"] = body_markdown;
    j["attack_kind"] = {{"variant", std::string(to_string(attack_kind.variant))},
                        {"objective", attack_kind.objective},
                        {"automation", std::string(to_string(attack_kind.automation))}};
    j["seed_ref"] = seed_ref;
    j["generator_model"] = generator_model;
    j["created_at"] = created_at;
    j["provenance"] = {{"template_name", provenance.template_name},
                       {"context_digest", provenance.context_digest},
                       {"completion_digest", provenance.completion_digest}};
    return j.dump(2) + "\n";
}

std::string AdversarialIssue::to_markdown() const {
    std::string out = "# " + title + "\n\n";
    out += body_markdown;
    if (out.back() != '\n') out.push_back('\n');
    out += "\n---\n";
    out += "attack: " + std::string(display_name(attack_kind.variant)) +
           " | automation: " + std::string(automation_label(attack_kind.automation)) +
           " | seed: " + (seed_ref.empty() ? "-" : seed_ref) + "\n";
    return out;
}

AdversarialIssue AdversarialIssue::from_json(std::string_view text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw Error(ErrorKind::parse, "issue: not a JSON object");
    }
    AdversarialIssue issue;
    try {
        issue.issue_id = j.at("issue_id").get<std::string>();
        issue.title = j.value("title", std::string{});
        issue.body_markdown = j.at("body_markdown").get<std::string>();
        const auto& kind = j.at("attack_kind");
        issue.attack_kind =
            AttackKind::of(attack_variant_from_string(kind.at("variant").get<std::string>()));
        issue.seed_ref = j.value("seed_ref", std::string{});
        issue.generator_model = j.value("generator_model", std::string{});
        issue.created_at = j.value("created_at", std::string{});
        const auto& prov = j.at("provenance");
        issue.provenance.template_name = prov.at("template_name").get<std::string>();
        issue.provenance.context_digest = prov.at("context_digest").get<std::string>();
        issue.provenance.completion_digest = prov.at("completion_digest").get<std::string>();
    } catch (const ordered_json::exception& e) {
        throw Error(ErrorKind::parse, std::string("issue: ") + e.what());
    }
    if (issue.body_markdown.empty()) {
        throw Error(ErrorKind::validation, "issue body must not be empty");
    }
    return issue;
}

}  // namespace aprgauntlet::forge
