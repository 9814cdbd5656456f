#include <aprgauntlet/forge/prompt_template.hpp>

#include <aprgauntlet/digest.hpp>
#include <aprgauntlet/error.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace aprgauntlet::forge {

namespace {

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

[[noreturn]] void syntax_fail(std::size_t pos, const std::string& message) {
    throw Error(ErrorKind::template_syntax, "offset " + std::to_string(pos) + ": " + message);
}

// Walks the template, invoking callbacks for literal runs, escapes and
// placeholders. Shared between parsing and rendering so both agree on the
// grammar.
template <typename OnLiteral, typename OnPlaceholder>
void scan_template(std::string_view body, OnLiteral&& on_literal, OnPlaceholder&& on_placeholder) {
    std::size_t i = 0;
    while (i < body.size()) {
        char c = body[i];
        if (c == '{') {
            if (i + 1 < body.size() && body[i + 1] == '{') {
                on_literal('{');
                i += 2;
                continue;
            }
            std::size_t start = i + 1;
            if (start >= body.size() || !is_ident_start(body[start])) {
                syntax_fail(i, "expected placeholder identifier after '{'");
            }
            std::size_t end = start;
            while (end < body.size() && is_ident_char(body[end])) ++end;
            if (end >= body.size() || body[end] != '}') {
                syntax_fail(i, "unterminated placeholder");
            }
            on_placeholder(std::string(body.substr(start, end - start)));
            i = end + 1;
            continue;
        }
        if (c == '}') {
            if (i + 1 < body.size() && body[i + 1] == '}') {
                on_literal('}');
                i += 2;
                continue;
            }
            syntax_fail(i, "unbalanced '}'");
        }
        on_literal(c);
        ++i;
    }
}

}  // namespace

PromptTemplate load_template(std::string_view source, std::string name) {
    PromptTemplate tmpl;
    tmpl.name = std::move(name);
    tmpl.body = std::string(source);
    scan_template(
        source, [](char) {},
        [&](std::string placeholder) { tmpl.required_placeholders.insert(std::move(placeholder)); });
    return tmpl;
}

PromptTemplate load_template_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open template '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    auto slash = path.find_last_of('/');
    return load_template(buf.str(), slash == std::string::npos ? path : path.substr(slash + 1));
}

RenderedPrompt render_prompt(const PromptTemplate& tmpl,
                             const std::map<std::string, std::string>& bindings) {
    for (const auto& required : tmpl.required_placeholders) {
        if (bindings.count(required) == 0) {
            throw Error(ErrorKind::missing_placeholder,
                        "no binding for placeholder '" + required + "'");
        }
    }
    RenderedPrompt out;
    out.template_name = tmpl.name;
    scan_template(
        tmpl.body, [&](char c) { out.text.push_back(c); },
        [&](const std::string& placeholder) {
            const std::string& value = bindings.at(placeholder);
            out.text += value;
            out.bindings_used.emplace(placeholder, sha256_hex(value));
        });
    return out;
}

}  // namespace aprgauntlet::forge
