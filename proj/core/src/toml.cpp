#include <aprgauntlet/toml.hpp>

#include <aprgauntlet/error.hpp>

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace aprgauntlet::toml {

namespace {

[[noreturn]] void type_error(const char* wanted, Value::Type got) {
    static const char* names[] = {"string", "integer", "float", "boolean", "array", "table"};
    throw Error(ErrorKind::schema, std::string("expected ") + wanted + ", found " +
                                       names[static_cast<int>(got)]);
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Value parse() {
        Value root{Table{}};
        current_ = &root.as_table();
        while (!at_end()) {
            skip_ws_and_comments_to_content();
            if (at_end()) break;
            if (peek() == '[') {
                parse_header(root);
            } else {
                parse_keyval(*current_);
                expect_line_end();
            }
        }
        return root;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    Table* current_ = nullptr;
    // Paths already opened with an explicit [header]; duplicates are errors.
    std::vector<std::string> defined_headers_;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char peek_at(std::size_t off) const {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw Error(ErrorKind::parse, "line " + std::to_string(line_) + ": " + message);
    }

    void skip_inline_ws() {
        while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
    }

    void skip_comment() {
        while (!at_end() && peek() != '\n') ++pos_;
    }

    // Skips blank lines and comments until the next content character.
    void skip_ws_and_comments_to_content() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                skip_comment();
            } else {
                break;
            }
        }
    }

    void expect_line_end() {
        skip_inline_ws();
        if (at_end()) return;
        if (peek() == '#') skip_comment();
        if (at_end()) return;
        if (peek() == '\r') advance();
        if (at_end()) return;
        if (peek() != '\n') fail("unexpected trailing characters after value");
        advance();
    }

    // --- keys -------------------------------------------------------------

    std::string parse_key_part() {
        skip_inline_ws();
        if (at_end()) fail("expected key");
        if (peek() == '"') return parse_basic_string();
        std::string key;
        while (!at_end()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
                key.push_back(c);
                ++pos_;
            } else {
                break;
            }
        }
        if (key.empty()) fail("expected key");
        return key;
    }

    std::vector<std::string> parse_dotted_key() {
        std::vector<std::string> parts{parse_key_part()};
        skip_inline_ws();
        while (!at_end() && peek() == '.') {
            advance();
            parts.push_back(parse_key_part());
            skip_inline_ws();
        }
        return parts;
    }

    // --- headers ----------------------------------------------------------

    void parse_header(Value& root) {
        advance();  // '['
        bool array_of_tables = !at_end() && peek() == '[';
        if (array_of_tables) advance();

        auto path = parse_dotted_key();
        skip_inline_ws();
        if (at_end() || peek() != ']') fail("expected ']' in table header");
        advance();
        if (array_of_tables) {
            if (at_end() || peek() != ']') fail("expected ']]' in array-of-tables header");
            advance();
        }
        expect_line_end();

        Table* table = &root.as_table();
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            table = &descend(*table, path[i]);
        }
        const std::string& leaf = path.back();

        if (array_of_tables) {
            auto it = table->find(leaf);
            if (it == table->end()) {
                it = table->emplace(leaf, Value{Array{}}).first;
            } else if (!it->second.is_array()) {
                fail("key '" + leaf + "' is not an array of tables");
            }
            it->second.as_array().emplace_back(Table{});
            current_ = &it->second.as_array().back().as_table();
        } else {
            std::string joined;
            for (const auto& p : path) joined += p + ".";
            for (const auto& seen : defined_headers_) {
                if (seen == joined) fail("table '" + path.back() + "' defined twice");
            }
            defined_headers_.push_back(joined);
            current_ = &descend(*table, leaf);
        }
    }

    Table& descend(Table& table, const std::string& key) {
        auto it = table.find(key);
        if (it == table.end()) {
            it = table.emplace(key, Value{Table{}}).first;
        } else if (it->second.is_array()) {
            // [a.b] after [[a]] targets the latest array element.
            if (it->second.as_array().empty() || !it->second.as_array().back().is_table()) {
                fail("key '" + key + "' is not a table");
            }
            return it->second.as_array().back().as_table();
        } else if (!it->second.is_table()) {
            fail("key '" + key + "' is not a table");
        }
        return it->second.as_table();
    }

    // --- key/value pairs --------------------------------------------------

    void parse_keyval(Table& into) {
        auto path = parse_dotted_key();
        skip_inline_ws();
        if (at_end() || peek() != '=') fail("expected '=' after key");
        advance();
        skip_inline_ws();
        Value value = parse_value();

        Table* table = &into;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            table = &descend(*table, path[i]);
        }
        if (table->count(path.back()) != 0) fail("duplicate key '" + path.back() + "'");
        table->emplace(path.back(), std::move(value));
    }

    // --- values -------------------------------------------------------------

    Value parse_value() {
        if (at_end()) fail("expected value");
        char c = peek();
        if (c == '"') {
            if (peek_at(1) == '"' && peek_at(2) == '"') return Value{parse_multiline_string()};
            return Value{parse_basic_string()};
        }
        if (c == '\'') return Value{parse_literal_string()};
        if (c == '[') return parse_array();
        if (c == '{') return parse_inline_table();
        if (text_.compare(pos_, 4, "true") == 0 && !is_bare_char(peek_at(4))) {
            pos_ += 4;
            return Value{true};
        }
        if (text_.compare(pos_, 5, "false") == 0 && !is_bare_char(peek_at(5))) {
            pos_ += 5;
            return Value{false};
        }
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            return parse_number();
        }
        fail(std::string("unexpected character '") + c + "' in value");
    }

    static bool is_bare_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    std::string parse_basic_string() {
        advance();  // opening quote
        std::string out;
        while (true) {
            if (at_end()) fail("unterminated string");
            char c = advance();
            if (c == '"') break;
            if (c == '\n') fail("newline in single-line string");
            if (c == '\\') {
                if (at_end()) fail("unterminated escape");
                char e = advance();
                switch (e) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case 'r': out.push_back('\r'); break;
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    case 'u': out += parse_unicode_escape(4); break;
                    case 'U': out += parse_unicode_escape(8); break;
                    default: fail(std::string("unsupported escape '\\") + e + "'");
                }
            } else {
                out.push_back(c);
            }
        }
        return out;
    }

    std::string parse_literal_string() {
        advance();
        std::string out;
        while (true) {
            if (at_end()) fail("unterminated literal string");
            char c = advance();
            if (c == '\'') break;
            if (c == '\n') fail("newline in single-line string");
            out.push_back(c);
        }
        return out;
    }

    std::string parse_multiline_string() {
        pos_ += 3;
        // A newline immediately after the opening delimiter is trimmed.
        if (!at_end() && peek() == '\r') advance();
        if (!at_end() && peek() == '\n') advance();
        std::string out;
        while (true) {
            if (at_end()) fail("unterminated multiline string");
            if (peek() == '"' && peek_at(1) == '"' && peek_at(2) == '"') {
                pos_ += 3;
                break;
            }
            char c = advance();
            if (c == '\\') {
                if (at_end()) fail("unterminated escape");
                char e = peek();
                if (e == '\n' || e == '\r' || e == ' ' || e == '\t') {
                    // Line-ending backslash: skip whitespace through the newline.
                    while (!at_end() &&
                           (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n')) {
                        advance();
                    }
                    continue;
                }
                advance();
                switch (e) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case 'r': out.push_back('\r'); break;
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    case 'u': out += parse_unicode_escape(4); break;
                    case 'U': out += parse_unicode_escape(8); break;
                    default: fail(std::string("unsupported escape '\\") + e + "'");
                }
            } else {
                out.push_back(c);
            }
        }
        return out;
    }

    std::string parse_unicode_escape(int digits) {
        std::uint32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
            if (at_end()) fail("unterminated unicode escape");
            char c = advance();
            cp <<= 4;
            if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
            else fail("invalid unicode escape digit");
        }
        std::string out;
        if (cp <= 0x7f) {
            out.push_back(static_cast<char>(cp));
        } else if (cp <= 0x7ff) {
            out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
        } else if (cp <= 0xffff) {
            out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
        } else {
            out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
        }
        return out;
    }

    Value parse_number() {
        std::size_t start = pos_;
        if (peek() == '+' || peek() == '-') advance();
        bool is_float = false;
        while (!at_end()) {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '_') {
                ++pos_;
            } else if (c == '.' || c == 'e' || c == 'E') {
                is_float = true;
                ++pos_;
                if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
            } else {
                break;
            }
        }
        std::string raw(text_.substr(start, pos_ - start));
        std::string digits;
        digits.reserve(raw.size());
        for (char c : raw) {
            if (c != '_') digits.push_back(c);
        }
        if (is_float) {
            char* end = nullptr;
            double v = std::strtod(digits.c_str(), &end);
            if (end == nullptr || *end != '\0') fail("invalid float '" + raw + "'");
            return Value{v, digits};
        }
        std::int64_t v = 0;
        const char* first = digits.c_str();
        auto [p, ec] = std::from_chars(first, first + digits.size(), v);
        if (ec != std::errc{} || p != first + digits.size()) fail("invalid integer '" + raw + "'");
        return Value{v, digits};
    }

    Value parse_array() {
        advance();  // '['
        Array items;
        while (true) {
            skip_ws_and_comments_to_content();
            if (at_end()) fail("unterminated array");
            if (peek() == ']') {
                advance();
                break;
            }
            items.push_back(parse_value());
            skip_ws_and_comments_to_content();
            if (at_end()) fail("unterminated array");
            if (peek() == ',') {
                advance();
            } else if (peek() != ']') {
                fail("expected ',' or ']' in array");
            }
        }
        return Value{std::move(items)};
    }

    Value parse_inline_table() {
        advance();  // '{'
        Value table{Table{}};
        skip_inline_ws();
        if (!at_end() && peek() == '}') {
            advance();
            return table;
        }
        while (true) {
            parse_keyval(table.as_table());
            skip_inline_ws();
            if (at_end()) fail("unterminated inline table");
            char c = advance();
            if (c == '}') break;
            if (c != ',') fail("expected ',' or '}' in inline table");
            skip_inline_ws();
        }
        return table;
    }
};

}  // namespace

const std::string& Value::as_string() const {
    if (!is_string()) type_error("string", type_);
    return string_;
}

std::int64_t Value::as_integer() const {
    if (!is_integer()) type_error("integer", type_);
    return int_;
}

double Value::as_float() const {
    if (is_integer()) return static_cast<double>(int_);
    if (!is_float()) type_error("float", type_);
    return float_;
}

bool Value::as_bool() const {
    if (!is_bool()) type_error("boolean", type_);
    return bool_;
}

const Array& Value::as_array() const {
    if (!is_array()) type_error("array", type_);
    return *array_;
}

const Table& Value::as_table() const {
    if (!is_table()) type_error("table", type_);
    return *table_;
}

Array& Value::as_array() {
    if (!is_array()) type_error("array", type_);
    return *array_;
}

Table& Value::as_table() {
    if (!is_table()) type_error("table", type_);
    return *table_;
}

const std::string& Value::raw_number() const {
    if (!is_number()) type_error("number", type_);
    return raw_;
}

Value parse(std::string_view text) {
    return Parser(text).parse();
}

Value parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const Value* find(const Table& table, const std::string& key) {
    auto it = table.find(key);
    return it == table.end() ? nullptr : &it->second;
}

const Value& require(const Table& table, const std::string& key) {
    const Value* v = find(table, key);
    if (v == nullptr) throw Error(ErrorKind::schema, "missing key '" + key + "'");
    return *v;
}

const std::string& require_string(const Table& table, const std::string& key) {
    return require(table, key).as_string();
}

}  // namespace aprgauntlet::toml
