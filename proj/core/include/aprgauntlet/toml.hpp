#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace aprgauntlet::toml {

/// Minimal TOML reader covering the subset campaign configs use: tables,
/// arrays of tables, dotted keys, basic and multiline basic strings,
/// integers, floats, booleans, arrays and inline tables. Numbers keep
/// their source lexeme so money values can be re-parsed as exact decimals.
class Value;

using Array = std::vector<Value>;
using Table = std::map<std::string, Value>;

class Value {
public:
    enum class Type { string, integer, floating, boolean, array, table };

    Value() : Value(Table{}) {}
    explicit Value(std::string s) : type_(Type::string), string_(std::move(s)) {}
    Value(std::int64_t v, std::string raw)
        : type_(Type::integer), int_(v), raw_(std::move(raw)) {}
    Value(double v, std::string raw) : type_(Type::floating), float_(v), raw_(std::move(raw)) {}
    explicit Value(bool b) : type_(Type::boolean), bool_(b) {}
    explicit Value(Array a) : type_(Type::array), array_(std::make_shared<Array>(std::move(a))) {}
    explicit Value(Table t) : type_(Type::table), table_(std::make_shared<Table>(std::move(t))) {}

    Type type() const { return type_; }
    bool is_string() const { return type_ == Type::string; }
    bool is_integer() const { return type_ == Type::integer; }
    bool is_float() const { return type_ == Type::floating; }
    bool is_number() const { return is_integer() || is_float(); }
    bool is_bool() const { return type_ == Type::boolean; }
    bool is_array() const { return type_ == Type::array; }
    bool is_table() const { return type_ == Type::table; }

    /// Typed accessors; throw Error{schema} when the type does not match.
    const std::string& as_string() const;
    std::int64_t as_integer() const;
    double as_float() const;
    bool as_bool() const;
    const Array& as_array() const;
    const Table& as_table() const;
    Array& as_array();
    Table& as_table();

    /// Source lexeme of a number ("1.10"); lets callers parse exact decimals.
    const std::string& raw_number() const;

private:
    Type type_;
    std::string string_;
    std::int64_t int_ = 0;
    double float_ = 0.0;
    bool bool_ = false;
    std::string raw_;
    std::shared_ptr<Array> array_;
    std::shared_ptr<Table> table_;
};

/// Parses TOML text into a root table. Throws Error{parse, "line N: ..."}.
Value parse(std::string_view text);

/// Reads and parses a TOML file. Throws Error{io} when unreadable.
Value parse_file(const std::string& path);

/// Lookup helper: returns nullptr when `key` is absent.
const Value* find(const Table& table, const std::string& key);

/// Lookup helpers that throw Error{schema, ...} naming the missing key.
const Value& require(const Table& table, const std::string& key);
const std::string& require_string(const Table& table, const std::string& key);

}  // namespace aprgauntlet::toml
