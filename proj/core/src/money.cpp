#include <aprgauntlet/money.hpp>

#include <aprgauntlet/error.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace aprgauntlet {

namespace {

constexpr int kFracDigits = 12;

[[noreturn]] void bad_money(std::string_view text, const char* why) {
    throw Error(ErrorKind::invalid_parameter,
                "invalid money literal '" + std::string(text) + "': " + why);
}

}  // namespace

Money Money::parse(std::string_view text) {
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    if (rest.empty()) bad_money(text, "empty");

    std::int64_t whole = 0;
    std::size_t i = 0;
    bool any_digit = false;
    for (; i < rest.size() && rest[i] != '.'; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(rest[i]))) bad_money(text, "not a digit");
        any_digit = true;
        whole = whole * 10 + (rest[i] - '0');
        if (whole > 9'000'000) bad_money(text, "magnitude out of range");
    }

    std::int64_t frac = 0;
    int frac_digits = 0;
    if (i < rest.size()) {
        ++i;  // skip '.'
        for (; i < rest.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(rest[i]))) bad_money(text, "not a digit");
            any_digit = true;
            if (++frac_digits > kFracDigits) bad_money(text, "more than 12 fractional digits");
            frac = frac * 10 + (rest[i] - '0');
        }
    }
    if (!any_digit) bad_money(text, "no digits");

    for (int d = frac_digits; d < kFracDigits; ++d) frac *= 10;
    std::int64_t pico = whole * kScale + frac;
    return from_pico(negative ? -pico : pico);
}

std::string Money::to_string() const {
    std::int64_t p = pico_;
    std::string sign;
    if (p < 0) {
        sign = "-";
        p = -p;
    }
    std::int64_t whole = p / kScale;
    std::int64_t frac = p % kScale;
    std::string out = sign + std::to_string(whole);
    if (frac != 0) {
        std::string f = std::to_string(frac);
        f.insert(f.begin(), kFracDigits - f.size(), '0');
        while (!f.empty() && f.back() == '0') f.pop_back();
        out += "." + f;
    }
    return out;
}

std::string Money::to_string_fixed(int decimals) const {
    if (decimals < 0 || decimals > kFracDigits) {
        throw Error(ErrorKind::invalid_parameter, "decimals must be in [0, 12]");
    }
    std::int64_t p = pico_;
    std::string sign;
    if (p < 0) {
        sign = "-";
        p = -p;
    }
    std::int64_t drop = 1;
    for (int d = decimals; d < kFracDigits; ++d) drop *= 10;
    std::int64_t scaled = (p + drop / 2) / drop;  // half away from zero
    std::int64_t unit = 1;
    for (int d = 0; d < decimals; ++d) unit *= 10;
    std::string out = sign + std::to_string(scaled / unit);
    if (decimals > 0) {
        std::string f = std::to_string(scaled % unit);
        f.insert(f.begin(), decimals - static_cast<int>(f.size()), '0');
        out += "." + f;
    }
    return out;
}

}  // namespace aprgauntlet
