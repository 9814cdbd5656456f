#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace aprgauntlet {

/// Exact decimal dollar amount, stored as an integer count of picodollars
/// (1e-12 USD). Twelve fractional digits cover per-token prices derived
/// from per-million-token price tables (6 digits) at token granularity
/// (another 6) without rounding.
class Money {
public:
    static constexpr std::int64_t kScale = 1'000'000'000'000;  // pico per dollar

    constexpr Money() = default;

    static constexpr Money from_pico(std::int64_t pico) {
        Money m;
        m.pico_ = pico;
        return m;
    }

    static constexpr Money from_dollars(std::int64_t dollars) {
        return from_pico(dollars * kScale);
    }

    /// Parses a plain decimal like "1.10", "-0.00268" or "3". At most 12
    /// fractional digits; anything finer is an invalid-parameter error.
    static Money parse(std::string_view text);

    constexpr std::int64_t pico() const { return pico_; }
    constexpr bool is_zero() const { return pico_ == 0; }

    double to_double() const { return static_cast<double>(pico_) / kScale; }

    /// Decimal rendering with trailing zeros trimmed ("1.1", "0.00418", "0").
    std::string to_string() const;

    /// Fixed-width rendering with exactly `decimals` fractional digits,
    /// rounding half away from zero.
    std::string to_string_fixed(int decimals) const;

    friend constexpr Money operator+(Money a, Money b) { return from_pico(a.pico_ + b.pico_); }
    friend constexpr Money operator-(Money a, Money b) { return from_pico(a.pico_ - b.pico_); }
    constexpr Money& operator+=(Money other) {
        pico_ += other.pico_;
        return *this;
    }
    friend constexpr auto operator<=>(Money, Money) = default;

private:
    std::int64_t pico_ = 0;
};

}  // namespace aprgauntlet
