#include <aprgauntlet/gateway/cost.hpp>

#include <aprgauntlet/error.hpp>

namespace aprgauntlet::gateway {

namespace {

using int128 = __int128;
using uint128 = unsigned __int128;

// Floor of sqrt for 128-bit integers (Newton iteration).
uint128 isqrt128(uint128 n) {
    if (n == 0) return 0;
    uint128 x = n;
    uint128 y = (x + 1) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

// Nearest-integer division, half away from zero, for non-negative inputs.
std::int64_t div_round(uint128 numerator, uint128 denominator) {
    return static_cast<std::int64_t>((numerator + denominator / 2) / denominator);
}

std::int64_t token_cost_pico(long tokens, Money price_per_1m) {
    if (tokens < 0) throw Error(ErrorKind::invalid_parameter, "negative token count");
    // tokens * price / 1e6, carried out in 128 bits; sub-picodollar
    // remainders round half away from zero.
    int128 numerator = static_cast<int128>(tokens) * price_per_1m.pico();
    int128 half = numerator >= 0 ? 500'000 : -500'000;
    return static_cast<std::int64_t>((numerator + half) / 1'000'000);
}

}  // namespace

void PriceTable::set(const std::string& model_name, ModelPrice price) {
    if (price.input_per_1m < Money{} || price.output_per_1m < Money{}) {
        throw Error(ErrorKind::invalid_parameter,
                    "negative price for model '" + model_name + "'");
    }
    prices_[model_name] = price;
}

const ModelPrice& PriceTable::lookup(const std::string& model_name) const {
    auto it = prices_.find(model_name);
    if (it == prices_.end()) {
        throw Error(ErrorKind::missing_price, "no price for model '" + model_name + "'");
    }
    return it->second;
}

bool PriceTable::contains(const std::string& model_name) const {
    return prices_.count(model_name) != 0;
}

Money estimate_cost(const UsageRecord& usage, const PriceTable& prices) {
    const ModelPrice& price = prices.lookup(usage.model_name);
    return Money::from_pico(token_cost_pico(usage.prompt_tokens, price.input_per_1m) +
                            token_cost_pico(usage.completion_tokens, price.output_per_1m));
}

UsageAggregate aggregate_usage(std::span<const UsageRecord> records, const PriceTable& prices) {
    UsageAggregate agg;
    agg.n = records.size();
    if (records.empty()) return agg;

    int128 sum = 0;
    uint128 sum_sq = 0;
    for (const auto& r : records) {
        const std::int64_t cost = estimate_cost(r, prices).pico();
        sum += cost;
        sum_sq += static_cast<uint128>(static_cast<int128>(cost) * cost);
    }
    const uint128 n = agg.n;
    agg.total = Money::from_pico(static_cast<std::int64_t>(sum));
    agg.mean = Money::from_pico(div_round(static_cast<uint128>(sum), n));

    // Population variance in pico^2: (n * sum_sq - sum^2) / n^2, so
    // std = sqrt(var_num) / n. round(sqrt(v)/n) == (isqrt(4v) + n) / (2n)
    // in exact integer arithmetic (half rounds up).
    const uint128 sum_abs_sq = static_cast<uint128>(static_cast<int128>(sum) * sum);
    const uint128 var_num = n * sum_sq - sum_abs_sq;
    agg.std_dev =
        Money::from_pico(static_cast<std::int64_t>((isqrt128(4 * var_num) + n) / (2 * n)));
    return agg;
}

}  // namespace aprgauntlet::gateway
