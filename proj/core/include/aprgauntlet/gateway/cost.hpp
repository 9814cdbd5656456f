#pragma once

#include <aprgauntlet/gateway/model.hpp>
#include <aprgauntlet/money.hpp>

#include <map>
#include <span>
#include <string>

namespace aprgauntlet::gateway {

struct ModelPrice {
    Money input_per_1m;   // USD per 1,000,000 prompt tokens
    Money output_per_1m;  // USD per 1,000,000 completion tokens

    bool operator==(const ModelPrice&) const = default;
};

/// Per-model price list. Prices are exact decimals; negative prices are
/// rejected.
class PriceTable {
public:
    PriceTable() = default;

    void set(const std::string& model_name, ModelPrice price);

    /// Throws Error{missing_price} naming the model.
    const ModelPrice& lookup(const std::string& model_name) const;
    bool contains(const std::string& model_name) const;

    const std::map<std::string, ModelPrice>& entries() const { return prices_; }

private:
    std::map<std::string, ModelPrice> prices_;
};

/// Exact decimal cost of one usage record:
/// prompt_tokens * input/1e6 + completion_tokens * output/1e6.
Money estimate_cost(const UsageRecord& usage, const PriceTable& prices);

struct UsageAggregate {
    Money mean;
    Money std_dev;  // population standard deviation
    Money total;
    std::size_t n = 0;

    bool operator==(const UsageAggregate&) const = default;
};

/// Mean, population std and total of per-record costs. Accumulation is
/// exact in integers; mean and std round to picodollars (half away from
/// zero) only at the end. Empty input yields all zeros.
UsageAggregate aggregate_usage(std::span<const UsageRecord> records, const PriceTable& prices);

}  // namespace aprgauntlet::gateway
