#include <doctest.h>

#include <aprgauntlet/error.hpp>
#include <aprgauntlet/gateway/cost.hpp>

#include <random>
#include <vector>

using namespace aprgauntlet;
using namespace aprgauntlet::gateway;

namespace {

PriceTable standard_prices() {
    PriceTable prices;
    prices.set("m", {Money::parse("1.10"), Money::parse("4.40")});
    return prices;
}

UsageRecord usage(long prompt, long completion, const std::string& model = "m") {
    UsageRecord u;
    u.prompt_tokens = prompt;
    u.completion_tokens = completion;
    u.model_name = model;
    return u;
}

}  // namespace

TEST_SUITE_BEGIN("cost");

TEST_CASE("zero usage costs nothing") {
    CHECK(estimate_cost(usage(0, 0), standard_prices()).is_zero());
}

TEST_CASE("one million prompt tokens cost exactly the table price") {
    CHECK(estimate_cost(usage(1'000'000, 0), standard_prices()) == Money::parse("1.10"));
}

TEST_CASE("mixed usage: 2400 in / 350 out at (1.10, 4.40) per 1M") {
    // 2400 * 1.10 / 1e6 + 350 * 4.40 / 1e6 = 0.00264 + 0.00154 = 0.00418.
    Money cost = estimate_cost(usage(2400, 350), standard_prices());
    CHECK(cost == Money::parse("0.00418"));
    CHECK(cost.to_string() == "0.00418");
}

TEST_CASE("unknown model raises missing-price naming it") {
    try {
        estimate_cost(usage(1, 1, "ghost"), standard_prices());
        FAIL("expected missing-price");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::missing_price);
        CHECK(std::string(e.what()).find("ghost") != std::string::npos);
    }
}

TEST_CASE("negative prices are rejected") {
    PriceTable prices;
    CHECK_THROWS_AS(prices.set("m", {Money::parse("-1"), Money::parse("0")}), Error);
}

TEST_CASE("aggregate of nothing is all zeros") {
    auto agg = aggregate_usage({}, standard_prices());
    CHECK(agg.n == 0);
    CHECK(agg.mean.is_zero());
    CHECK(agg.std_dev.is_zero());
    CHECK(agg.total.is_zero());
}

TEST_CASE("two-point aggregate: costs 0.002 and 0.004") {
    PriceTable prices;
    prices.set("m", {Money::parse("1"), Money::parse("0")});
    // 2000 and 4000 prompt tokens at $1/1M give exactly $0.002 / $0.004.
    std::vector<UsageRecord> records{usage(2000, 0), usage(4000, 0)};
    auto agg = aggregate_usage(records, prices);
    CHECK(agg.mean == Money::parse("0.003"));
    CHECK(agg.std_dev == Money::parse("0.001"));
    CHECK(agg.total == Money::parse("0.006"));
    CHECK(agg.n == 2);
}

TEST_CASE("20-record fixture matches the independent arithmetic oracle") {
    // records: prompt = 137*i % 3001 + 10*i, completion = 89*i % 977 + 3*i
    // (i = 1..20); expected values recomputed externally with exact
    // decimal arithmetic and frozen here.
    std::vector<UsageRecord> records;
    for (long i = 1; i <= 20; ++i) {
        records.push_back(usage(137 * i % 3001 + 10 * i, 89 * i % 977 + 3 * i));
    }
    auto agg = aggregate_usage(records, standard_prices());
    CHECK(agg.total.pico() == 75'977'000'000);
    CHECK(agg.mean.pico() == 3'798'850'000);
    CHECK(agg.std_dev.pico() == 1'764'719'290);
    CHECK(agg.n == 20);
}

TEST_CASE("cost monotonicity over random perturbations") {
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<long> tokens(0, 200000);
    std::uniform_int_distribution<long> bump(1, 5000);
    PriceTable prices = standard_prices();
    for (int i = 0; i < 1000; ++i) {
        UsageRecord base = usage(tokens(rng), tokens(rng));
        Money before = estimate_cost(base, prices);

        UsageRecord more = base;
        if (i % 2 == 0) {
            more.prompt_tokens += bump(rng);
        } else {
            more.completion_tokens += bump(rng);
        }
        CHECK(estimate_cost(more, prices) >= before);
    }
}

TEST_SUITE_END();
