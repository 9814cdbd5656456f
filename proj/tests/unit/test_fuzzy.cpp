#include <doctest.h>

#include <aprgauntlet/context/fuzzy.hpp>

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace aprgauntlet::context;

TEST_SUITE_BEGIN("fuzzy");

TEST_CASE("fixed points") {
    CHECK(fuzzy_ratio("abc", "abc") == 100.0);
    CHECK(fuzzy_ratio("", "abc") == 0.0);
    CHECK(fuzzy_ratio("", "") == 100.0);
    // kitten/sitting: LCS 4, indel distance 5, 100 * (1 - 5/13).
    CHECK(indel_distance("kitten", "sitting") == 5);
    CHECK(std::abs(fuzzy_ratio("kitten", "sitting") - 61.54) < 0.01);
}

TEST_CASE("matches the DP oracle on short strings") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        auto a = oracle::random_string(rng, 64);
        auto b = oracle::random_string(rng, 64);
        CHECK(lcs_length(a, b) == oracle::dp_lcs(a, b));
        CHECK(fuzzy_ratio(a, b) == oracle::dp_fuzzy_ratio(a, b));
    }
}

TEST_CASE("matches the DP oracle across the 64-char block boundary") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 120; ++i) {
        std::uniform_int_distribution<std::size_t> len(50, 300);
        auto a = oracle::random_string(rng, len(rng));
        auto b = oracle::random_string(rng, len(rng));
        CHECK(lcs_length(a, b) == oracle::dp_lcs(a, b));
    }
    // Exact multiples of the word size.
    std::string a64(64, 'x');
    std::string a128(128, 'x');
    CHECK(lcs_length(a64, a64) == 64);
    CHECK(lcs_length(a128, a128) == 128);
    CHECK(lcs_length(a128, a64) == 64);
}

TEST_CASE("symmetry, identity and range properties") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        auto a = oracle::random_string(rng, 48);
        auto b = oracle::random_string(rng, 48);
        const double r = fuzzy_ratio(a, b);
        CHECK(r == fuzzy_ratio(b, a));
        CHECK(r >= 0.0);
        CHECK(r <= 100.0);
        CHECK(fuzzy_ratio(a, a) == 100.0);
    }
}

TEST_SUITE_END();
