#include <doctest.h>

#include <aprgauntlet/context/lsh_index.hpp>
#include <aprgauntlet/context/minhash.hpp>
#include <aprgauntlet/error.hpp>

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace aprgauntlet;
using namespace aprgauntlet::context;

TEST_SUITE_BEGIN("minhash-lsh");

TEST_CASE("shingle by definition") {
    CHECK(shingle("abab", 2) == std::set<std::string>{"ab", "ba"});
    CHECK(shingle("", 3).empty());
    // Whitespace runs collapse before shingling.
    CHECK(shingle("a  b", 3) == std::set<std::string>{"a b"});
    CHECK(shingle("ab", 5) == std::set<std::string>{"ab"});  // shorter than k
    CHECK_THROWS_AS(shingle("abc", 0), Error);
}

TEST_CASE("shingle normalizes all whitespace kinds") {
    CHECK(shingle("a\t\n b", 3) == shingle("a b", 3));
}

TEST_CASE("minhash determinism and self similarity") {
    auto s = shingle("the quick brown fox jumps over the lazy dog", 3);
    auto a = minhash_signature(s, 64, 3, 7);
    auto b = minhash_signature(s, 64, 3, 7);
    CHECK(a == b);
    CHECK(estimate_jaccard(a, b) == 1.0);
}

TEST_CASE("empty set signature is the max-hash sentinel") {
    auto sig = minhash_signature({}, 16, 4, 1);
    for (auto v : sig.values) CHECK(v == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("incompatible signatures refuse to compare") {
    auto s = shingle("abcdef", 2);
    auto a = minhash_signature(s, 32, 2, 1);
    auto b = minhash_signature(s, 32, 2, 2);   // different seed
    auto c = minhash_signature(s, 64, 2, 1);   // different num_perm
    CHECK_THROWS_AS(estimate_jaccard(a, b), Error);
    CHECK_THROWS_AS(estimate_jaccard(a, c), Error);
}

TEST_CASE("estimate tracks a constructed jaccard of 0.25") {
    // |A| = |B| = 50 with 20 shared elements: J = 20 / 80 = 0.25.
    std::set<std::string> a, b;
    for (int i = 0; i < 20; ++i) {
        a.insert("shared" + std::to_string(i));
        b.insert("shared" + std::to_string(i));
    }
    for (int i = 0; i < 30; ++i) {
        a.insert("only-a" + std::to_string(i));
        b.insert("only-b" + std::to_string(i));
    }
    REQUIRE(oracle::exact_jaccard(a, b) == doctest::Approx(0.25));
    // Tolerance: three binomial stds at num_perm = 128,
    // sqrt(0.25 * 0.75 / 128) * 3 ~ 0.115; 0.15 leaves margin.
    auto sa = minhash_signature(a, 128, 5, 42);
    auto sb = minhash_signature(b, 128, 5, 42);
    CHECK(std::abs(estimate_jaccard(sa, sb) - 0.25) <= 0.15);
}

TEST_CASE("estimator mean absolute error stays within the statistical bound") {
    std::mt19937_64 rng(20250710);
    double total_err = 0.0;
    const int pairs = 200;
    for (int i = 0; i < pairs; ++i) {
        auto a = oracle::random_token_set(rng, 30 + i % 40, 400);
        auto b = oracle::random_token_set(rng, 30 + (i * 7) % 40, 400);
        // Push overlap around by merging a slice of a into b.
        std::size_t take = i % 20;
        for (const auto& x : a) {
            if (take-- == 0) break;
            b.insert(x);
        }
        auto sa = minhash_signature(a, 128, 5, 99);
        auto sb = minhash_signature(b, 128, 5, 99);
        total_err += std::abs(estimate_jaccard(sa, sb) - oracle::exact_jaccard(a, b));
    }
    CHECK(total_err / pairs <= 0.08);
}

TEST_CASE("lsh params validate") {
    LshParams params;
    params.num_perm = 128;
    params.bands = 16;
    params.rows_per_band = 9;  // 144 != 128
    CHECK_THROWS_AS(params.validate(), Error);
    params.rows_per_band = 8;
    CHECK_NOTHROW(params.validate());
}

TEST_CASE("empty corpus yields empty queries") {
    LshParams params;
    auto index = LshIndex::build({}, params);
    auto probe = minhash_of_text("anything", params.num_perm, params.shingle_k, params.seed);
    CHECK(index.query(probe).empty());
}

TEST_CASE("single document matches itself") {
    LshParams params;
    auto index = LshIndex::build({{"doc1", "some interesting content here"}}, params);
    auto probe =
        minhash_of_text("some interesting content here", params.num_perm, params.shingle_k,
                        params.seed);
    auto hits = index.query(probe);
    CHECK(hits.count("doc1") == 1);
}

TEST_CASE("near-duplicate pair collides across seeds") {
    // Jaccard ~0.9 pair at 16 bands x 8 rows: collision probability
    // 1 - (1 - 0.9^8)^16 ~ 0.9998 per seed; insist on collision for all
    // ten seeds.
    std::string base;
    for (int i = 0; i < 400; ++i) base += "token" + std::to_string(i) + " ";
    std::string near = base + "tail0 tail1 tail2 ";  // small suffix delta

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        LshParams params;
        params.seed = seed;
        std::vector<IndexableText> docs{{"near-a", base}, {"near-b", near}};
        for (int i = 0; i < 18; ++i) {
            docs.push_back({"filler" + std::to_string(i),
                            "completely different text block " + std::to_string(i * 7919)});
        }
        auto index = LshIndex::build(docs, params);
        auto probe = minhash_of_text(base, params.num_perm, params.shingle_k, params.seed);
        auto hits = index.query(probe);
        CHECK_MESSAGE(hits.count("near-b") == 1, "seed ", seed);
    }
}

TEST_CASE("query equals the brute-force band-collision oracle") {
    std::mt19937_64 rng(424242);
    LshParams params;
    params.num_perm = 32;
    params.bands = 8;
    params.rows_per_band = 4;
    params.shingle_k = 3;

    std::vector<IndexableText> docs;
    for (int i = 0; i < 60; ++i) {
        docs.push_back({"d" + std::to_string(i), oracle::random_string(rng, 80)});
    }
    auto index = LshIndex::build(docs, params);
    for (int probe_i = 0; probe_i < 25; ++probe_i) {
        auto probe = minhash_of_text(oracle::random_string(rng, 80), params.num_perm,
                                     params.shingle_k, params.seed);
        CHECK(index.query(probe) == oracle::brute_force_band_collisions(index, probe));
    }
    // Indexed documents must at minimum find themselves.
    for (const auto& doc : docs) {
        auto probe =
            minhash_of_text(doc.text, params.num_perm, params.shingle_k, params.seed);
        CHECK(index.query(probe) == oracle::brute_force_band_collisions(index, probe));
        CHECK(index.query(probe).count(doc.id) == 1);
    }
}

TEST_CASE("probe parameter mismatch is an incompatible-signature error") {
    LshParams params;
    auto index = LshIndex::build({{"doc", "text"}}, params);
    auto probe = minhash_of_text("text", 64, params.shingle_k, params.seed);
    CHECK_THROWS_AS(index.query(probe), Error);
}

TEST_CASE("duplicate document ids are rejected") {
    LshParams params;
    CHECK_THROWS_AS(LshIndex::build({{"dup", "a"}, {"dup", "b"}}, params), Error);
}

TEST_SUITE_END();
