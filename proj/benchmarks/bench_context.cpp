#include <benchmark/benchmark.h>

#include <aprgauntlet/context/diff.hpp>
#include <aprgauntlet/context/fuzzy.hpp>
#include <aprgauntlet/context/lsh_index.hpp>
#include <aprgauntlet/context/minhash.hpp>

#include <random>
#include <string>
#include <vector>

using namespace aprgauntlet::context;

namespace {

std::string synthetic_text(std::size_t len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    static const char alphabet[] = "abcdefghijklmnopqrstuvwxyz(){};._ \n";
    std::string out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) out.push_back(alphabet[rng() % (sizeof(alphabet) - 1)]);
    return out;
}

void BM_Shingle(benchmark::State& state) {
    const std::string text = synthetic_text(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(shingle(text, 5));
    }
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Shingle)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

void BM_MinHashSignature(benchmark::State& state) {
    const auto shingles = shingle(synthetic_text(static_cast<std::size_t>(state.range(0)), 2), 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(minhash_signature(shingles, 128, 5, 42));
    }
    state.counters["shingles"] = static_cast<double>(shingles.size());
}
BENCHMARK(BM_MinHashSignature)->Arg(1 << 10)->Arg(1 << 14);

void BM_LshQuery(benchmark::State& state) {
    LshParams params;
    std::vector<IndexableText> docs;
    for (int i = 0; i < state.range(0); ++i) {
        docs.push_back({"doc" + std::to_string(i), synthetic_text(2048, 100 + i)});
    }
    auto index = LshIndex::build(docs, params);
    auto probe = minhash_of_text(docs[docs.size() / 2].text, params.num_perm, params.shingle_k,
                                 params.seed);
    for (auto _ : state) {
        benchmark::DoNotOptimize(index.query(probe));
    }
}
BENCHMARK(BM_LshQuery)->Arg(64)->Arg(512);

void BM_FuzzyRatio(benchmark::State& state) {
    const std::string a = synthetic_text(static_cast<std::size_t>(state.range(0)), 3);
    std::string b = a;
    for (std::size_t i = 0; i < b.size(); i += 17) b[i] = '#';
    for (auto _ : state) {
        benchmark::DoNotOptimize(fuzzy_ratio(a, b));
    }
    state.SetBytesProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_FuzzyRatio)->Arg(64)->Arg(512)->Arg(4096);

void BM_DiffParse(benchmark::State& state) {
    std::string diff;
    for (int f = 0; f < state.range(0); ++f) {
        diff += "--- a/src/file" + std::to_string(f) + ".py\n";
        diff += "+++ b/src/file" + std::to_string(f) + ".py\n";
        diff += "@@ -1,3 +1,3 @@\n context\n-old line " + std::to_string(f) + "\n+new line " +
                std::to_string(f) + "\n context\n";
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(DiffDocument::parse(diff));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(diff.size()));
}
BENCHMARK(BM_DiffParse)->Arg(4)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
