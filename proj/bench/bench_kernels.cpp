#include <benchmark/benchmark.h>

#include "rankeval/pipeline.hpp"
#include "rankeval/synth.hpp"

using namespace rankeval;

namespace {

const Corpus& corpus_of(int universities) {
  static std::map<int, Corpus> cache;
  auto it = cache.find(universities);
  if (it == cache.end()) {
    SynthParams p;
    p.universities = universities;
    p.udas = 6;
    p.sds_per_uda = 4;
    it = cache.emplace(universities, generate_synthetic(p).corpus).first;
  }
  return it->second;
}

Execution execution_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void BM_CreditShares(benchmark::State& state) {
  const auto& corpus = corpus_of(static_cast<int>(state.range(0)));
  const auto baselines = compute_baselines(corpus);
  for (auto _ : state) benchmark::DoNotOptimize(credit_shares(corpus, baselines, execution_of(state)));
  state.counters["publications"] = static_cast<double>(corpus.publications.size());
}

void BM_SdsProductivity(benchmark::State& state) {
  const auto& corpus = corpus_of(static_cast<int>(state.range(0)));
  const auto shares = credit_shares(corpus, compute_baselines(corpus), Execution::serial);
  const auto eligibility = filter_eligible_sds(corpus, shares);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sds_productivity(shares, corpus.staff, corpus.window, eligibility, execution_of(state)));
  }
  state.counters["shares"] = static_cast<double>(shares.size());
}

void BM_CorrelationMatrix(benchmark::State& state) {
  const auto& corpus = corpus_of(static_cast<int>(state.range(0)));
  std::vector<RankingList> lists;
  for (const auto& [name, ind] : corpus.indicators) lists.push_back(build_ranking(name, ind.values, ind.direction));
  lists.push_back(ranking_from_scores(run_scoring(corpus).university, kWholeUniversityUnit, "P"));
  // Extra rankings so the matrix has enough cells to split.
  for (int i = 0; i < 12; ++i) {
    auto copy = lists[static_cast<std::size_t>(i) % lists.size()];
    copy.label += "_" + std::to_string(i);
    lists.push_back(std::move(copy));
  }
  for (auto _ : state) benchmark::DoNotOptimize(correlation_matrix(lists, execution_of(state)));
}

void args(benchmark::internal::Benchmark* b) {
  for (int universities : {50, 200}) {
    for (int parallel : {0, 1}) b->Args({universities, parallel});
  }
  b->ArgNames({"universities", "parallel"});
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_CreditShares)->Apply(args);
BENCHMARK(BM_SdsProductivity)->Apply(args);
BENCHMARK(BM_CorrelationMatrix)->Apply(args);

BENCHMARK_MAIN();
