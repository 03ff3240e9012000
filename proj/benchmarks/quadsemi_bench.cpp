#include <benchmark/benchmark.h>

#include "quadsemi/diophantine.hpp"
#include "quadsemi/dynamics.hpp"
#include "quadsemi/exceptional.hpp"
#include "quadsemi/heights.hpp"
#include "quadsemi/oracle.hpp"
#include "quadsemi/portraits.hpp"

using namespace quadsemi;

static void BM_ScanWords(benchmark::State& state) {
  const dynamics::GeneratorSet gens({-4, -12});
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::scan_words(gens, len));
  state.SetItemsProcessed(state.iterations() * ((std::int64_t{2} << len) - 2));
}
BENCHMARK(BM_ScanWords)->Arg(8)->Arg(12);

static void BM_MonteCarlo(benchmark::State& state) {
  const dynamics::GeneratorSet gens({-4, -12});
  const auto sampler = dynamics::SequenceSampler::uniform(2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::monte_carlo_stability(gens, sampler, 10, 10000));
}
BENCHMARK(BM_MonteCarlo);

static void BM_PreperSet(benchmark::State& state) {
  for (auto _ : state)
    for (long c = -500; c <= 500; ++c) benchmark::DoNotOptimize(portraits::preper_set(Integer(c)));
}
BENCHMARK(BM_PreperSet);

static void BM_BruteForcePreper(benchmark::State& state) {
  for (auto _ : state)
    for (long c = -500; c <= 500; ++c) benchmark::DoNotOptimize(portraits::brute_force_preper(Integer(c)));
}
BENCHMARK(BM_BruteForcePreper);

static void BM_CanonicalHeight(benchmark::State& state) {
  const heights::QuadraticMap phi{3};
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(heights::canonical_height(phi, Integer(7), n));
}
BENCHMARK(BM_CanonicalHeight)->Arg(30)->Arg(200);

static void BM_IterateBound(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(heights::compute_iterate_bound(heights::QuadraticMap{-12}, 0, 30));
}
BENCHMARK(BM_IterateBound);

static void BM_ScanPairs(benchmark::State& state) {
  const long r = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(exceptional::scan_exceptional_pairs(-r, r));
}
BENCHMARK(BM_ScanPairs)->Arg(50)->Arg(100);

static void BM_SolveSystem(benchmark::State& state) {
  const auto& entry = diophantine::find_entry("case1.1");
  for (auto _ : state) benchmark::DoNotOptimize(diophantine::solve_system_bounded(entry.system, state.range(0)));
}
BENCHMARK(BM_SolveSystem)->Arg(50)->Arg(500);

static void BM_VerifyAllLemmas(benchmark::State& state) {
  for (auto _ : state)
    for (const auto& e : diophantine::registry()) benchmark::DoNotOptimize(diophantine::verify_lemma(e, 50));
}
BENCHMARK(BM_VerifyAllLemmas);

static void BM_ModularObstruction(benchmark::State& state) {
  const auto& entry = diophantine::find_entry("case3.15");
  for (auto _ : state) benchmark::DoNotOptimize(diophantine::modular_obstruction(entry, 8));
}
BENCHMARK(BM_ModularObstruction);

static void BM_OracleOctic(benchmark::State& state) {
  const dynamics::GeneratorSet gens({-4, -12});
  const auto p = dynamics::compose_word(gens, dynamics::Word{{1, 1, 0}});
  for (auto _ : state) benchmark::DoNotOptimize(oracle::is_irreducible_exact(p));
}
BENCHMARK(BM_OracleOctic);

static void BM_CrossValidate(benchmark::State& state) {
  const dynamics::GeneratorSet gens({-1, -12});
  for (auto _ : state) benchmark::DoNotOptimize(oracle::cross_validate(gens, 3));
}
BENCHMARK(BM_CrossValidate);
BENCHMARK_MAIN();
