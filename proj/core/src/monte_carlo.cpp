#include <cmath>
#include <numeric>

#include "quadsemi/dynamics.hpp"
#include "quadsemi/error.hpp"

namespace quadsemi::dynamics {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer; a bijective mixer used as a counter-based generator.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Draw number `step` of the stream owned by `trial`.
double uniform01(std::uint64_t seed, std::uint64_t trial, std::uint64_t step) {
  const std::uint64_t key = mix64(seed ^ mix64(trial + kGolden));
  const std::uint64_t bits = mix64(key + (step + 1) * kGolden);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

SequenceSampler::SequenceSampler(std::vector<double> w, std::uint64_t s) : weights(std::move(w)), seed(s) {
  if (weights.empty()) throw ContractError("sampler needs at least one weight");
  double total = 0.0;
  for (const double x : weights) {
    if (!std::isfinite(x) || x <= 0.0) throw ContractError("sampler weights must be positive and finite");
    total += x;
  }
  for (double& x : weights) x /= total;
}

SequenceSampler SequenceSampler::uniform(std::size_t generators, std::uint64_t seed) {
  return SequenceSampler(std::vector<double>(generators, 1.0), seed);
}

Word sample_word(const SequenceSampler& sampler, std::size_t depth, std::uint64_t trial) {
  Word w;
  w.indices.reserve(depth);
  for (std::size_t k = 0; k < depth; ++k) {
    const double u = uniform01(sampler.seed, trial, k);
    double cumulative = 0.0;
    std::size_t pick = sampler.weights.size() - 1;
    for (std::size_t i = 0; i + 1 < sampler.weights.size(); ++i) {
      cumulative += sampler.weights[i];
      if (u < cumulative) {
        pick = i;
        break;
      }
    }
    w.indices.push_back(pick);
  }
  return w;
}

MonteCarloEstimate monte_carlo_stability(const GeneratorSet& gens, const SequenceSampler& sampler,
                                         std::size_t depth, std::uint64_t trials, Parallelism par) {
  if (trials < 1) throw ContractError("monte_carlo_stability: trials must be at least 1");
  if (depth < 1) throw ContractError("monte_carlo_stability: depth must be at least 1");
  if (sampler.weights.size() != gens.size()) {
    throw ContractError("monte_carlo_stability: one weight per generator required");
  }
  const auto counts = parallel_chunks(static_cast<std::size_t>(trials), par, [&](std::size_t b, std::size_t e) {
    std::uint64_t hits = 0;
    for (std::size_t t = b; t < e; ++t) {
      if (stability_certificate(gens, sample_word(sampler, depth, t)).certified()) ++hits;
    }
    return hits;
  });
  MonteCarloEstimate est;
  est.trials = trials;
  est.square_free = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  est.estimate = static_cast<double>(est.square_free) / static_cast<double>(trials);
  est.standard_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
  return est;
}

}  // namespace quadsemi::dynamics
