#ifndef QUADSEMI_DYNAMICS_HPP
#define QUADSEMI_DYNAMICS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quadsemi/arith.hpp"
#include "quadsemi/parallel.hpp"
#include "quadsemi/polynomial.hpp"

namespace quadsemi::dynamics {

/// The map x^2 + c.
struct QuadraticMap {
  Integer c;

  Integer operator()(const Integer& x) const { return x * x + c; }
  friend bool operator==(const QuadraticMap&, const QuadraticMap&) = default;
};

Integer evaluate(const QuadraticMap& map, const Integer& x);

/// phi^n(x); n = 0 is the identity.
Integer iterate(const QuadraticMap& map, std::size_t n, Integer x);

/// Ordered generators with pairwise distinct constants.
class GeneratorSet {
 public:
  /// Throws ContractError when empty or when two constants coincide.
  explicit GeneratorSet(std::vector<Integer> constants);

  std::size_t size() const { return maps_.size(); }
  const QuadraticMap& operator[](std::size_t i) const { return maps_.at(i); }
  const std::vector<QuadraticMap>& maps() const { return maps_; }

 private:
  std::vector<QuadraticMap> maps_;
};

/// theta_1 o ... o theta_n stored left to right; indices[0] is applied last.
struct Word {
  std::vector<std::size_t> indices;

  std::size_t size() const { return indices.size(); }
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

/// Throws ContractError when `w` is empty or references a missing generator.
void validate(const GeneratorSet& gens, const Word& w);

/// 1-based comma-separated rendering, e.g. "2,1".
std::string to_string(const Word& w);

struct AdjustedCriticalOrbit {
  /// entries[0] = -theta_1(0); entries[k-1] = theta_1(...theta_k(0)) for k >= 2.
  std::vector<Integer> entries;
};

AdjustedCriticalOrbit adjusted_critical_orbit(const GeneratorSet& gens, const Word& w);

enum class StabilityStatus { CertifiedIrreducible, Unknown };

struct StabilityVerdict {
  StabilityStatus status = StabilityStatus::CertifiedIrreducible;
  /// 1-based position of the first square entry of the adjusted critical orbit.
  std::optional<std::size_t> first_square_index;
  std::optional<Integer> witness_root;

  bool certified() const { return status == StabilityStatus::CertifiedIrreducible; }
};

std::string to_string(StabilityStatus status);

/// Square-free adjusted critical orbit => irreducible over Q. Unknown only
/// means the sufficient test did not apply. Stops at the first square entry.
StabilityVerdict stability_certificate(const GeneratorSet& gens, const Word& w);

struct DynamicsLimits {
  std::size_t degree_cap = 256;
  std::uint64_t scan_budget = std::uint64_t{1} << 22;
};

/// Dense coefficients of theta_1 o ... o theta_n (degree 2^n, monic).
/// Throws BudgetExceeded when 2^n exceeds `limits.degree_cap`.
DensePolynomial compose_word(const GeneratorSet& gens, const Word& w, const DynamicsLimits& limits = {});

struct ScannedWord {
  Word word;
  StabilityVerdict verdict;
};

/// Every word of length 1..max_len, shorter words first, lexicographic within
/// a length. Throws BudgetExceeded when the total word count exceeds the budget.
std::vector<ScannedWord> scan_words(const GeneratorSet& gens, std::size_t max_len,
                                    Parallelism par = {}, const DynamicsLimits& limits = {});

/// Word number `rank` among words of length `length` in lexicographic order.
Word word_from_rank(std::size_t alphabet, std::size_t length, std::uint64_t rank);

// Monte Carlo stability estimation.

struct SequenceSampler {
  /// Per-generator probabilities; all positive, normalized on construction.
  std::vector<double> weights;
  std::uint64_t seed = 0;

  /// Throws ContractError for nonpositive or non-finite weights.
  SequenceSampler(std::vector<double> weights, std::uint64_t seed);
  static SequenceSampler uniform(std::size_t generators, std::uint64_t seed);
};

struct MonteCarloEstimate {
  double estimate = 0.0;
  std::uint64_t square_free = 0;
  std::uint64_t trials = 0;
  /// sqrt(p(1-p)/T) at the estimated p.
  double standard_error = 0.0;
};

/// Samples `trials` random words of length `depth` and reports the fraction
/// whose adjusted critical orbit is square-free. Trial i draws from a stream
/// keyed by (seed, i), so the result is identical for every thread count.
MonteCarloEstimate monte_carlo_stability(const GeneratorSet& gens, const SequenceSampler& sampler,
                                         std::size_t depth, std::uint64_t trials, Parallelism par = {});

/// The word drawn for trial `trial`; exposed for reproducibility checks.
Word sample_word(const SequenceSampler& sampler, std::size_t depth, std::uint64_t trial);

}  // namespace quadsemi::dynamics

#endif  // QUADSEMI_DYNAMICS_HPP
