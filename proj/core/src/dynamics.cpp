#include "quadsemi/dynamics.hpp"

#include <set>
#include <sstream>

#include "quadsemi/error.hpp"

namespace quadsemi::dynamics {

Integer evaluate(const QuadraticMap& map, const Integer& x) { return map(x); }

Integer iterate(const QuadraticMap& map, std::size_t n, Integer x) {
  for (std::size_t i = 0; i < n; ++i) x = map(x);
  return x;
}

GeneratorSet::GeneratorSet(std::vector<Integer> constants) {
  if (constants.empty()) throw ContractError("generator set must not be empty");
  std::set<Integer> seen;
  for (auto& c : constants) {
    if (!seen.insert(c).second) {
      throw ContractError("generator constants must be distinct; repeated c = " + c.get_str());
    }
    maps_.push_back(QuadraticMap{std::move(c)});
  }
}

void validate(const GeneratorSet& gens, const Word& w) {
  if (w.indices.empty()) throw ContractError("word must be nonempty");
  for (const auto i : w.indices) {
    if (i >= gens.size()) {
      throw ContractError("word index " + std::to_string(i + 1) + " exceeds generator count " +
                          std::to_string(gens.size()));
    }
  }
}

std::string to_string(const Word& w) {
  std::ostringstream out;
  for (std::size_t k = 0; k < w.indices.size(); ++k) {
    if (k > 0) out << ',';
    out << w.indices[k] + 1;
  }
  return out.str();
}

std::string to_string(StabilityStatus status) {
  return status == StabilityStatus::CertifiedIrreducible ? "CertifiedIrreducible" : "Unknown";
}

namespace {

// theta_1(theta_2(...theta_k(0))) for the 1-based prefix length k.
Integer prefix_at_zero(const GeneratorSet& gens, const Word& w, std::size_t k) {
  Integer value = 0;
  for (std::size_t j = k; j-- > 0;) value = gens[w.indices[j]](value);
  return value;
}

}  // namespace

AdjustedCriticalOrbit adjusted_critical_orbit(const GeneratorSet& gens, const Word& w) {
  validate(gens, w);
  AdjustedCriticalOrbit orbit;
  orbit.entries.reserve(w.size());
  orbit.entries.push_back(-gens[w.indices[0]].c);
  for (std::size_t k = 2; k <= w.size(); ++k) orbit.entries.push_back(prefix_at_zero(gens, w, k));
  return orbit;
}

StabilityVerdict stability_certificate(const GeneratorSet& gens, const Word& w) {
  validate(gens, w);
  auto check = [](std::size_t index, const Integer& entry) -> std::optional<StabilityVerdict> {
    if (auto root = arith::is_perfect_square(entry)) {
      return StabilityVerdict{StabilityStatus::Unknown, index, std::move(*root)};
    }
    return std::nullopt;
  };
  if (auto v = check(1, -gens[w.indices[0]].c)) return *v;
  for (std::size_t k = 2; k <= w.size(); ++k) {
    if (auto v = check(k, prefix_at_zero(gens, w, k))) return *v;
  }
  return StabilityVerdict{};
}

DensePolynomial compose_word(const GeneratorSet& gens, const Word& w, const DynamicsLimits& limits) {
  validate(gens, w);
  if (w.size() >= 63 || (std::size_t{1} << w.size()) > limits.degree_cap) {
    throw BudgetExceeded("compose_word: degree 2^" + std::to_string(w.size()) + " exceeds cap " +
                         std::to_string(limits.degree_cap));
  }
  // Innermost map first: p <- p^2 + c.
  DensePolynomial p = DensePolynomial::monomial(1);
  for (std::size_t j = w.size(); j-- > 0;) {
    p = p * p + DensePolynomial(std::vector<mpz_class>{gens[w.indices[j]].c});
  }
  return p;
}

Word word_from_rank(std::size_t alphabet, std::size_t length, std::uint64_t rank) {
  Word w;
  w.indices.assign(length, 0);
  for (std::size_t k = length; k-- > 0;) {
    w.indices[k] = static_cast<std::size_t>(rank % alphabet);
    rank /= alphabet;
  }
  return w;
}

std::vector<ScannedWord> scan_words(const GeneratorSet& gens, std::size_t max_len, Parallelism par,
                                    const DynamicsLimits& limits) {
  const std::uint64_t s = gens.size();
  std::vector<std::uint64_t> per_length;  // word count for lengths 1..max_len
  std::uint64_t total = 0;
  std::uint64_t count = 1;
  for (std::size_t n = 1; n <= max_len; ++n) {
    if (count > limits.scan_budget / s) {
      throw BudgetExceeded("scan_words: more than " + std::to_string(limits.scan_budget) + " words");
    }
    count *= s;
    total += count;
    if (total > limits.scan_budget) {
      throw BudgetExceeded("scan_words: more than " + std::to_string(limits.scan_budget) + " words");
    }
    per_length.push_back(count);
  }

  auto locate = [&](std::uint64_t flat) {
    std::size_t len = 1;
    for (const auto c : per_length) {
      if (flat < c) break;
      flat -= c;
      ++len;
    }
    return word_from_rank(gens.size(), len, flat);
  };

  auto chunks = parallel_chunks(static_cast<std::size_t>(total), par, [&](std::size_t b, std::size_t e) {
    std::vector<ScannedWord> out;
    out.reserve(e - b);
    for (std::size_t i = b; i < e; ++i) {
      Word w = locate(i);
      StabilityVerdict v = stability_certificate(gens, w);
      out.push_back({std::move(w), std::move(v)});
    }
    return out;
  });

  std::vector<ScannedWord> result;
  result.reserve(static_cast<std::size_t>(total));
  for (auto& chunk : chunks) {
    for (auto& item : chunk) result.push_back(std::move(item));
  }
  return result;
}

}  // namespace quadsemi::dynamics
