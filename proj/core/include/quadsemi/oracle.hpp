#ifndef QUADSEMI_ORACLE_HPP
#define QUADSEMI_ORACLE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "quadsemi/dynamics.hpp"
#include "quadsemi/parallel.hpp"
#include "quadsemi/polynomial.hpp"

namespace quadsemi::oracle {

struct OracleLimits {
  long degree_cap = 8;
};

/// Irreducibility over Q of a primitive polynomial of degree 1..cap.
/// Throws ContractError for constants or content != 1 and BudgetExceeded
/// above the degree cap.
bool is_irreducible_exact(const DensePolynomial& p, const OracleLimits& limits = {});

/// A factor g with 1 <= deg g <= deg p / 2, or nullopt when p is irreducible.
/// Same preconditions as is_irreducible_exact; never uses the mod-p shortcut.
std::optional<DensePolynomial> find_factor(const DensePolynomial& p, const OracleLimits& limits = {});

/// Rabin's test: p reduced mod `prime` keeps its degree and is irreducible over F_prime.
bool irreducible_mod_p(const DensePolynomial& p, unsigned long prime);

struct WordRecord {
  dynamics::Word word;
  dynamics::StabilityVerdict verdict;
  bool irreducible = false;
};

struct CrossValidationReport {
  std::size_t words = 0;
  std::size_t certified = 0;
  std::size_t unknown_reducible = 0;
  /// Allowed: the orbit test is sufficient only.
  std::vector<WordRecord> unknown_irreducible;
  /// Certified yet reducible. Never returned nonempty: cross_validate throws.
  std::vector<WordRecord> forbidden;
};

/// Runs the orbit certificate and the exact oracle on every word of length
/// 1..max_len. Throws TheoremViolation listing every certified-but-reducible word.
CrossValidationReport cross_validate(const dynamics::GeneratorSet& gens, std::size_t max_len, Parallelism par = {},
                                     const OracleLimits& limits = {});

}  // namespace quadsemi::oracle

#endif  // QUADSEMI_ORACLE_HPP
