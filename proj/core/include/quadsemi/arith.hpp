#ifndef QUADSEMI_ARITH_HPP
#define QUADSEMI_ARITH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "quadsemi/multipoly.hpp"

namespace quadsemi {

using Integer = mpz_class;

std::string to_string(const Integer& n);

namespace arith {

/// Returns r >= 0 with r*r == n, or nullopt when n is negative or not a square.
std::optional<Integer> is_perfect_square(const Integer& n);
std::optional<std::int64_t> is_perfect_square(std::int64_t n);

/// Largest r with r*r <= n. Throws ContractError for negative n.
Integer floor_sqrt(const Integer& n);
std::int64_t floor_sqrt(std::int64_t n);

struct DivisorPair {
  Integer d;
  Integer e;
  friend bool operator==(const DivisorPair&, const DivisorPair&) = default;
};

/// Positive divisors of |n| in increasing order (n != 0).
std::vector<Integer> positive_divisors(const Integer& n);

/// Every ordered (d, e) with d*e == n, negative divisors included, no duplicates.
/// Order: positive d ascending, then negative d by ascending |d|.
std::vector<DivisorPair> divisor_pairs(const Integer& n);

/// A residue vector (x_1, ..., x_k) with entries in [0, m).
using Residues = std::vector<std::int64_t>;

/// Exhaustive search of (Z/m)^k for common zeros of `polys`, in lexicographic
/// order of the residue vectors. An empty result is a modular obstruction.
/// Requires 1 <= k <= 4 and m >= 2; k is the largest variable count among polys
/// unless `num_vars` is given.
std::vector<Residues> residue_search(std::span<const MultiPoly> polys, std::int64_t modulus,
                                     std::optional<int> num_vars = std::nullopt);

}  // namespace arith
}  // namespace quadsemi

#endif  // QUADSEMI_ARITH_HPP
