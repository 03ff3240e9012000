#include "quadsemi/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadsemi/error.hpp"

namespace quadsemi {

__extension__ using i128 = __int128;

std::string to_string(const Integer& n) { return n.get_str(); }

namespace arith {

std::optional<Integer> is_perfect_square(const Integer& n) {
  if (sgn(n) < 0) return std::nullopt;
  Integer root;
  Integer rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  if (sgn(rem) != 0) return std::nullopt;
  return root;
}

std::optional<std::int64_t> is_perfect_square(std::int64_t n) {
  if (n < 0) return std::nullopt;
  const std::int64_t r = floor_sqrt(n);
  if (r * r != n) return std::nullopt;
  return r;
}

Integer floor_sqrt(const Integer& n) {
  if (sgn(n) < 0) throw ContractError("floor_sqrt: negative argument " + n.get_str());
  Integer root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return root;
}

std::int64_t floor_sqrt(std::int64_t n) {
  if (n < 0) throw ContractError("floor_sqrt: negative argument " + std::to_string(n));
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  // The long double estimate can be off by one near 2^63.
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<Integer> positive_divisors(const Integer& n) {
  if (sgn(n) == 0) throw ContractError("positive_divisors: n must be nonzero");
  Integer m = abs(n);

  // Trial division into prime powers; inputs here are small.
  std::vector<std::pair<Integer, unsigned>> factors;
  if (m.fits_ulong_p()) {
    unsigned long r = m.get_ui();
    for (unsigned long p = 2; p <= r / p; p += (p == 2 ? 1 : 2)) {
      if (r % p != 0) continue;
      unsigned k = 0;
      while (r % p == 0) {
        r /= p;
        ++k;
      }
      factors.emplace_back(Integer(p), k);
    }
    m = r;
  } else {
    for (Integer p = 2; p * p <= m; ++p) {
      if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()) == 0) continue;
      unsigned k = 0;
      while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()) != 0) {
        m /= p;
        ++k;
      }
      factors.emplace_back(p, k);
    }
  }
  if (m > 1) factors.emplace_back(m, 1);

  std::vector<Integer> divisors{1};
  for (const auto& [p, k] : factors) {
    const std::size_t count = divisors.size();
    Integer power = 1;
    for (unsigned i = 0; i < k; ++i) {
      power *= p;
      for (std::size_t j = 0; j < count; ++j) divisors.push_back(divisors[j] * power);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

std::vector<DivisorPair> divisor_pairs(const Integer& n) {
  if (sgn(n) == 0) throw ContractError("divisor_pairs: n must be nonzero");
  const auto divisors = positive_divisors(n);
  std::vector<DivisorPair> pairs;
  pairs.reserve(2 * divisors.size());
  for (const auto& d : divisors) pairs.push_back({d, n / d});
  for (const auto& d : divisors) pairs.push_back({-d, n / (-d)});
  return pairs;
}

std::vector<Residues> residue_search(std::span<const MultiPoly> polys, std::int64_t modulus,
                                     std::optional<int> num_vars) {
  if (modulus < 2) throw ContractError("residue_search: modulus must be at least 2");
  int k = 0;
  for (const auto& p : polys) k = std::max(k, p.num_vars());
  if (num_vars) {
    if (*num_vars < k) throw ContractError("residue_search: num_vars smaller than variables used");
    k = *num_vars;
  }
  if (k < 1 || k > MultiPoly::kMaxVars) {
    throw ContractError("residue_search: variable count must be between 1 and 4");
  }
  std::int64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (total > std::numeric_limits<std::int64_t>::max() / modulus) {
      throw BudgetExceeded("residue_search: m^k overflows");
    }
    total *= modulus;
  }

  std::vector<Residues> solutions;
  Residues point(static_cast<std::size_t>(k), 0);
  for (std::int64_t index = 0; index < total; ++index) {
    std::int64_t rest = index;
    for (int i = k - 1; i >= 0; --i) {
      point[static_cast<std::size_t>(i)] = rest % modulus;
      rest /= modulus;
    }
    const bool all_zero = std::all_of(polys.begin(), polys.end(), [&](const MultiPoly& p) {
      return p.evaluate_mod(point, modulus) == 0;
    });
    if (all_zero) solutions.push_back(point);
  }
  return solutions;
}

}  // namespace arith
}  // namespace quadsemi
