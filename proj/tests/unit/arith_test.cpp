#include <random>

#include "doctest.h"
#include "quadsemi/arith.hpp"
#include "quadsemi/error.hpp"

using namespace quadsemi;
using arith::DivisorPair;

TEST_CASE("is_perfect_square examples") {
  CHECK(arith::is_perfect_square(Integer(0)) == Integer(0));
  CHECK(arith::is_perfect_square(Integer(144)) == Integer(12));
  CHECK_FALSE(arith::is_perfect_square(Integer(-4)));
  CHECK_FALSE(arith::is_perfect_square(Integer(15)));
  const Integer big("10000000000000000000000000000000000000000");
  CHECK(arith::is_perfect_square(big) == Integer("100000000000000000000"));
  CHECK_FALSE(arith::is_perfect_square(big + 1));
  CHECK(arith::is_perfect_square(std::int64_t{49}) == std::int64_t{7});
  CHECK_FALSE(arith::is_perfect_square(std::int64_t{-1}));
}

TEST_CASE("floor_sqrt examples and contract") {
  CHECK(arith::floor_sqrt(Integer(15)) == 3);
  CHECK(arith::floor_sqrt(Integer("10000000000000000000000000000000000000000")) == Integer("100000000000000000000"));
  CHECK_THROWS_AS(arith::floor_sqrt(Integer(-1)), ContractError);
  CHECK(arith::floor_sqrt(std::int64_t{9223372036854775807LL}) == 3037000499LL);
}

TEST_CASE("floor_sqrt bracket and square test agree on random inputs") {
  std::mt19937_64 rng(0x5eed);
  for (int i = 0; i < 2000; ++i) {
    Integer n(static_cast<unsigned long>(rng() >> (rng() % 60)));
    if (i % 3 == 0) n *= n;
    const Integer r = arith::floor_sqrt(n);
    CHECK(r * r <= n);
    CHECK(n < (r + 1) * (r + 1));
    CHECK(arith::is_perfect_square(n).has_value() == (r * r == n));
  }
}

TEST_CASE("divisor_pairs examples") {
  const auto three = arith::divisor_pairs(Integer(3));
  CHECK(three == std::vector<DivisorPair>{{1, 3}, {3, 1}, {-1, -3}, {-3, -1}});
  CHECK(arith::divisor_pairs(Integer(1)) == std::vector<DivisorPair>{{1, 1}, {-1, -1}});
  const auto m12 = arith::divisor_pairs(Integer(-12));
  CHECK(m12.size() == 12);
  CHECK(std::find(m12.begin(), m12.end(), DivisorPair{-2, 6}) != m12.end());
  CHECK(std::find(m12.begin(), m12.end(), DivisorPair{6, -2}) != m12.end());
  CHECK_THROWS_AS(arith::divisor_pairs(Integer(0)), ContractError);
}

TEST_CASE("divisor_pairs count is 2 tau(|n|)") {
  for (long n = -400; n <= 400; ++n) {
    if (n == 0) continue;
    long tau = 0;
    for (long d = 1; d <= std::abs(n); ++d) tau += std::abs(n) % d == 0;
    const auto pairs = arith::divisor_pairs(Integer(n));
    REQUIRE(pairs.size() == static_cast<std::size_t>(2 * tau));
    for (const auto& p : pairs) CHECK(p.d * p.e == n);
  }
  const Integer big = Integer("600851475143");
  for (const auto& p : arith::divisor_pairs(big)) CHECK(p.d * p.e == big);
  CHECK(arith::positive_divisors(big).size() == 16);
}

TEST_CASE("residue_search examples") {
  const MultiPoly z = MultiPoly::var(0), s = MultiPoly::var(1);
  std::vector<MultiPoly> a{z * z - s * s - 2};
  CHECK(arith::residue_search(a, 4).empty());
  std::vector<MultiPoly> b{z * z - s * s + 2};
  CHECK(arith::residue_search(b, 4).empty());
  std::vector<MultiPoly> c{z * z - s * s};
  const auto sols = arith::residue_search(c, 4);
  CHECK(std::find(sols.begin(), sols.end(), arith::Residues{0, 0}) != sols.end());
  CHECK(std::find(sols.begin(), sols.end(), arith::Residues{1, 1}) != sols.end());
}

TEST_CASE("the two square normal forms never collide mod 4") {
  const MultiPoly s = MultiPoly::var(0), u = MultiPoly::var(1);
  std::vector<MultiPoly> eq{s * s - s.pow(4) + 1 + u * u + u.pow(4)};
  CHECK(arith::residue_search(eq, 4).empty());
}

TEST_CASE("residue_search agrees with a nested-loop evaluator") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 7);
    MultiPoly p(static_cast<long>(rng() % 11) - 5);
    for (int k = 0; k < 4; ++k) {
      const long coef = static_cast<long>(rng() % 7) - 3;
      const int v = static_cast<int>(rng() % 3);
      const unsigned e = 1 + static_cast<unsigned>(rng() % 3);
      p += MultiPoly(coef) * MultiPoly::var(v).pow(e);
    }
    std::vector<MultiPoly> polys{p};
    const auto got = arith::residue_search(polys, m, 3);
    std::vector<arith::Residues> expected;
    for (std::int64_t a = 0; a < m; ++a)
      for (std::int64_t b = 0; b < m; ++b)
        for (std::int64_t c = 0; c < m; ++c) {
          Integer val = 0;
          const Integer pt[3] = {a, b, c};
          for (const auto& [ex, co] : p.terms()) {
            Integer term = co;
            for (int v = 0; v < 3; ++v)
              for (int k = 0; k < ex[v]; ++k) term *= pt[v];
            val += term;
          }
          if (mpz_divisible_ui_p(val.get_mpz_t(), static_cast<unsigned long>(m))) expected.push_back({a, b, c});
        }
    CHECK(got == expected);
  }
}
