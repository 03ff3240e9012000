#include <random>

#include "doctest.h"
#include "quadsemi/dynamics.hpp"
#include "quadsemi/error.hpp"
#include "quadsemi/oracle.hpp"

using namespace quadsemi;
using namespace quadsemi::dynamics;

namespace {

Word word(std::initializer_list<std::size_t> one_based) {
  Word w;
  for (auto i : one_based) w.indices.push_back(i - 1);
  return w;
}

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("generator set contract") {
  CHECK_THROWS_AS(GeneratorSet({}), ContractError);
  CHECK_THROWS_AS(GeneratorSet(ints({1, 1})), ContractError);
  const GeneratorSet s(ints({-4, -12}));
  CHECK_THROWS_AS(validate(s, Word{}), ContractError);
  CHECK_THROWS_AS(validate(s, word({3})), ContractError);
}

TEST_CASE("adjusted critical orbit examples") {
  const GeneratorSet s(ints({-4, -12}));
  CHECK(adjusted_critical_orbit(s, word({2, 1})).entries == ints({12, 4}));
  CHECK(adjusted_critical_orbit(s, word({2, 2})).entries == ints({12, 132}));
  CHECK(adjusted_critical_orbit(s, word({1})).entries == ints({4}));
}

TEST_CASE("stability certificate examples") {
  const GeneratorSet s(ints({-4, -12}));
  const auto a = stability_certificate(s, word({2, 1}));
  CHECK(a.status == StabilityStatus::Unknown);
  CHECK(a.first_square_index == 2u);
  CHECK(a.witness_root == Integer(2));
  CHECK(stability_certificate(s, word({2, 2})).certified());
  for (const auto& w : {word({1}), word({1, 2}), word({1, 1, 2})}) {
    const auto v = stability_certificate(s, w);
    CHECK(v.first_square_index == 1u);
  }
}

TEST_CASE("scan_words examples") {
  const GeneratorSet s(ints({-4, -12}));
  const auto scanned = scan_words(s, 3);
  CHECK(scanned.size() == 14);
  for (const auto& sw : scanned) {
    const bool constant12 =
        std::all_of(sw.word.indices.begin(), sw.word.indices.end(), [](std::size_t i) { return i == 1; });
    CHECK(sw.verdict.certified() == constant12);
  }
  const auto one = scan_words(GeneratorSet(ints({1})), 2);
  REQUIRE(one.size() == 2);
  CHECK(one[0].verdict.certified());
  CHECK(adjusted_critical_orbit(GeneratorSet(ints({1})), one[1].word).entries == ints({-1, 2}));
  CHECK(scan_words(s, 0).empty());
  CHECK_THROWS_AS(scan_words(s, 40), BudgetExceeded);
}

TEST_CASE("scan_words order is lexicographic and independent of threads") {
  const GeneratorSet s(ints({1, -2, 5}));
  const auto a = scan_words(s, 4, Parallelism{1});
  const auto b = scan_words(s, 4, Parallelism{4});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].word == b[i].word);
    CHECK(a[i].verdict.first_square_index == b[i].verdict.first_square_index);
    if (i > 0) CHECK((a[i - 1].word.size() < a[i].word.size() || a[i - 1].word < a[i].word));
  }
}

TEST_CASE("orbit entries equal composed prefixes at zero") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Integer> cs;
    while (cs.size() < 3) {
      const long c = static_cast<long>(rng() % 41) - 20;
      if (std::find(cs.begin(), cs.end(), c) == cs.end()) cs.emplace_back(c);
    }
    const GeneratorSet s(cs);
    Word w;
    const std::size_t n = 1 + rng() % 6;
    for (std::size_t k = 0; k < n; ++k) w.indices.push_back(rng() % 3);
    const auto orbit = adjusted_critical_orbit(s, w);
    REQUIRE(orbit.entries.size() == n);
    CHECK(orbit.entries[0] == -s[w.indices[0]].c);
    for (std::size_t k = 2; k <= n; ++k) {
      Word prefix{{w.indices.begin(), w.indices.begin() + static_cast<long>(k)}};
      CHECK(orbit.entries[k - 1] == compose_word(s, prefix)(Integer(0)));
    }
    const bool first_square = arith::is_perfect_square(orbit.entries[0]).has_value();
    CHECK((stability_certificate(s, w).first_square_index == 1u) == first_square);
  }
}

TEST_CASE("compose_word degree cap") {
  const GeneratorSet s(ints({1, 2}));
  CHECK(compose_word(s, word({1, 2})) == DensePolynomial({5, 0, 4, 0, 1}));
  Word nine;
  nine.indices.assign(9, 0);
  CHECK_THROWS_AS(compose_word(s, nine), BudgetExceeded);
}

TEST_CASE("single-letter certified words are irreducible") {
  for (long c = -60; c <= 60; ++c) {
    const GeneratorSet s(ints({c}));
    const bool certified = stability_certificate(s, word({1})).certified();
    if (certified) CHECK(oracle::is_irreducible_exact(compose_word(s, word({1}))));
  }
}

TEST_CASE("monte carlo examples") {
  const GeneratorSet s(ints({1}));
  const auto est = monte_carlo_stability(s, SequenceSampler::uniform(1, 3), 6, 500);
  CHECK(est.estimate == 1.0);
  const GeneratorSet two(ints({-4, -12}));
  const auto single = monte_carlo_stability(two, SequenceSampler::uniform(2, 99), 4, 1);
  CHECK((single.estimate == 0.0 || single.estimate == 1.0));
  CHECK_THROWS_AS(SequenceSampler({1.0, -1.0}, 0), ContractError);
  CHECK_THROWS_AS(SequenceSampler({1.0, std::nan("")}, 0), ContractError);
}

TEST_CASE("monte carlo is reproducible across runs and threads") {
  const GeneratorSet s(ints({-4, -12, 3}));
  const SequenceSampler sampler({1.0, 2.0, 3.0}, 0xabcdef);
  const auto a = monte_carlo_stability(s, sampler, 7, 20000, Parallelism{1});
  const auto b = monte_carlo_stability(s, sampler, 7, 20000, Parallelism{4});
  const auto c = monte_carlo_stability(s, sampler, 7, 20000, Parallelism{1});
  CHECK(a.square_free == b.square_free);
  CHECK(a.square_free == c.square_free);
  CHECK(a.estimate == b.estimate);
  CHECK(sample_word(sampler, 7, 123) == sample_word(sampler, 7, 123));
  CHECK(sampler.weights[2] == doctest::Approx(0.5));
}
