#include <cmath>
#include <random>

#include "doctest.h"
#include "quadsemi/error.hpp"
#include "quadsemi/heights.hpp"
#include "quadsemi/portraits.hpp"

using namespace quadsemi;
using namespace quadsemi::heights;

TEST_CASE("naive height") {
  CHECK(naive_height(Integer(0)) == 0.0);
  CHECK(naive_height(Integer(1)) == 0.0);
  CHECK(naive_height(Integer(-1)) == 0.0);
  CHECK(naive_height(Integer(100)) == doctest::Approx(std::log(100.0)));
  CHECK(naive_height(Integer("1" + std::string(400, '0'))) == doctest::Approx(400 * std::log(10.0)));
}

TEST_CASE("canonical height examples") {
  const QuadraticMap m12{-12};
  for (std::size_t n : {1u, 5u, 30u}) {
    const auto h = canonical_height(m12, Integer(4), n);
    CHECK(h.value <= h.error);
    CHECK(h.error == doctest::Approx(height_constant(Integer(-12)) / std::ldexp(1.0, static_cast<int>(n))));
  }
  CHECK(canonical_height(m12, Integer(4), 40).value < 1e-11);
  const auto one = canonical_height(QuadraticMap{1}, Integer(0), 30);
  CHECK(one.value > 0.0);
  CHECK(one.error <= 2 * std::log(2.0) / std::ldexp(1.0, 30) * 1.0000001);
  CHECK(canonical_height(m12, Integer(5), 20).value > 0.0);
}

TEST_CASE("canonical height handles deep orbits") {
  const auto h = canonical_height(QuadraticMap{3}, Integer(7), 200);
  const auto h30 = canonical_height(QuadraticMap{3}, Integer(7), 30);
  CHECK(std::isfinite(h.value));
  CHECK(std::abs(h.value - h30.value) <= h.error + h30.error);
}

TEST_CASE("doubling identity and preperiodic heights on random samples") {
  std::mt19937_64 rng(2024);
  constexpr std::size_t n = 30;
  for (int i = 0; i < 100; ++i) {
    const long c = static_cast<long>(rng() % 101) - 50;
    const long a = static_cast<long>(rng() % 101) - 50;
    const QuadraticMap phi{c};
    const double C = height_constant(Integer(c));
    const auto ha = canonical_height(phi, Integer(a), n);
    const auto hfa = canonical_height(phi, phi(Integer(a)), n);
    CHECK(std::abs(hfa.value - 2 * ha.value) <= 3 * C / std::ldexp(1.0, n));
  }
  for (long c = -50; c <= 50; ++c) {
    for (const auto& p : portraits::preper_set(Integer(c))) {
      const auto h = canonical_height(QuadraticMap{c}, p, n);
      CHECK(h.value - h.error <= 0.0);
    }
  }
}

TEST_CASE("integral points on the second iterate") {
  const auto m12 = integral_points_on_phi2(QuadraticMap{-12});
  CHECK(m12 == std::vector<IntegralPoint>{{-4, -2}, {-4, 2}, {4, -2}, {4, 2}});
  CHECK(integral_points_on_phi2(QuadraticMap{3}).empty());
  CHECK(integral_points_on_phi2(QuadraticMap{2}).empty());
  CHECK_THROWS_AS(integral_points_on_phi2(QuadraticMap{0}), ContractError);
  CHECK_THROWS_AS(integral_points_on_phi2(QuadraticMap{-1}), ContractError);
}

TEST_CASE("integral points match brute force") {
  for (long c = -200; c <= 200; ++c) {
    if (c == 0 || c == -1) continue;
    std::vector<IntegralPoint> brute;
    for (long x = -10000; x <= 10000; ++x) {
      const Integer inner = Integer(x) * x + c;
      const Integer v = inner * inner + c;
      if (auto r = arith::is_perfect_square(v)) {
        brute.push_back({x, -*r});
        if (*r != 0) brute.push_back({x, *r});
      }
    }
    std::sort(brute.begin(), brute.end());
    const auto got = integral_points_on_phi2(QuadraticMap{c});
    CHECK_MESSAGE(got == brute, "c = " << c);
  }
}

TEST_CASE("minimal height and iterate bound") {
  const auto two = min_positive_height(QuadraticMap{2}, Integer(0), 30);
  CHECK(two.hmin > 0.0);
  CHECK(two.rigor == Rigor::BoxSearched);
  const auto m12 = min_positive_height(QuadraticMap{-12}, Integer(0), 30);
  CHECK(abs(m12.witness) <= 13);
  CHECK(min_positive_height(QuadraticMap{1}, Integer(0), 30).witness == 0);
  CHECK_THROWS_AS(min_positive_height(QuadraticMap{0}, Integer(0), 30), ContractError);

  const auto b3 = compute_iterate_bound(QuadraticMap{3}, Integer(0), 30);
  CHECK(b3.N == 2);
  CHECK(b3.B == b3.hmin);
  const auto b12 = compute_iterate_bound(QuadraticMap{-12}, Integer(0), 30);
  CHECK(b12.N == 2);
  CHECK(b12.B == b12.hmin);
}

TEST_CASE("iterate bound is at least two and consistent") {
  for (long c = -60; c <= 60; ++c) {
    if (c == 0 || c == -1) continue;
    const auto b = compute_iterate_bound(QuadraticMap{c}, Integer(0), 30);
    CHECK(b.N >= 2);
    CHECK(b.B >= b.hmin);
    CHECK(b.hmin > 0.0);
    CHECK(b.N == static_cast<unsigned>(std::ceil(std::log2(b.B / b.hmin))) + 2);
  }
}

TEST_CASE("heights beyond the box exceed the in-box minimum") {
  for (long c = -30; c <= 30; ++c) {
    if (c == 0 || c == -1) continue;
    const QuadraticMap phi{c};
    const auto mh = min_positive_height(phi, Integer(0), 30);
    for (long a = std::abs(c) + 2; a <= std::abs(c) + 60; ++a) {
      CHECK(canonical_height(phi, Integer(a), 30).lower() > mh.hmin);
    }
  }
}
