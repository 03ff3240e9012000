#include "doctest.h"
#include "quadsemi/portraits.hpp"

using namespace quadsemi;
using namespace quadsemi::portraits;

namespace {
PointSet pts(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }
}  // namespace

TEST_CASE("rational periodic points examples") {
  const auto m12 = rational_periodic_points(Integer(-12));
  CHECK(m12.fixed_points == pts({4, -3}));
  CHECK(m12.two_cycles.empty());
  const auto m1 = rational_periodic_points(Integer(-1));
  CHECK(m1.fixed_points.empty());
  CHECK(m1.two_cycles == std::set<TwoCycle>{{-1, 0}});
  const auto p1 = rational_periodic_points(Integer(1));
  CHECK(p1.fixed_points.empty());
  CHECK(p1.two_cycles.empty());
}

TEST_CASE("periodic points are genuine") {
  for (long c = -300; c <= 300; ++c) {
    const auto per = rational_periodic_points(Integer(c));
    for (const auto& p : per.fixed_points) CHECK(p * p + c == p);
    for (const auto& [a, b] : per.two_cycles) {
      CHECK(a < b);
      CHECK(a * a + c == b);
      CHECK(b * b + c == a);
    }
  }
}

TEST_CASE("square normal forms") {
  CHECK(recognize_square_periodic(Integer(-12)) == SquareForm{SquareFormKind::FixedSquare, 2});
  CHECK(recognize_square_periodic(Integer(-21)) == SquareForm{SquareFormKind::TwoCycleSquare, 2});
  CHECK_FALSE(recognize_square_periodic(Integer(-4)));
  CHECK(recognize_square_periodic(Integer(0)) == SquareForm{SquareFormKind::FixedSquare, 0});
}

TEST_CASE("recognized forms have a square periodic point in the preperiodic set") {
  for (long c = -2000; c <= 50; ++c) {
    const auto form = recognize_square_periodic(Integer(c));
    if (!form) continue;
    const auto per = rational_periodic_points(Integer(c));
    bool found = false;
    for (const auto& p : preper_set(Integer(c))) {
      const bool periodic = per.fixed_points.contains(p) ||
                            std::any_of(per.two_cycles.begin(), per.two_cycles.end(),
                                        [&](const TwoCycle& t) { return t.first == p || t.second == p; });
      found = found || (periodic && arith::is_perfect_square(p));
    }
    CHECK_MESSAGE(found, "c = " << c);
  }
}

TEST_CASE("preperiodic set examples") {
  CHECK(preper_set(Integer(-12)) == pts({4, -4, 3, -3}));
  CHECK(preper_set(Integer(-3)) == pts({1, -1, 2, -2}));
  CHECK(preper_set(Integer(0)) == pts({0, 1, -1}));
  CHECK(brute_force_preper(Integer(-12)) == pts({3, -3, 4, -4}));
  CHECK(brute_force_preper(Integer(0)) == pts({0, 1, -1}));
  CHECK(brute_force_preper(Integer(2)).empty());
}

TEST_CASE("fixed-square family identities") {
  for (long s = 0; s <= 40; ++s) {
    const Integer s2 = s * s;
    const Integer c = s2 - s2 * s2;
    const auto pre = preper_set(c);
    for (const Integer& p : {Integer(s2), Integer(-s2), Integer(1 - s2), Integer(s2 - 1)}) CHECK(pre.contains(p));
    CHECK(Integer(s2 * s2 + c) == s2);
    CHECK(Integer((1 - s2) * (1 - s2) + c) == 1 - s2);
  }
}

TEST_CASE("preperiodic sets are forward closed and contain the periodic points") {
  for (long c = -500; c <= 500; ++c) {
    const auto pre = preper_set(Integer(c));
    for (const auto& p : pre) CHECK(pre.contains(p * p + c));
    const auto per = rational_periodic_points(Integer(c));
    for (const auto& p : per.fixed_points) CHECK(pre.contains(p));
  }
}

TEST_CASE("escape bound soundness") {
  for (long c = -60; c <= 60; ++c)
    for (long a = std::abs(c) + 2; a <= std::abs(c) + 40; ++a) {
      CHECK(std::abs(a * a + c) > a);
    }
}

TEST_CASE("portrait bundles the pieces") {
  const auto p = portrait(Integer(-21));
  CHECK(p.c == -21);
  CHECK(p.square_form->kind == SquareFormKind::TwoCycleSquare);
  CHECK(p.preper == pts({4, -4, 5, -5}));
  CHECK(p.periodic.two_cycles == std::set<TwoCycle>{{-5, 4}});
}
