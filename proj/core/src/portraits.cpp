#include "quadsemi/portraits.hpp"

#include <vector>

namespace quadsemi::portraits {

std::string to_string(SquareFormKind kind) {
  return kind == SquareFormKind::FixedSquare ? "FixedSquare" : "TwoCycleSquare";
}

PeriodicPoints rational_periodic_points(const Integer& c) {
  PeriodicPoints out;
  // Fixed points: x = (1 +- sqrt(1 - 4c)) / 2; the discriminant is odd.
  if (auto r = arith::is_perfect_square(Integer(1 - 4 * c))) {
    out.fixed_points.insert(Integer((1 + *r) / 2));
    out.fixed_points.insert(Integer((1 - *r) / 2));
  }
  // Points of exact period 2: x = (-1 +- sqrt(-3 - 4c)) / 2; never a double root for integral c.
  if (auto r = arith::is_perfect_square(Integer(-3 - 4 * c))) {
    Integer a = (-1 - *r) / 2;
    Integer b = (-1 + *r) / 2;
    out.two_cycles.insert({std::move(a), std::move(b)});
  }
  return out;
}

std::optional<SquareForm> recognize_square_periodic(const Integer& c) {
  const Integer bound = arith::floor_sqrt(arith::floor_sqrt(abs(c))) + 2;
  for (Integer s = 0; s <= bound; ++s) {
    const Integer s2 = s * s;
    if (c == s2 - s2 * s2) return SquareForm{SquareFormKind::FixedSquare, s};
  }
  for (Integer s = 0; s <= bound; ++s) {
    const Integer s2 = s * s;
    if (c == -1 - s2 - s2 * s2) return SquareForm{SquareFormKind::TwoCycleSquare, s};
  }
  return std::nullopt;
}

PointSet preper_set(const Integer& c) {
  if (auto form = recognize_square_periodic(c)) {
    const Integer s2 = form->s * form->s;
    const Integer other = form->kind == SquareFormKind::FixedSquare ? Integer(1 - s2) : Integer(1 + s2);
    return PointSet{s2, Integer(-s2), other, Integer(-other)};
  }

  const PeriodicPoints periodic = rational_periodic_points(c);
  PointSet points = periodic.fixed_points;
  for (const auto& [a, b] : periodic.two_cycles) {
    points.insert(a);
    points.insert(b);
  }
  // Backward closure: adjoin integral y with y^2 + c = p until nothing new appears.
  std::vector<Integer> frontier(points.begin(), points.end());
  while (!frontier.empty()) {
    std::vector<Integer> next;
    for (const auto& p : frontier) {
      if (auto y = arith::is_perfect_square(Integer(p - c))) {
        for (Integer candidate : {*y, Integer(-*y)}) {
          if (points.insert(candidate).second) next.push_back(candidate);
        }
      }
    }
    frontier = std::move(next);
  }
  return points;
}

PointSet brute_force_preper(const Integer& c) {
  const Integer bound = abs(c) + 1;
  PointSet out;
  for (Integer a = -bound; a <= bound; ++a) {
    PointSet seen;
    Integer x = a;
    while (abs(x) <= bound) {
      if (!seen.insert(x).second) {
        out.insert(a);
        break;
      }
      x = x * x + c;
    }
  }
  return out;
}

Portrait portrait(const Integer& c) {
  return Portrait{c, rational_periodic_points(c), preper_set(c), recognize_square_periodic(c)};
}

}  // namespace quadsemi::portraits
