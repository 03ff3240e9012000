#ifndef QUADSEMI_PORTRAITS_HPP
#define QUADSEMI_PORTRAITS_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>

#include "quadsemi/arith.hpp"

namespace quadsemi::portraits {

using PointSet = std::set<Integer>;

/// Unordered 2-cycle {a, b}, stored with first < second.
using TwoCycle = std::pair<Integer, Integer>;

enum class SquareFormKind {
  FixedSquare,     // c = s^2 - s^4, s^2 is a fixed point
  TwoCycleSquare,  // c = -1 - s^2 - s^4, s^2 lies in a 2-cycle
};

struct SquareForm {
  SquareFormKind kind;
  Integer s;  // normalized s >= 0
  friend bool operator==(const SquareForm&, const SquareForm&) = default;
};

std::string to_string(SquareFormKind kind);

struct PeriodicPoints {
  PointSet fixed_points;
  std::set<TwoCycle> two_cycles;
};

/// Rational periodic points of x^2 + c. Rational periodic points of this
/// family are integral of period 1 or 2, so only the quadratic factors
/// x^2 - x + c and x^2 + x + c + 1 of phi^2(x) - x are solved.
PeriodicPoints rational_periodic_points(const Integer& c);

/// Matches c against s^2 - s^4 first, then -1 - s^2 - s^4, for the smallest s >= 0.
std::optional<SquareForm> recognize_square_periodic(const Integer& c);

/// Rational preperiodic points: the closed form when a square periodic point
/// exists, otherwise the backward closure of the periodic points in Z.
PointSet preper_set(const Integer& c);

/// Independent oracle: orbit simulation of every |a| <= |c| + 1.
PointSet brute_force_preper(const Integer& c);

struct Portrait {
  Integer c;
  PeriodicPoints periodic;
  PointSet preper;
  std::optional<SquareForm> square_form;
};

Portrait portrait(const Integer& c);

}  // namespace quadsemi::portraits

#endif  // QUADSEMI_PORTRAITS_HPP
