#ifndef QUADSEMI_HEIGHTS_HPP
#define QUADSEMI_HEIGHTS_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "quadsemi/arith.hpp"
#include "quadsemi/dynamics.hpp"
#include "quadsemi/parallel.hpp"

namespace quadsemi::heights {

using dynamics::QuadraticMap;

/// Enclosure of a canonical height: the true value lies in [value - error, value + error].
struct HeightEstimate {
  double value = 0.0;
  double error = 0.0;
  std::size_t iterations = 0;

  double lower() const { return value - error; }
  double upper() const { return value + error; }
};

/// h(x) = log max(|x|, 1).
double naive_height(const Integer& x);

/// C(phi) = log(|c| + 1) + log 2, a uniform bound on |h(phi(x)) - 2 h(x)| over integers x.
///
/// Upper half: |x^2 + c| <= max(|x|,1)^2 (1 + |c|). Lower half: if x^2 >= 2|c|
/// then |x^2 + c| >= x^2 / 2; otherwise 2 h(x) < log(2|c|) <= C while h >= 0.
/// Summing the geometric tail gives |h(phi^n(a))/2^n - hhat(a)| <= C / 2^n.
double height_constant(const Integer& c);

/// value = h(phi^n(a)) / 2^n, error = C(phi) / 2^n. Requires n >= 1.
///
/// The orbit is exact in big integers until |x| dwarfs |c|; past that point
/// log|x| is advanced as 2 log|x| + log1p(c / x^2), which keeps memory bounded
/// for large n without losing double precision.
HeightEstimate canonical_height(const QuadraticMap& map, const Integer& a, std::size_t iterations);

struct IntegralPoint {
  Integer x;
  Integer y;
  friend bool operator==(const IntegralPoint&, const IntegralPoint&) = default;
  friend auto operator<=>(const IntegralPoint& a, const IntegralPoint& b) {
    if (auto cmp = cmp_int(a.x, b.x); cmp != 0) return cmp;
    return cmp_int(a.y, b.y);
  }

 private:
  static std::strong_ordering cmp_int(const Integer& u, const Integer& v) {
    const int r = cmp(u, v);
    return r < 0 ? std::strong_ordering::less : (r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

/// All integral (X, Y) with Y^2 = phi^2(X), sorted. Uses the factorization
/// (Y - (X^2 + c)) (Y + (X^2 + c)) = c over the divisor pairs of c, so the
/// result is complete. Throws ContractError for c in {0, -1}.
std::vector<IntegralPoint> integral_points_on_phi2(const QuadraticMap& map);

enum class Rigor {
  Rigorous,
  BoxSearched,  // the minimal positive height was searched over integers in a box only
};

std::string to_string(Rigor r);

struct MinHeight {
  double hmin = 0.0;
  Integer witness;  // nonnegative integer attaining hmin
  Integer box;      // searched |a| <= box
  Rigor rigor = Rigor::BoxSearched;
};

/// Minimum of the lower bounds value - error over non-preperiodic integers
/// |a| <= max(search_box, |c| + 1). Throws BudgetExceeded when some
/// non-preperiodic candidate has a nonpositive lower bound (more iterations
/// needed) and ContractError for c in {0, -1}.
MinHeight min_positive_height(const QuadraticMap& map, const Integer& search_box, std::size_t iterations,
                              Parallelism par = {});

struct IterateBound {
  unsigned N = 2;
  double B = 0.0;
  double hmin = 0.0;
  Integer hmin_witness;
  Rigor rigor = Rigor::BoxSearched;
};

/// N = ceil(log2(B / hmin)) + 2 where B bounds the canonical heights of the
/// X-coordinates of integral points on Y^2 = phi^2(X), and B >= hmin.
IterateBound compute_iterate_bound(const QuadraticMap& map, const Integer& search_box, std::size_t iterations,
                                   Parallelism par = {});

}  // namespace quadsemi::heights

#endif  // QUADSEMI_HEIGHTS_HPP
