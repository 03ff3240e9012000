#include "quadsemi/heights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "quadsemi/error.hpp"
#include "quadsemi/portraits.hpp"

namespace quadsemi::heights {

namespace {

// log|x| for x != 0 at double precision, valid far beyond the double range.
double log_abs(const Integer& x) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2;
}

void require_genus_one(const Integer& c, const char* op) {
  if (c == 0 || c == -1) throw ContractError(std::string(op) + ": c must not be 0 or -1");
}

}  // namespace

double naive_height(const Integer& x) {
  if (mpz_cmpabs_ui(x.get_mpz_t(), 1) <= 0) return 0.0;
  return log_abs(x);
}

double height_constant(const Integer& c) {
  const double value = std::log1p(Integer(abs(c)).get_d()) + std::numbers::ln2;
  // Round up so the enclosure survives the rounding of log.
  return std::nextafter(value, std::numeric_limits<double>::infinity());
}

HeightEstimate canonical_height(const QuadraticMap& map, const Integer& a, std::size_t iterations) {
  if (iterations < 1) throw ContractError("canonical_height: iterations must be at least 1");
  const std::size_t switch_bits = std::max<std::size_t>(1024, 2 * mpz_sizeinbase(map.c.get_mpz_t(), 2) + 128);

  Integer x = a;
  std::size_t done = 0;
  for (; done < iterations; ++done) {
    if (mpz_sizeinbase(x.get_mpz_t(), 2) > switch_bits) break;
    x = map(x);
  }

  // Track g = log|x_k| / 2^k so that huge iteration counts stay finite.
  const auto scale = [](double v, std::size_t k) {
    return std::ldexp(v, -static_cast<int>(std::min<std::size_t>(k, 1U << 20)));
  };
  double g = scale(naive_height(x), done);
  if (done < iterations) {
    // |x| > 2^switch_bits, so x^2 + c keeps the sign of x^2 and c / x^2 is tiny.
    const double log_c = sgn(map.c) == 0 ? 0.0 : log_abs(map.c);
    const double sign_c = static_cast<double>(sgn(map.c));
    for (; done < iterations; ++done) {
      const double log_x = std::ldexp(g, static_cast<int>(std::min<std::size_t>(done, 1U << 20)));
      const double ratio = sgn(map.c) == 0 ? 0.0 : sign_c * std::exp(log_c - 2.0 * log_x);
      g += scale(std::log1p(ratio), done + 1);
    }
  }

  HeightEstimate est;
  est.iterations = iterations;
  est.value = g;
  est.error = scale(height_constant(map.c), iterations);
  return est;
}

std::vector<IntegralPoint> integral_points_on_phi2(const QuadraticMap& map) {
  require_genus_one(map.c, "integral_points_on_phi2");
  std::set<IntegralPoint> points;
  for (const auto& [d, e] : arith::divisor_pairs(map.c)) {
    const Integer sum = d + e;
    if (mpz_even_p(sum.get_mpz_t()) == 0) continue;
    const Integer x_squared = (e - d) / 2 - map.c;
    const auto x = arith::is_perfect_square(x_squared);
    if (!x) continue;
    const Integer y = sum / 2;
    points.insert({*x, y});
    points.insert({Integer(-*x), y});
  }
  return {points.begin(), points.end()};
}

std::string to_string(Rigor r) { return r == Rigor::Rigorous ? "Rigorous" : "BoxSearched"; }

MinHeight min_positive_height(const QuadraticMap& map, const Integer& search_box, std::size_t iterations,
                              Parallelism par) {
  require_genus_one(map.c, "min_positive_height");
  const Integer box = std::max(Integer(search_box), Integer(abs(map.c) + 1));
  if (!box.fits_slong_p() || box > 10'000'000) throw BudgetExceeded("min_positive_height: box too large");
  const auto preper = portraits::preper_set(map.c);

  struct Best {
    double lower = std::numeric_limits<double>::infinity();
    long witness = -1;
    long degenerate = -1;
  };
  // hhat(-a) = hhat(a), so sweeping 0..box covers the box.
  const auto count = static_cast<std::size_t>(box.get_si()) + 1;
  const auto partial = parallel_chunks(count, par, [&](std::size_t b, std::size_t e) {
    Best best;
    for (std::size_t i = b; i < e; ++i) {
      const Integer a = static_cast<long>(i);
      if (preper.contains(a)) continue;
      const double lower = canonical_height(map, a, iterations).lower();
      if (lower <= 0.0) {
        if (best.degenerate < 0) best.degenerate = static_cast<long>(i);
        continue;
      }
      if (lower < best.lower) {
        best.lower = lower;
        best.witness = static_cast<long>(i);
      }
    }
    return best;
  });

  Best best;
  for (const auto& p : partial) {
    if (p.degenerate >= 0 && best.degenerate < 0) best.degenerate = p.degenerate;
    if (p.lower < best.lower) best = Best{p.lower, p.witness, best.degenerate};
  }
  if (best.degenerate >= 0) {
    throw BudgetExceeded("min_positive_height: non-preperiodic a = " + std::to_string(best.degenerate) +
                         " has a nonpositive height lower bound; increase iterations");
  }
  if (best.witness < 0) {
    throw BudgetExceeded("min_positive_height: no non-preperiodic integer in the box; enlarge it");
  }
  return MinHeight{best.lower, Integer(best.witness), box, Rigor::BoxSearched};
}

IterateBound compute_iterate_bound(const QuadraticMap& map, const Integer& search_box, std::size_t iterations,
                                   Parallelism par) {
  const MinHeight mh = min_positive_height(map, search_box, iterations, par);
  double bound = mh.hmin;
  std::set<Integer> xs;
  for (const auto& p : integral_points_on_phi2(map)) xs.insert(abs(p.x));
  for (const auto& x : xs) bound = std::max(bound, canonical_height(map, x, iterations).upper());

  IterateBound out;
  out.B = bound;
  out.hmin = mh.hmin;
  out.hmin_witness = mh.witness;
  out.rigor = mh.rigor;
  const double ratio = bound / mh.hmin;
  out.N = static_cast<unsigned>(std::max(0.0, std::ceil(std::log2(ratio)))) + 2;
  return out;
}

}  // namespace quadsemi::heights
