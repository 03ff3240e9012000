#include "quadsemi/diophantine.hpp"

#include <algorithm>
#include <cstdlib>

#include "quadsemi/error.hpp"

namespace quadsemi::diophantine {

namespace {

constexpr std::int64_t kMaxBound = 10'000;

MultiPoly selector_poly(Selector s, const MultiPoly& q) {
  const MultiPoly q2 = q * q;
  switch (s) {
    case Selector::PlusSq: return q2;
    case Selector::MinusSq: return -q2;
    case Selector::PlusSqMinus1: return q2 - 1;
    case Selector::MinusSqMinus1: return MultiPoly(1L) - q2;
    case Selector::PlusSqPlus1: return q2 + 1;
    case Selector::MinusSqPlus1: return -(q2 + 1);
  }
  return {};
}

bool fixed_square_left(Family f) { return f != Family::C; }
bool fixed_square_right(Family f) { return f == Family::A; }

// s^2 - s^4 or -1 - s^2 - s^4.
std::int64_t base_constant(bool fixed_square, std::int64_t q) {
  const std::int64_t q2 = q * q;
  return fixed_square ? q2 - q2 * q2 : -1 - q2 - q2 * q2;
}

MultiPoly base_constant_poly(bool fixed_square, const MultiPoly& q) {
  const MultiPoly q2 = q * q;
  return fixed_square ? q2 - q2 * q2 : -1L - q2 - q2 * q2;
}

void check_bound(std::int64_t B, std::int64_t min, const char* op) {
  if (B < min || B > kMaxBound) {
    throw ContractError(std::string(op) + ": bound must lie in [" + std::to_string(min) + ", " +
                        std::to_string(kMaxBound) + "]");
  }
}

std::vector<std::int64_t> sign_options(const Component& c, std::int64_t v) {
  if (c.plus_minus && v != 0) return {v, -v};
  return {v};
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
  }
  return "?";
}

std::string to_string(Selector s) {
  switch (s) {
    case Selector::PlusSq: return "+q^2";
    case Selector::MinusSq: return "-q^2";
    case Selector::PlusSqMinus1: return "+(q^2-1)";
    case Selector::MinusSqMinus1: return "-(q^2-1)";
    case Selector::PlusSqPlus1: return "+(q^2+1)";
    case Selector::MinusSqPlus1: return "-(q^2+1)";
  }
  return "?";
}

std::int64_t apply(Selector s, std::int64_t q) {
  const std::int64_t q2 = q * q;
  switch (s) {
    case Selector::PlusSq: return q2;
    case Selector::MinusSq: return -q2;
    case Selector::PlusSqMinus1: return q2 - 1;
    case Selector::MinusSqMinus1: return 1 - q2;
    case Selector::PlusSqPlus1: return q2 + 1;
    case Selector::MinusSqPlus1: return -(q2 + 1);
  }
  return 0;
}

const std::array<Selector, 4>& left_selectors(Family f) {
  static const std::array<Selector, 4> fixed{Selector::PlusSq, Selector::MinusSq, Selector::MinusSqMinus1,
                                             Selector::PlusSqMinus1};
  static const std::array<Selector, 4> two_cycle{Selector::PlusSq, Selector::MinusSq, Selector::PlusSqPlus1,
                                                 Selector::MinusSqPlus1};
  // The left selector lists PrePer of the map built from t.
  return fixed_square_right(f) ? fixed : two_cycle;
}

const std::array<Selector, 4>& right_selectors(Family f) {
  static const std::array<Selector, 4> fixed{Selector::PlusSq, Selector::MinusSq, Selector::MinusSqMinus1,
                                             Selector::PlusSqMinus1};
  static const std::array<Selector, 4> two_cycle{Selector::PlusSq, Selector::MinusSq, Selector::PlusSqPlus1,
                                                 Selector::MinusSqPlus1};
  return fixed_square_left(f) ? fixed : two_cycle;
}

MultiPoly System::left_poly() const {
  const MultiPoly x = MultiPoly::var(0), s = MultiPoly::var(2), t = MultiPoly::var(3);
  return x * x + base_constant_poly(fixed_square_left(family), s) - selector_poly(left, t);
}

MultiPoly System::right_poly() const {
  const MultiPoly y = MultiPoly::var(1), s = MultiPoly::var(2), t = MultiPoly::var(3);
  return y * y + base_constant_poly(fixed_square_right(family), t) - selector_poly(right, s);
}

std::string System::describe() const {
  auto sel = [](Selector s, const char* q) {
    std::string out = to_string(s);
    out.replace(out.find('q'), 1, q);
    return out;
  };
  const std::string l = fixed_square_left(family) ? "s^2 - s^4" : "-1 - s^2 - s^4";
  const std::string r = fixed_square_right(family) ? "t^2 - t^4" : "-1 - t^2 - t^4";
  return "x^2 + " + l + " = " + sel(left, "t") + ",  y^2 + " + r + " = " + sel(right, "s");
}

Solution swap(const Solution& sol) { return {sol[1], sol[0], sol[3], sol[2]}; }

SolutionSet swap(const SolutionSet& sols) {
  SolutionSet out;
  for (const auto& s : sols) out.insert(swap(s));
  return out;
}

std::string Component::to_string() const {
  std::string poly;
  auto append = [&](std::int64_t c, const std::string& mono) {
    if (c == 0) return;
    const bool neg = c < 0;
    const std::int64_t mag = neg ? -c : c;
    std::string term = (mag == 1 && !mono.empty()) ? mono : std::to_string(mag) + mono;
    if (poly.empty()) poly = neg ? "-" + term : term;
    else poly += (neg ? "-" : "+") + term;
  };
  append(coeffs[2], "u^2");
  append(coeffs[1], "u");
  append(coeffs[0], "");
  if (poly.empty()) poly = "0";
  if (!plus_minus) return poly;
  const bool compound = poly.find_first_of("+-", 1) != std::string::npos;
  return "+-" + (compound ? "(" + poly + ")" : poly);
}

FamilyKind SolutionFamily::kind() const {
  return std::any_of(components.begin(), components.end(), [](const Component& c) { return c.uses_u(); })
             ? FamilyKind::Parametric
             : FamilyKind::Explicit;
}

std::string SolutionFamily::to_string() const {
  return "(" + components[0].to_string() + ", " + components[1].to_string() + ", " + components[2].to_string() + ", " +
         components[3].to_string() + ")";
}

std::string Technique::to_string() const {
  switch (kind) {
    case TechniqueKind::Mod4: return "mod4";
    case TechniqueKind::Mod8: return "mod8";
    case TechniqueKind::Sandwich: return "sandwich";
    case TechniqueKind::Curve: return "curve";
    case TechniqueKind::Factor: return "factor";
    case TechniqueKind::Symmetry: return "symmetry(" + target + ")";
  }
  return "?";
}

bool LemmaEntry::has(TechniqueKind kind) const {
  return std::any_of(techniques.begin(), techniques.end(), [kind](const Technique& t) { return t.kind == kind; });
}

std::optional<std::string> LemmaEntry::symmetry_target() const {
  for (const auto& t : techniques) {
    if (t.kind == TechniqueKind::Symmetry) return t.target;
  }
  return std::nullopt;
}

SolutionSet solve_system_bounded(const System& system, std::int64_t B, Parallelism par) {
  check_bound(B, 0, "solve_system_bounded");
  const auto width = static_cast<std::size_t>(2 * B + 1);
  std::vector<std::int64_t> left_base(width), right_base(width), left_rhs(width), right_rhs(width);
  for (std::size_t k = 0; k < width; ++k) {
    const std::int64_t q = static_cast<std::int64_t>(k) - B;
    left_base[k] = base_constant(fixed_square_left(system.family), q);
    right_base[k] = base_constant(fixed_square_right(system.family), q);
    left_rhs[k] = apply(system.left, q);
    right_rhs[k] = apply(system.right, q);
  }
  auto chunks = parallel_chunks(width, par, [&](std::size_t b, std::size_t e) {
    std::vector<Solution> found;
    for (std::size_t si = b; si < e; ++si) {
      for (std::size_t ti = 0; ti < width; ++ti) {
        // x^2 = left(t) - L(s), y^2 = right(s) - R(t)
        const auto x = arith::is_perfect_square(left_rhs[ti] - left_base[si]);
        if (!x) continue;
        const auto y = arith::is_perfect_square(right_rhs[si] - right_base[ti]);
        if (!y) continue;
        found.push_back({*x, *y, static_cast<std::int64_t>(si) - B, static_cast<std::int64_t>(ti) - B});
      }
    }
    return found;
  });
  SolutionSet out;
  for (const auto& chunk : chunks) out.insert(chunk.begin(), chunk.end());
  return out;
}

SolutionSet instantiate_claims(const LemmaEntry& entry, std::int64_t B) {
  SolutionSet out;
  for (const auto& fam : entry.claimed) {
    const bool parametric = fam.kind() == FamilyKind::Parametric;
    const std::int64_t reach = parametric ? B + 10 : 0;
    for (std::int64_t u = -reach; u <= reach; ++u) {
      const std::int64_t x = std::llabs(fam.components[0].at(u));
      const std::int64_t y = std::llabs(fam.components[1].at(u));
      for (std::int64_t s : sign_options(fam.components[2], fam.components[2].at(u))) {
        for (std::int64_t t : sign_options(fam.components[3], fam.components[3].at(u))) {
          if (std::llabs(s) <= B && std::llabs(t) <= B) out.insert({x, y, s, t});
        }
      }
    }
  }
  return out;
}

LemmaVerdict verify_lemma(const LemmaEntry& entry, std::int64_t B, Parallelism par) {
  check_bound(B, 1, "verify_lemma");
  LemmaVerdict v;
  v.id = entry.id;
  v.bound = B;
  v.found = solve_system_bounded(entry.system, B, par);
  const SolutionSet claimed = instantiate_claims(entry, B);
  std::set_difference(v.found.begin(), v.found.end(), claimed.begin(), claimed.end(),
                      std::inserter(v.extra, v.extra.end()));
  std::set_difference(claimed.begin(), claimed.end(), v.found.begin(), v.found.end(),
                      std::inserter(v.missing, v.missing.end()));
  return v;
}

ObstructionResult modular_obstruction(const LemmaEntry& entry, std::int64_t modulus) {
  if (modulus != 4 && modulus != 8) throw ContractError("modular_obstruction: modulus must be 4 or 8");
  const TechniqueKind tag = modulus == 4 ? TechniqueKind::Mod4 : TechniqueKind::Mod8;
  if (!entry.has(tag)) {
    throw ContractError("modular_obstruction: " + entry.id + " is not tagged mod" + std::to_string(modulus));
  }
  const std::array<MultiPoly, 2> polys{entry.system.left_poly(), entry.system.right_poly()};
  const auto sols = arith::residue_search(polys, modulus, 4);
  ObstructionResult r;
  r.id = entry.id;
  r.modulus = modulus;
  r.confirmed = sols.empty();
  r.residue_solutions = sols.size();
  if (!sols.empty()) r.witness = sols.front();
  return r;
}

std::vector<CurvePoint> quartic_curve_points(const Integer& a4, const Integer& a2, const Integer& a0, std::int64_t B) {
  if (B < 0) throw ContractError("quartic_curve_points: bound must be nonnegative");
  std::vector<CurvePoint> out;
  for (std::int64_t q = -B; q <= B; ++q) {
    const Integer qq = Integer(static_cast<long>(q)) * q;
    if (auto y = arith::is_perfect_square(Integer(a4 * qq * qq + a2 * qq + a0))) out.push_back({q, *y});
  }
  return out;
}

SandwichResult sandwich_probe(const MultiPoly& expr, const MultiPoly& lower, const MultiPoly& upper,
                              const std::function<bool(std::int64_t, std::int64_t)>& region, std::int64_t grid) {
  if (grid < 0) throw ContractError("sandwich_probe: grid must be nonnegative");
  SandwichResult r;
  for (std::int64_t s = -grid; s <= grid; ++s) {
    for (std::int64_t t = -grid; t <= grid; ++t) {
      if (!region(s, t)) continue;
      ++r.points_checked;
      const std::array<Integer, 2> pt{Integer(static_cast<long>(s)), Integer(static_cast<long>(t))};
      const Integer e = expr.evaluate(pt);
      const Integer lo = lower.evaluate(pt);
      const Integer hi = upper.evaluate(pt);
      std::string why;
      if (abs(hi) != abs(lo) + 1) why = "bounds are not consecutive";
      else if (!(lo * lo < e)) why = "lower^2 >= expr";
      else if (!(e < hi * hi)) why = "expr >= upper^2";
      if (!why.empty()) {
        r.all_pass = false;
        r.violation = std::array<std::int64_t, 2>{s, t};
        r.reason = why + " at (s, t) = (" + std::to_string(s) + ", " + std::to_string(t) + ")";
        return r;
      }
    }
  }
  if (r.points_checked == 0) throw ContractError("sandwich_probe: region contains no grid point");
  return r;
}

}  // namespace quadsemi::diophantine
