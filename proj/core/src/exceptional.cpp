#include "quadsemi/exceptional.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "quadsemi/error.hpp"
#include "quadsemi/multipoly.hpp"

namespace quadsemi::exceptional {

namespace {

using dynamics::QuadraticMap;

bool is_degenerate(const Integer& c) { return c == 0 || c == -1; }

std::optional<Integer> square_periodic_point(const portraits::Portrait& p) {
  for (const auto& x : p.periodic.fixed_points) {
    if (arith::is_perfect_square(x)) return x;
  }
  portraits::PointSet cycle_points;
  for (const auto& [a, b] : p.periodic.two_cycles) {
    cycle_points.insert(a);
    cycle_points.insert(b);
  }
  for (const auto& x : cycle_points) {
    if (arith::is_perfect_square(x)) return x;
  }
  return std::nullopt;
}

// First p in PrePer(other), in increasing order, with p = b^2 + c_self.
std::optional<ImageWitness> image_witness(const Integer& c_self, const portraits::PointSet& other_preper) {
  for (const auto& p : other_preper) {
    if (auto b = arith::is_perfect_square(Integer(p - c_self))) return ImageWitness{*b, p};
  }
  return std::nullopt;
}

std::string join(const portraits::PointSet& points) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& p : points) {
    if (!first) os << ", ";
    os << p.get_str();
    first = false;
  }
  os << '}';
  return os.str();
}

Integer sq(const Integer& x) { return x * x; }

}  // namespace

std::string to_string(const ClosedForm& form) {
  if (form.kind == ClosedFormKind::PairMinus1Minus3) return "Pair_minus1_minus3";
  return "Family(s=" + form.s.get_str() + ")";
}

std::optional<ClosedForm> closed_form(const Integer& c1, const Integer& c2) {
  if ((c1 == -1 && c2 == -3) || (c1 == -3 && c2 == -1)) return ClosedForm{ClosedFormKind::PairMinus1Minus3, 0};
  for (const auto& [fixed, two] : {std::pair{c1, c2}, std::pair{c2, c1}}) {
    const Integer bound = arith::floor_sqrt(arith::floor_sqrt(abs(two))) + 2;
    for (Integer s = 0; s <= bound; ++s) {
      const Integer s2 = s * s;
      if (fixed == s2 - s2 * s2 && two == -1 - s2 - s2 * s2) return ClosedForm{ClosedFormKind::Family, s};
    }
  }
  return std::nullopt;
}

ExceptionalVerdict is_exceptional_pair(const portraits::Portrait& p1, const portraits::Portrait& p2) {
  if (p1.c == p2.c) throw ContractError("is_exceptional_pair: c1 and c2 must be distinct");
  ExceptionalVerdict v;
  v.cond1_witnesses = {square_periodic_point(p1), square_periodic_point(p2)};
  v.cond2_witnesses = {image_witness(p1.c, p2.preper), image_witness(p2.c, p1.preper)};
  v.is_exceptional = v.cond1_witnesses[0] && v.cond1_witnesses[1] && v.cond2_witnesses[0] && v.cond2_witnesses[1];
  v.closed_form = closed_form(p1.c, p2.c);
  return v;
}

ExceptionalVerdict is_exceptional_pair(const Integer& c1, const Integer& c2) {
  if (c1 == c2) throw ContractError("is_exceptional_pair: c1 and c2 must be distinct");
  return is_exceptional_pair(portraits::portrait(c1), portraits::portrait(c2));
}

std::vector<ExceptionalPair> scan_exceptional_pairs(long lo, long hi, Parallelism par) {
  if (lo > hi) throw ContractError("scan_exceptional_pairs: min exceeds max");
  const auto width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<portraits::Portrait> cache(width);
  parallel_chunks(width, par, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) cache[k] = portraits::portrait(Integer(lo + static_cast<long>(k)));
    return 0;
  });
  auto chunks = parallel_chunks(width, par, [&](std::size_t b, std::size_t e) {
    std::vector<ExceptionalPair> found;
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = 0; j < width; ++j) {
        if (i == j) continue;
        auto v = is_exceptional_pair(cache[i], cache[j]);
        if (v.is_exceptional) found.push_back({cache[i].c, cache[j].c, std::move(v)});
      }
    }
    return found;
  });
  std::vector<ExceptionalPair> out;
  for (auto& chunk : chunks) {
    for (auto& pair : chunk) out.push_back(std::move(pair));
  }
  return out;
}

std::string to_string(SquareImageStatus status) {
  switch (status) {
    case SquareImageStatus::Certified: return "Certified";
    case SquareImageStatus::Refuted: return "Refuted";
    case SquareImageStatus::Inapplicable: return "Inapplicable";
  }
  return "?";
}

SquareImageVerdict certify_no_square_images(const Integer& c1, const Integer& c2, const BoundOptions& opts) {
  SquareImageVerdict out;
  if (c1 == c2) {
    out.reason = "c1 and c2 coincide";
    return out;
  }
  if (is_degenerate(c1) || is_degenerate(c2)) {
    out.reason = "c1 and c2 must avoid 0 and -1";
    return out;
  }
  const QuadraticMap phi1{c1};
  const auto bound = heights::compute_iterate_bound(phi1, opts.search_box, opts.iterations);
  out.N = bound.N;
  out.rigor = bound.rigor;

  const auto p1 = portraits::portrait(c1);
  if (!square_periodic_point(p1)) {
    out.status = SquareImageStatus::Certified;
    out.reason = "phi_1 has no square periodic point, so phi_1^N of a preperiodic point is never square";
    return out;
  }
  std::vector<Integer> hits;
  for (const auto& p : p1.preper) {
    if (arith::is_perfect_square(Integer(p - c2))) hits.push_back(p);
  }
  if (hits.empty()) {
    out.status = SquareImageStatus::Certified;
    out.reason = "phi_2(Z) misses PrePer(phi_1) = " + join(p1.preper);
    return out;
  }
  for (const auto& p : hits) {
    Integer value = dynamics::iterate(phi1, out.N, p);
    if (arith::is_perfect_square(value)) {
      out.status = SquareImageStatus::Refuted;
      out.b = *arith::is_perfect_square(Integer(p - c2));
      out.value = std::move(value);
      out.reason = "phi_2(b) = " + p.get_str() + " is preperiodic for phi_1 with a square N-th iterate";
      return out;
    }
  }
  out.status = SquareImageStatus::Certified;
  out.reason = "every point of phi_2(Z) in PrePer(phi_1) has a nonsquare N-th iterate";
  return out;
}

bool ExceptionalPrefixReport::passed() const {
  return !sweep_counterexample && std::all_of(checks.begin(), checks.end(), [](const SubCheck& c) { return c.passed; });
}

ExceptionalPrefixReport check_exceptional_prefix(const Integer& s_in, const Integer& b_range, const BoundOptions& opts) {
  const Integer s = abs(s_in);
  if (s <= 1) throw ContractError("check_exceptional_prefix: s must avoid 0 and +-1");
  if (b_range < 0) throw ContractError("check_exceptional_prefix: b_range must be nonnegative");
  ExceptionalPrefixReport r;
  r.s = s;
  const Integer s2 = sq(s);
  r.c1 = s2 - s2 * s2;
  r.c2 = -1 - s2 - s2 * s2;
  r.b_range = b_range;
  const QuadraticMap phi1{r.c1};
  const QuadraticMap phi2{r.c2};
  const auto bound = heights::compute_iterate_bound(phi1, opts.search_box, opts.iterations);
  r.N = bound.N;
  r.rigor = bound.rigor;

  const portraits::PointSet expected{s2, Integer(-s2), Integer(1 - s2), Integer(s2 - 1)};
  const auto preper = portraits::preper_set(r.c1);
  {
    const bool closed = preper == expected;
    const bool identities = phi1(s2) == s2 && phi1(Integer(-s2)) == s2 && phi1(Integer(1 - s2)) == 1 - s2 &&
                            phi1(Integer(s2 - 1)) == 1 - s2;
    r.checks.push_back({"preper_closed_form", closed && identities, "PrePer(phi_1) = " + join(preper)});
  }
  {
    const Integer fixed = 1 - s2;
    const Integer image = dynamics::iterate(phi1, r.N, fixed);
    const bool ok = image == fixed && !arith::is_perfect_square(image);
    r.checks.push_back({"fixed_branch_nonsquare", ok,
                        "phi_1^N(+-(1-s^2)) = " + image.get_str() + ", and y^2 + s^2 = 1 needs |s| <= 1"});
  }
  {
    const MultiPoly b = MultiPoly::var(0);
    const MultiPoly sv = MultiPoly::var(1);
    const MultiPoly eq = b.pow(2) + sv.pow(2) - sv.pow(4) + sv.pow(2) + 1;
    const auto sols = arith::residue_search(std::span(&eq, 1), 4, 2);
    r.checks.push_back({"mod4_obstruction", sols.empty(),
                        "b^2 + s^2 - s^4 = -(s^2+1) has " + std::to_string(sols.size()) + " solutions mod 4"});
  }
  // (b - s^2)(b + s^2) = 1 and (z - s^2)(z + s^2) = 1 force s^2 = (e - d)/2 for a divisor pair of 1.
  auto factor_check = [&](const std::string& name, const std::string& what) {
    std::set<Integer> forced;
    for (const auto& [d, e] : arith::divisor_pairs(1)) forced.insert((e - d) / 2);
    std::string listed;
    for (const auto& v : forced) listed += (listed.empty() ? "" : ", ") + v.get_str();
    r.checks.push_back({name, !forced.contains(s2), what + " forces s^2 in {" + listed + "}"});
  };
  factor_check("plus_branch_factorization", "s^2+1 = b^2 + s^2 - s^4");
  factor_check("minus_branch_factorization", "phi_2(z) = -s^2");
  {
    const bool outside = !preper.contains(r.c2);
    const Integer middle = dynamics::iterate(phi1, r.N, r.c2);
    const bool ok = outside && !arith::is_perfect_square(middle);
    r.checks.push_back({"middle_entry", ok,
                        "-1-s^2-s^4 = " + r.c2.get_str() + (outside ? " is not" : " is") +
                            " preperiodic for phi_1; phi_1^N of it is " + (ok ? "nonsquare" : "square")});
  }
  {
    const bool irreducible = is_irreducible_generator(r.c1);
    const auto stoll = stoll_check(r.c1, r.N);
    r.checks.push_back({"leading_entries", irreducible && !stoll,
                        "-c_1 = " + Integer(-r.c1).get_str() + (irreducible ? " nonsquare" : " square") +
                            (stoll ? ", phi_1^" + std::to_string(*stoll) + "(0) square" : ", phi_1^n(0) nonsquare for 2 <= n <= N")});
  }
  for (Integer b = 0; b <= b_range; ++b) {
    const Integer value = dynamics::iterate(phi1, r.N, phi2(phi1(b)));
    if (arith::is_perfect_square(value)) {
      r.sweep_counterexample = b;
      break;
    }
  }
  return r;
}

std::optional<std::size_t> stoll_check(const Integer& c, std::size_t n_max) {
  if (is_degenerate(c)) throw ContractError("stoll_check: c must avoid 0 and -1");
  const QuadraticMap phi{c};
  Integer x = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    x = phi(x);
    if (n >= 2 && arith::is_perfect_square(x)) return n;
  }
  return std::nullopt;
}

std::string to_string(PrefixShape shape) { return shape == PrefixShape::TwoLetter ? "TwoLetter" : "ThreeLetter"; }

dynamics::Word PrefixRecipe::prefix() const {
  dynamics::Word w;
  w.indices.assign(N, i);
  w.indices.push_back(j);
  if (shape == PrefixShape::ThreeLetter) w.indices.push_back(i);
  return w;
}

bool is_irreducible_generator(const Integer& c) { return !arith::is_perfect_square(Integer(-c)); }

PrefixRecipe construct_irreducible_prefix(const dynamics::GeneratorSet& gens, const RecipeOptions& opts) {
  std::vector<std::size_t> irreducible;
  for (std::size_t k = 0; k < gens.size() && irreducible.size() < 2; ++k) {
    if (is_irreducible_generator(gens[k].c)) irreducible.push_back(k);
  }
  if (irreducible.size() < 2) {
    throw ContractError("construct_irreducible_prefix: need at least two irreducible generators (x^2 + c with -c nonsquare)");
  }
  const std::size_t a = irreducible[0];
  const std::size_t b = irreducible[1];
  const Integer& ca = gens[a].c;
  const Integer& cb = gens[b].c;
  const std::string pair = "(" + ca.get_str() + ", " + cb.get_str() + ")";

  const auto verdict = is_exceptional_pair(ca, cb);
  if (!verdict.is_exceptional) {
    std::string attempts;
    for (const auto& [i, j] : {std::pair{a, b}, std::pair{b, a}}) {
      const auto cert = certify_no_square_images(gens[i].c, gens[j].c, opts.bound);
      attempts += "  order (" + gens[i].c.get_str() + ", " + gens[j].c.get_str() + "): " + to_string(cert.status) +
                  " - " + cert.reason + "\n";
      if (cert.status != SquareImageStatus::Certified) continue;
      if (auto n = stoll_check(gens[i].c, cert.N)) {
        throw TheoremViolation("phi^n(0) is not a square for n >= 2",
                               "c = " + gens[i].c.get_str() + ", n = " + std::to_string(*n));
      }
      PrefixRecipe recipe;
      recipe.i = i;
      recipe.j = j;
      recipe.N = cert.N;
      recipe.shape = PrefixShape::TwoLetter;
      recipe.rigor = cert.rigor;
      recipe.certificate = {
          "pair " + pair + " is not exceptional",
          "-c_i = " + Integer(-gens[i].c).get_str() + " is not a square",
          "phi_i^n(0) nonsquare for 2 <= n <= N",
          "phi_i^N(phi_j(b)) nonsquare for all b: " + cert.reason,
      };
      return recipe;
    }
    throw TheoremViolation("a non-exceptional pair admits N with phi_1^N(phi_2(b)) never square (some order)",
                           "pair " + pair + "\n" + attempts);
  }

  const auto& form = verdict.closed_form;
  if (!form || form->kind != ClosedFormKind::Family || form->s < 2) {
    throw TheoremViolation("an exceptional pair of irreducible maps has the form (s^2-s^4, -1-s^2-s^4), |s| >= 2",
                           "pair " + pair + (form ? " matched " + to_string(*form) : " matched no closed form"));
  }
  const Integer s2 = form->s * form->s;
  const bool a_is_fixed = ca == s2 - s2 * s2;
  const std::size_t i = a_is_fixed ? a : b;
  const std::size_t j = a_is_fixed ? b : a;
  const auto report = check_exceptional_prefix(form->s, opts.b_range, opts.bound);
  if (!report.passed()) {
    std::string details;
    for (const auto& c : report.checks) details += "  " + c.name + ": " + (c.passed ? "ok" : "FAILED") + " - " + c.detail + "\n";
    if (report.sweep_counterexample) details += "  sweep counterexample b = " + report.sweep_counterexample->get_str() + "\n";
    throw TheoremViolation("phi_1^N o phi_2 o phi_1(b) is never a square for the exceptional family", details);
  }
  PrefixRecipe recipe;
  recipe.i = i;
  recipe.j = j;
  recipe.N = report.N;
  recipe.shape = PrefixShape::ThreeLetter;
  recipe.rigor = report.rigor;
  recipe.certificate.push_back("pair " + pair + " is exceptional: " + to_string(*form));
  for (const auto& c : report.checks) recipe.certificate.push_back(c.name + ": " + c.detail);
  recipe.certificate.push_back("no square phi_1^N(phi_2(phi_1(b))) for |b| <= " + opts.b_range.get_str());
  return recipe;
}

}  // namespace quadsemi::exceptional
