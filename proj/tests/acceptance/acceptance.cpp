#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "quadsemi/diophantine.hpp"
#include "quadsemi/error.hpp"
#include "quadsemi/dynamics.hpp"
#include "quadsemi/exceptional.hpp"
#include "quadsemi/heights.hpp"
#include "quadsemi/oracle.hpp"
#include "quadsemi/portraits.hpp"

using namespace quadsemi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

Outcome lemma_verification() {
  std::size_t matched = 0;
  std::ostringstream bad;
  for (const auto& e : diophantine::registry()) {
    if (diophantine::verify_lemma(e, 50, Parallelism{1}).match()) {
      ++matched;
    } else {
      bad << " " << e.id;
    }
  }
  const auto total = diophantine::registry().size();
  Outcome o{matched == 48 && total == 48, std::to_string(matched) + "/" + std::to_string(total) + " Match"};
  if (!bad.str().empty()) o.detail += ", mismatched:" + bad.str();
  return o;
}

Outcome modular_obstructions() {
  std::size_t tagged = 0, confirmed = 0;
  std::ostringstream bad;
  for (const auto& e : diophantine::registry()) {
    for (std::int64_t m : {4, 8}) {
      if (!e.has(m == 4 ? diophantine::TechniqueKind::Mod4 : diophantine::TechniqueKind::Mod8)) continue;
      ++tagged;
      if (diophantine::modular_obstruction(e, m).confirmed) {
        ++confirmed;
      } else {
        bad << " " << e.id << "/mod" << m;
      }
    }
  }
  Outcome o{tagged >= 8 && confirmed == tagged,
            std::to_string(confirmed) + "/" + std::to_string(tagged) + " tagged obstructions confirmed"};
  if (!bad.str().empty()) o.detail += ", refuted:" + bad.str();
  return o;
}

Outcome curve_spot_checks() {
  using P = std::vector<diophantine::CurvePoint>;
  struct Curve {
    const char* name;
    long a4, a2, a0;
    P expected;
  };
  const std::vector<Curve> curves{
      {"t^4+1", 1, 0, 1, {{0, 1}}},
      {"t^4-1", 1, 0, -1, {{-1, 0}, {1, 0}}},
      {"t^4-t^2+1", 1, -1, 1, {{-1, 1}, {0, 1}, {1, 1}}},
      {"t^4+t^2+1", 1, 1, 1, {{0, 1}}},
      {"t^4+t^2+2", 1, 1, 2, {{-1, 2}, {1, 2}}},
      {"s^4+2s^2+2", 1, 2, 2, {}},
  };
  Outcome o;
  std::size_t ok = 0;
  for (const auto& c : curves) {
    if (diophantine::quartic_curve_points(c.a4, c.a2, c.a0, 1000) == c.expected) {
      ++ok;
    } else {
      o.pass = false;
      o.detail += std::string(" differs: ") + c.name;
    }
  }
  o.detail = std::to_string(ok) + "/6 point lists reproduced" + o.detail;
  return o;
}

Outcome classification() {
  std::set<std::pair<long, long>> expected{{-1, -3}, {-3, -1}};
  for (long s = 0;; ++s) {
    const long s2 = s * s;
    const long a = s2 - s2 * s2, b = -1 - s2 - s2 * s2;
    if (a < -100 || b < -100) break;
    expected.insert({a, b});
    expected.insert({b, a});
  }
  std::set<std::pair<long, long>> found;
  bool closed_forms = true;
  for (const auto& p : exceptional::scan_exceptional_pairs(-100, 100, Parallelism::hardware())) {
    found.insert({p.c1.get_si(), p.c2.get_si()});
    closed_forms = closed_forms && p.verdict.closed_form.has_value();
  }
  return {found == expected && closed_forms,
          std::to_string(found.size()) + " ordered pairs found, " + std::to_string(expected.size()) + " expected"};
}

Outcome remark_reproduction() {
  const dynamics::GeneratorSet gens(ints({-4, -12}));
  const auto scanned = dynamics::scan_words(gens, 10, Parallelism::hardware());
  std::size_t certified = 0;
  bool exact = scanned.size() == 2046;
  for (const auto& sw : scanned) {
    const bool constant = std::all_of(sw.word.indices.begin(), sw.word.indices.end(), [](std::size_t i) { return i == 1; });
    exact = exact && sw.verdict.certified() == constant;
    certified += sw.verdict.certified();
  }
  const std::uint64_t trials = 100000;
  const auto est = dynamics::monte_carlo_stability(gens, dynamics::SequenceSampler::uniform(2, 20240601), 10, trials,
                                                   Parallelism::hardware());
  const double p = std::ldexp(1.0, -10);
  const double tolerance = 3 * std::sqrt(p * (1 - p) / static_cast<double>(trials));
  const bool mc_ok = std::abs(est.estimate - p) <= tolerance;
  std::ostringstream d;
  d << scanned.size() << " words, " << certified << " square-free (constant words only: " << (exact ? "yes" : "no")
    << "); Monte Carlo " << est.estimate << " vs 2^-10 = " << p << " (tolerance " << tolerance << ")";
  return {exact && certified == 10 && mc_ok, d.str()};
}

Outcome oracle_consistency() {
  Outcome o;
  std::ostringstream d;
  for (const auto& cs : {ints({1, 2}), ints({-1, -12}), ints({-4, -12})}) {
    try {
      const auto r = oracle::cross_validate(dynamics::GeneratorSet(cs), 3, Parallelism::hardware());
      d << "{" << cs[0] << "," << cs[1] << "}: " << r.certified << " certified, " << r.unknown_reducible
        << " unknown+reducible, " << r.unknown_irreducible.size() << " unknown+irreducible; ";
      o.pass = o.pass && r.forbidden.empty() && r.words == 14;
    } catch (const TheoremViolation& e) {
      o.pass = false;
      d << e.what() << "; ";
    }
  }
  o.detail = d.str() + "forbidden: " + (o.pass ? "0" : "present");
  return o;
}

Outcome portrait_equivalence() {
  std::size_t agree = 0;
  std::string bad;
  for (long c = -500; c <= 500; ++c) {
    if (portraits::preper_set(Integer(c)) == portraits::brute_force_preper(Integer(c))) {
      ++agree;
    } else if (bad.empty()) {
      bad = ", first disagreement at c = " + std::to_string(c);
    }
  }
  return {agree == 1001, std::to_string(agree) + "/1001 values of c agree" + bad};
}

Outcome height_properties() {
  using heights::QuadraticMap;
  std::mt19937_64 rng(0xC0FFEE);
  constexpr std::size_t n = 30;
  std::size_t doubling = 0, preper_ok = 0, preper_total = 0, bounds_ok = 0, bounds_total = 0;
  for (int i = 0; i < 100; ++i) {
    const long c = static_cast<long>(rng() % 101) - 50;
    const long a = static_cast<long>(rng() % 101) - 50;
    const QuadraticMap phi{c};
    const double C = heights::height_constant(Integer(c));
    const double lhs = std::abs(heights::canonical_height(phi, phi(Integer(a)), n).value -
                                2 * heights::canonical_height(phi, Integer(a), n).value);
    doubling += lhs <= 3 * C / std::ldexp(1.0, n);
    for (const auto& p : portraits::preper_set(Integer(c))) {
      ++preper_total;
      const auto h = heights::canonical_height(phi, p, n);
      preper_ok += h.value <= h.error;
    }
    if (c != 0 && c != -1) {
      ++bounds_total;
      bounds_ok += heights::compute_iterate_bound(phi, Integer(0), n).N >= 2;
    }
  }
  std::size_t curves_ok = 0, curves_total = 0;
  for (long c = -200; c <= 200; ++c) {
    if (c == 0 || c == -1) continue;
    ++curves_total;
    std::vector<heights::IntegralPoint> brute;
    for (long x = -10000; x <= 10000; ++x) {
      const Integer inner = Integer(x) * x + c;
      if (auto r = arith::is_perfect_square(Integer(inner * inner + c))) {
        brute.push_back({x, -*r});
        if (*r != 0) brute.push_back({x, *r});
      }
    }
    std::sort(brute.begin(), brute.end());
    curves_ok += heights::integral_points_on_phi2(QuadraticMap{c}) == brute;
  }
  std::ostringstream d;
  d << "doubling " << doubling << "/100, preperiodic " << preper_ok << "/" << preper_total << ", N>=2 " << bounds_ok
    << "/" << bounds_total << ", integral points " << curves_ok << "/" << curves_total;
  return {doubling == 100 && preper_ok == preper_total && bounds_ok == bounds_total && curves_ok == curves_total,
          d.str()};
}

Outcome constructive_main() {
  Outcome o;
  std::ostringstream d;
  for (const auto& cs : {ints({1, 3}), ints({-12, -21}), ints({-12, -21, -4})}) {
    const dynamics::GeneratorSet gens(cs);
    try {
      const auto recipe = exceptional::construct_irreducible_prefix(gens);
      std::size_t certified = 0, total = 0;
      for (const auto& tail : dynamics::scan_words(gens, 3)) {
        auto w = recipe.prefix();
        w.indices.insert(w.indices.end(), tail.word.indices.begin(), tail.word.indices.end());
        ++total;
        certified += dynamics::stability_certificate(gens, w).certified();
      }
      o.pass = o.pass && certified == total;
      d << exceptional::to_string(recipe.shape) << " " << dynamics::to_string(recipe.prefix()) << " " << certified
        << "/" << total << "; ";
    } catch (const std::exception& e) {
      o.pass = false;
      d << "error: " << e.what() << "; ";
    }
  }
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"lemma verification at B=50", 60, lemma_verification},
      {"modular obstructions", 1, modular_obstructions},
      {"curve spot checks at B=1000", 5, curve_spot_checks},
      {"classification equivalence on [-100,100]^2", 120, classification},
      {"remark reproduction for {x^2-4, x^2-12}", 10, remark_reproduction},
      {"stability/oracle consistency", 60, oracle_consistency},
      {"portrait oracle equivalence |c|<=500", 30, portrait_equivalence},
      {"height properties", 60, height_properties},
      {"constructive prefix recipes", 30, constructive_main},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool within = secs <= c.budget_s;
    const bool pass = o.pass && within;
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << c.name << ": " << o.detail << " ("
              << secs << " s, budget " << c.budget_s << " s" << (within ? "" : ", OVER BUDGET") << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
