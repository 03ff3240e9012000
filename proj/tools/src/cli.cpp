#include "quadsemi/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "quadsemi/arith.hpp"
#include "quadsemi/diophantine.hpp"
#include "quadsemi/dynamics.hpp"
#include "quadsemi/error.hpp"
#include "quadsemi/exceptional.hpp"
#include "quadsemi/heights.hpp"
#include "quadsemi/oracle.hpp"
#include "quadsemi/portraits.hpp"

namespace quadsemi::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  json inputs = json::object();
  json verdicts = json::object();
  json witnesses = json::object();
  std::ostringstream text;
  int exit_code = kSuccess;
};

struct Globals {
  bool json_output = false;
  bool verbose = false;
  unsigned threads = 0;

  Parallelism par() const { return threads == 0 ? Parallelism::hardware() : Parallelism{threads}; }
};

std::string str(const Integer& n) { return n.get_str(); }

json str_list(const std::vector<Integer>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(str(x));
  return a;
}

json str_list(const portraits::PointSet& xs) { return str_list(std::vector<Integer>(xs.begin(), xs.end())); }

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string join_ints(const std::vector<Integer>& xs) {
  std::vector<std::string> parts;
  for (const auto& x : xs) parts.push_back(str(x));
  return join(parts);
}

Integer parse_integer(const std::string& text, const std::string& what) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  const bool ok = !t.empty() && std::all_of(t.begin() + (t.front() == '-' ? 1 : 0), t.end(),
                                            [](unsigned char ch) { return std::isdigit(ch); }) &&
                  t != "-";
  if (!ok) throw UsageError(what + ": '" + text + "' is not an integer");
  return Integer(t);
}

std::vector<Integer> parse_integer_list(const std::string& text, const std::string& what) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_integer(item, what));
  if (out.empty()) throw UsageError(what + ": expected a comma-separated list of integers");
  return out;
}

dynamics::GeneratorSet parse_generators(const std::string& text) {
  return dynamics::GeneratorSet(parse_integer_list(text, "-c"));
}

dynamics::Word parse_word(const std::string& text, std::size_t alphabet) {
  dynamics::Word w;
  for (const auto& idx : parse_integer_list(text, "-w")) {
    if (idx < 1 || idx > static_cast<long>(alphabet)) {
      throw UsageError("-w: index " + str(idx) + " is outside 1.." + std::to_string(alphabet));
    }
    w.indices.push_back(idx.get_ui() - 1);
  }
  return w;
}

json generators_json(const dynamics::GeneratorSet& gens) {
  json a = json::array();
  for (const auto& m : gens.maps()) a.push_back(str(m.c));
  return a;
}

json verdict_json(const dynamics::StabilityVerdict& v) {
  json j;
  j["status"] = dynamics::to_string(v.status);
  j["first_square_index"] = v.first_square_index ? json(*v.first_square_index) : json(nullptr);
  j["witness_root"] = v.witness_root ? json(str(*v.witness_root)) : json(nullptr);
  return j;
}

std::string verdict_text(const dynamics::StabilityVerdict& v) {
  if (v.certified()) return "CertifiedIrreducible";
  return "Unknown at index " + std::to_string(*v.first_square_index) + " (entry = " + str(*v.witness_root) + "^2)";
}

// Commands

struct OrbitArgs {
  std::string generators, word;
};

void cmd_orbit(const OrbitArgs& a, const Globals&, Report& r) {
  const auto gens = parse_generators(a.generators);
  const auto word = parse_word(a.word, gens.size());
  const auto orbit = dynamics::adjusted_critical_orbit(gens, word);
  const auto verdict = dynamics::stability_certificate(gens, word);
  r.inputs["generators"] = generators_json(gens);
  r.inputs["word"] = dynamics::to_string(word);
  r.verdicts = verdict_json(verdict);
  r.witnesses["orbit"] = str_list(orbit.entries);
  r.text << "adjusted critical orbit: [" << join_ints(orbit.entries) << "]\n";
  r.text << "verdict: " << verdict_text(verdict) << "\n";
}

struct ScanWordsArgs {
  std::string generators;
  std::size_t max_len = 0;
};

void cmd_scan_words(const ScanWordsArgs& a, const Globals& g, Report& r) {
  const auto gens = parse_generators(a.generators);
  const auto scanned = dynamics::scan_words(gens, a.max_len, g.par());
  r.inputs["generators"] = generators_json(gens);
  r.inputs["max_len"] = a.max_len;
  json certified = json::array();
  json all = json::array();
  for (const auto& sw : scanned) {
    if (sw.verdict.certified()) certified.push_back(dynamics::to_string(sw.word));
    if (g.verbose) {
      json item = verdict_json(sw.verdict);
      item["word"] = dynamics::to_string(sw.word);
      all.push_back(item);
    }
  }
  r.verdicts["words"] = scanned.size();
  r.verdicts["certified"] = certified.size();
  r.witnesses["certified_words"] = certified;
  if (g.verbose) r.witnesses["scan"] = all;
  r.text << "words scanned: " << scanned.size() << ", CertifiedIrreducible: " << certified.size() << "\n";
  for (const auto& sw : scanned) {
    if (sw.verdict.certified() || g.verbose) {
      r.text << "  " << dynamics::to_string(sw.word) << "  " << verdict_text(sw.verdict) << "\n";
    }
  }
}

struct PortraitArgs {
  std::string c;
};

void cmd_portrait(const PortraitArgs& a, const Globals&, Report& r) {
  const Integer c = parse_integer(a.c, "-c");
  const auto p = portraits::portrait(c);
  r.inputs["c"] = str(c);
  if (p.square_form) {
    r.verdicts["square_form"] = {{"kind", portraits::to_string(p.square_form->kind)}, {"s", str(p.square_form->s)}};
  } else {
    r.verdicts["square_form"] = nullptr;
  }
  r.verdicts["preper_count"] = p.preper.size();
  r.witnesses["fixed_points"] = str_list(p.periodic.fixed_points);
  json cycles = json::array();
  for (const auto& [x, y] : p.periodic.two_cycles) cycles.push_back(json::array({str(x), str(y)}));
  r.witnesses["two_cycles"] = cycles;
  r.witnesses["preper"] = str_list(p.preper);

  r.text << "x^2 + " << c << "\n";
  r.text << "fixed points: {" << join_ints({p.periodic.fixed_points.begin(), p.periodic.fixed_points.end()}) << "}\n";
  r.text << "2-cycles: ";
  if (p.periodic.two_cycles.empty()) r.text << "none";
  for (const auto& [x, y] : p.periodic.two_cycles) r.text << "{" << x << ", " << y << "} ";
  r.text << "\npreperiodic points: {" << join_ints({p.preper.begin(), p.preper.end()}) << "}\n";
  r.text << "square form: "
         << (p.square_form ? portraits::to_string(p.square_form->kind) + "(s=" + str(p.square_form->s) + ")" : "none")
         << "\n";
}

json square_image_json(const Integer& c1, const Integer& c2, const exceptional::SquareImageVerdict& v) {
  json j;
  j["order"] = json::array({str(c1), str(c2)});
  j["status"] = exceptional::to_string(v.status);
  j["N"] = v.N;
  j["rigor"] = heights::to_string(v.rigor);
  j["reason"] = v.reason;
  j["b"] = v.b ? json(str(*v.b)) : json(nullptr);
  j["value"] = v.value ? json(str(*v.value)) : json(nullptr);
  return j;
}

struct ExceptionalArgs {
  std::string c1, c2;
};

void cmd_exceptional(const ExceptionalArgs& a, const Globals&, Report& r) {
  const Integer c1 = parse_integer(a.c1, "-c1");
  const Integer c2 = parse_integer(a.c2, "-c2");
  const auto v = exceptional::is_exceptional_pair(c1, c2);
  r.inputs["c1"] = str(c1);
  r.inputs["c2"] = str(c2);
  r.verdicts["is_exceptional"] = v.is_exceptional;
  r.verdicts["closed_form"] = v.closed_form ? json(exceptional::to_string(*v.closed_form)) : json(nullptr);
  json cond1 = json::array();
  json cond2 = json::array();
  for (const auto& w : v.cond1_witnesses) cond1.push_back(w ? json(str(*w)) : json(nullptr));
  for (const auto& w : v.cond2_witnesses) {
    cond2.push_back(w ? json{{"b", str(w->b)}, {"image", str(w->image)}} : json(nullptr));
  }
  r.witnesses["cond1_witnesses"] = cond1;
  r.witnesses["cond2_witnesses"] = cond2;
  json images = json::array();
  for (const auto& [x, y] : {std::pair{c1, c2}, std::pair{c2, c1}}) {
    images.push_back(square_image_json(x, y, exceptional::certify_no_square_images(x, y)));
  }
  r.verdicts["square_images"] = images;

  r.text << "(" << c1 << ", " << c2 << "): " << (v.is_exceptional ? "exceptional" : "not exceptional");
  if (v.closed_form) r.text << ", closed form " << exceptional::to_string(*v.closed_form);
  r.text << "\n";
  const char* names[2] = {"phi_1", "phi_2"};
  for (std::size_t k = 0; k < 2; ++k) {
    r.text << "  square periodic point of " << names[k] << ": "
           << (v.cond1_witnesses[k] ? str(*v.cond1_witnesses[k]) : std::string("none")) << "\n";
  }
  const char* dirs[2] = {"phi_1(b) in PrePer(phi_2)", "phi_2(b) in PrePer(phi_1)"};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& w = v.cond2_witnesses[k];
    r.text << "  " << dirs[k] << ": " << (w ? "b = " + str(w->b) + ", image " + str(w->image) : std::string("none"))
           << "\n";
  }
  for (const auto& item : images) {
    r.text << "  square images, order (" << item["order"][0].get<std::string>() << ", "
           << item["order"][1].get<std::string>() << "): " << item["status"].get<std::string>();
    if (item["status"] != "Inapplicable") r.text << " (N = " << item["N"].get<unsigned>() << ")";
    r.text << " - " << item["reason"].get<std::string>() << "\n";
  }
}

struct ScanPairsArgs {
  long min = -100, max = 100;
};

void cmd_scan_pairs(const ScanPairsArgs& a, const Globals& g, Report& r) {
  if (a.min > a.max) throw UsageError("--min must not exceed --max");
  const auto pairs = exceptional::scan_exceptional_pairs(a.min, a.max, g.par());
  r.inputs["min"] = a.min;
  r.inputs["max"] = a.max;
  json list = json::array();
  bool equivalent = true;
  std::set<std::pair<Integer, Integer>> found;
  for (const auto& p : pairs) {
    list.push_back(json::array({str(p.c1), str(p.c2)}));
    found.insert({p.c1, p.c2});
    if (!p.verdict.closed_form) equivalent = false;
  }
  // Every closed-form pair inside the grid must be found as well.
  auto in_grid = [&](const Integer& c) { return c >= a.min && c <= a.max; };
  std::vector<std::pair<Integer, Integer>> expected{{-1, -3}};
  for (Integer s = 0;; ++s) {
    const Integer s2 = s * s;
    const Integer fixed = s2 - s2 * s2;
    const Integer two = -1 - s2 - s2 * s2;
    if (!in_grid(fixed) && !in_grid(two) && fixed < a.min && two < a.min) break;
    expected.emplace_back(fixed, two);
  }
  for (const auto& [x, y] : expected) {
    if (!in_grid(x) || !in_grid(y)) continue;
    if (!found.contains({x, y}) || !found.contains({y, x})) equivalent = false;
  }
  r.verdicts["count"] = pairs.size();
  r.verdicts["closed_form_equivalence"] = equivalent;
  r.witnesses["pairs"] = list;
  if (!equivalent) r.exit_code = kRefuted;
  r.text << "exceptional ordered pairs in [" << a.min << ", " << a.max << "]^2: " << pairs.size() << "\n";
  for (const auto& p : pairs) {
    r.text << "  (" << p.c1 << ", " << p.c2 << ")  "
           << (p.verdict.closed_form ? exceptional::to_string(*p.verdict.closed_form) : std::string("NO CLOSED FORM"))
           << "\n";
  }
  r.text << "closed-form equivalence: " << (equivalent ? "holds" : "FAILS") << "\n";
}

struct PrefixArgs {
  std::string generators;
  std::string b_range = "200";
  std::string box = "0";
  std::size_t iterations = 30;
  std::size_t expand = 0;
};

void cmd_construct_prefix(const PrefixArgs& a, const Globals& g, Report& r) {
  const auto gens = parse_generators(a.generators);
  exceptional::RecipeOptions opts;
  opts.b_range = parse_integer(a.b_range, "--b-range");
  opts.bound.search_box = parse_integer(a.box, "--box");
  opts.bound.iterations = a.iterations;
  const auto recipe = exceptional::construct_irreducible_prefix(gens, opts);
  r.inputs["generators"] = generators_json(gens);
  r.inputs["b_range"] = str(opts.b_range);
  r.inputs["box"] = str(opts.bound.search_box);
  r.inputs["iterations"] = opts.bound.iterations;
  r.verdicts["shape"] = exceptional::to_string(recipe.shape);
  r.verdicts["i"] = recipe.i + 1;
  r.verdicts["j"] = recipe.j + 1;
  r.verdicts["N"] = recipe.N;
  r.verdicts["rigor"] = heights::to_string(recipe.rigor);
  r.verdicts["prefix"] = dynamics::to_string(recipe.prefix());
  r.witnesses["certificate"] = recipe.certificate;

  r.text << exceptional::to_string(recipe.shape) << " recipe: i = " << recipe.i + 1 << ", j = " << recipe.j + 1
         << ", N = " << recipe.N << " (" << heights::to_string(recipe.rigor) << ")\n";
  r.text << "prefix word: " << dynamics::to_string(recipe.prefix()) << "\n";
  for (const auto& line : recipe.certificate) r.text << "  " << line << "\n";

  if (a.expand > 0) {
    // Append every F of length 1..expand and re-run the orbit certificate.
    const auto tails = dynamics::scan_words(gens, a.expand, g.par());
    std::size_t certified = 0;
    json failures = json::array();
    for (const auto& tail : tails) {
      dynamics::Word w = recipe.prefix();
      w.indices.insert(w.indices.end(), tail.word.indices.begin(), tail.word.indices.end());
      if (dynamics::stability_certificate(gens, w).certified()) {
        ++certified;
      } else {
        failures.push_back(dynamics::to_string(w));
      }
    }
    r.verdicts["expansion"] = {{"depth", a.expand}, {"words", tails.size()}, {"certified", certified}};
    r.witnesses["expansion_failures"] = failures;
    r.text << "expansion with |F| <= " << a.expand << ": " << certified << "/" << tails.size()
           << " CertifiedIrreducible\n";
    if (!failures.empty()) r.exit_code = kRefuted;
  }
}

struct VerifyArgs {
  std::string id;
  bool all = false;
  std::int64_t bound = 50;
};

json solutions_json(const diophantine::SolutionSet& sols) {
  json a = json::array();
  for (const auto& s : sols) a.push_back(json::array({s[0], s[1], s[2], s[3]}));
  return a;
}

void cmd_verify_lemma(const VerifyArgs& a, const Globals& g, Report& r) {
  if (a.all == !a.id.empty()) throw UsageError("verify-lemma: give exactly one of <id> or --all");
  std::vector<const diophantine::LemmaEntry*> entries;
  if (a.all) {
    for (const auto& e : diophantine::registry()) entries.push_back(&e);
  } else {
    entries.push_back(&diophantine::find_entry(a.id));
  }
  r.inputs["ids"] = a.all ? json("all") : json(a.id);
  r.inputs["bound"] = a.bound;
  json results = json::array();
  std::size_t matched = 0;
  for (const auto* e : entries) {
    const auto v = diophantine::verify_lemma(*e, a.bound, g.par());
    if (v.match()) ++matched;
    json item;
    item["id"] = e->id;
    item["result"] = v.match() ? "Match" : "Mismatch";
    item["found"] = v.found.size();
    item["extra"] = solutions_json(v.extra);
    item["missing"] = solutions_json(v.missing);
    if (e->has(diophantine::TechniqueKind::Curve)) item["note"] = "desk-scale check, completeness rests on the cited curve computation";
    if (g.verbose) item["solutions"] = solutions_json(v.found);
    results.push_back(item);
    r.text << e->id << "  " << (v.match() ? "Match" : "Mismatch") << "  (" << v.found.size()
           << " canonical solutions with |s|,|t| <= " << a.bound << ")";
    if (e->has(diophantine::TechniqueKind::Curve)) r.text << "  [curve: desk-scale check]";
    r.text << "\n";
    for (const auto& s : v.extra) r.text << "    extra   (" << s[0] << ", " << s[1] << ", " << s[2] << ", " << s[3] << ")\n";
    for (const auto& s : v.missing) r.text << "    missing (" << s[0] << ", " << s[1] << ", " << s[2] << ", " << s[3] << ")\n";
  }
  r.verdicts["matched"] = matched;
  r.verdicts["total"] = entries.size();
  r.witnesses["results"] = results;
  r.text << matched << "/" << entries.size() << " Match\n";
  if (matched != entries.size()) r.exit_code = kRefuted;
}

struct ObstructionArgs {
  std::string id;
  std::int64_t modulus = 4;
};

void cmd_obstruction(const ObstructionArgs& a, const Globals&, Report& r) {
  const auto& e = diophantine::find_entry(a.id);
  const auto res = diophantine::modular_obstruction(e, a.modulus);
  r.inputs["id"] = e.id;
  r.inputs["modulus"] = a.modulus;
  r.verdicts["confirmed"] = res.confirmed;
  r.verdicts["residue_solutions"] = res.residue_solutions;
  r.witnesses["system"] = e.system.describe();
  r.witnesses["witness"] = res.witness ? json(*res.witness) : json(nullptr);
  r.text << e.id << ": " << e.system.describe() << "\n";
  r.text << "mod " << a.modulus << ": " << (res.confirmed ? "no solutions (obstruction confirmed)" : "obstruction refuted")
         << "\n";
  if (res.witness) {
    const auto& w = *res.witness;
    r.text << "  residue solution (x, y, s, t) = (" << w[0] << ", " << w[1] << ", " << w[2] << ", " << w[3] << ")\n";
  }
  if (!res.confirmed) r.exit_code = kRefuted;
}

struct CurveArgs {
  std::string coeffs;
  std::int64_t bound = 1000;
};

void cmd_curve_points(const CurveArgs& a, const Globals&, Report& r) {
  const auto c = parse_integer_list(a.coeffs, "--coeffs");
  if (c.size() != 3) throw UsageError("--coeffs expects exactly three integers a4,a2,a0");
  if (a.bound < 1) throw UsageError("--bound must be at least 1");
  const auto pts = diophantine::quartic_curve_points(c[0], c[1], c[2], a.bound);
  r.inputs["coeffs"] = str_list(c);
  r.inputs["bound"] = a.bound;
  json list = json::array();
  for (const auto& p : pts) list.push_back(json::array({p.q, str(p.y)}));
  r.verdicts["count"] = pts.size();
  r.witnesses["points"] = list;
  r.text << "y^2 = " << c[0] << " q^4 + " << c[1] << " q^2 + " << c[2] << ", |q| <= " << a.bound << ": "
         << pts.size() << " points with y >= 0\n";
  for (const auto& p : pts) r.text << "  (" << p.q << ", " << p.y << ")\n";
}

struct HeightsArgs {
  std::string c;
  std::size_t iterations = 30;
  std::string box = "0";
  std::string points;
};

void cmd_heights(const HeightsArgs& a, const Globals& g, Report& r) {
  const Integer c = parse_integer(a.c, "-c");
  const Integer box = parse_integer(a.box, "--box");
  if (a.iterations < 1) throw UsageError("--iterations must be at least 1");
  const dynamics::QuadraticMap map{c};
  r.inputs["c"] = str(c);
  r.inputs["iterations"] = a.iterations;
  r.inputs["box"] = str(box);
  r.verdicts["C"] = heights::height_constant(c);
  r.text << "x^2 + " << c << ": C = " << heights::height_constant(c) << "\n";
  if (c == 0 || c == -1) {
    r.verdicts["bound"] = nullptr;
    r.text << "iterate bound: undefined for c in {0, -1}\n";
  } else {
    const auto bound = heights::compute_iterate_bound(map, box, a.iterations, g.par());
    r.verdicts["bound"] = {{"N", bound.N},
                           {"B", bound.B},
                           {"hmin", bound.hmin},
                           {"hmin_witness", str(bound.hmin_witness)},
                           {"rigor", heights::to_string(bound.rigor)}};
    json pts = json::array();
    for (const auto& p : heights::integral_points_on_phi2(map)) pts.push_back(json::array({str(p.x), str(p.y)}));
    r.witnesses["integral_points"] = pts;
    r.text << "hmin = " << bound.hmin << " at a = " << bound.hmin_witness << " (" << heights::to_string(bound.rigor)
           << ")\n";
    r.text << "B = " << bound.B << ", N = " << bound.N << "\n";
    r.text << "integral points on Y^2 = phi^2(X): " << pts.size() << "\n";
    for (const auto& p : pts) r.text << "  (" << p[0].get<std::string>() << ", " << p[1].get<std::string>() << ")\n";
  }
  if (!a.points.empty()) {
    json hs = json::array();
    for (const auto& x : parse_integer_list(a.points, "-a")) {
      const auto est = heights::canonical_height(map, x, a.iterations);
      hs.push_back({{"a", str(x)}, {"value", est.value}, {"error", est.error}});
      r.text << "  hhat(" << x << ") = " << est.value << " +- " << est.error << "\n";
    }
    r.witnesses["heights"] = hs;
  }
}

struct McArgs {
  std::string generators;
  std::size_t depth = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string weights;
};

void cmd_mc_stability(const McArgs& a, const Globals& g, Report& r) {
  const auto gens = parse_generators(a.generators);
  if (a.trials < 1) throw UsageError("-T must be at least 1");
  std::vector<double> weights;
  if (a.weights.empty()) {
    weights.assign(gens.size(), 1.0);
  } else {
    std::stringstream ss(a.weights);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        weights.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw UsageError("--weights: '" + item + "' is not a number");
      }
    }
    if (weights.size() != gens.size()) throw UsageError("--weights needs one weight per generator");
  }
  const dynamics::SequenceSampler sampler(weights, a.seed);
  const auto est = dynamics::monte_carlo_stability(gens, sampler, a.depth, a.trials, g.par());
  r.inputs["generators"] = generators_json(gens);
  r.inputs["depth"] = a.depth;
  r.inputs["trials"] = a.trials;
  r.inputs["seed"] = a.seed;
  r.inputs["weights"] = sampler.weights;
  r.verdicts["estimate"] = est.estimate;
  r.verdicts["square_free"] = est.square_free;
  r.verdicts["standard_error"] = est.standard_error;
  r.text << "square-free fraction at depth " << a.depth << ": " << est.estimate << " (" << est.square_free << "/"
         << est.trials << ", standard error " << est.standard_error << ")\n";
}

struct CrossArgs {
  std::string generators;
  std::size_t max_len = 0;
};

void cmd_cross_validate(const CrossArgs& a, const Globals& g, Report& r) {
  const auto gens = parse_generators(a.generators);
  r.inputs["generators"] = generators_json(gens);
  r.inputs["max_len"] = a.max_len;
  const auto rep = oracle::cross_validate(gens, a.max_len, g.par());
  json unknown_irr = json::array();
  for (const auto& rec : rep.unknown_irreducible) unknown_irr.push_back(dynamics::to_string(rec.word));
  r.verdicts["words"] = rep.words;
  r.verdicts["certified"] = rep.certified;
  r.verdicts["unknown_reducible"] = rep.unknown_reducible;
  r.verdicts["unknown_irreducible"] = rep.unknown_irreducible.size();
  r.verdicts["forbidden"] = 0;
  r.witnesses["unknown_irreducible_words"] = unknown_irr;
  r.text << "words: " << rep.words << ", certified: " << rep.certified << " (all confirmed irreducible)"
         << ", unknown+reducible: " << rep.unknown_reducible
         << ", unknown+irreducible: " << rep.unknown_irreducible.size() << ", forbidden: 0\n";
  for (const auto& rec : rep.unknown_irreducible) {
    r.text << "  " << dynamics::to_string(rec.word) << " is irreducible although its orbit has a square\n";
  }
}

std::vector<std::string> normalize(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) {
    if (a == "-c1") out.emplace_back("--c1");
    else if (a == "-c2") out.emplace_back("--c2");
    else out.push_back(a);
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Irreducibility in composition semigroups of x^2 + c over Z", "quadsemi"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json_output, "Machine-readable JSON report");
  app.add_flag("--verbose", g.verbose, "Include full listings");
  app.add_option("--threads", g.threads, "Worker threads (default: available parallelism)")
      ->check(CLI::PositiveNumber);

  std::function<void(Report&)> action;
  std::string command;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_flag("--json", g.json_output, "Machine-readable JSON report");
    s->add_flag("--verbose", g.verbose, "Include full listings");
    s->add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
    s->callback([&command, name] { command = name; });
    return s;
  };

  OrbitArgs orbit;
  auto* s_orbit = sub("orbit", "Adjusted critical orbit and stability certificate of one word");
  s_orbit->add_option("-c", orbit.generators, "Generator constants, e.g. -4,-12")->required();
  s_orbit->add_option("-w", orbit.word, "1-based word, leftmost applied last, e.g. 2,1")->required();

  ScanWordsArgs scan;
  auto* s_scan = sub("scan-words", "Certificate for every word up to a length");
  s_scan->add_option("-c", scan.generators, "Generator constants")->required();
  s_scan->add_option("-L", scan.max_len, "Maximum word length")->required();

  PortraitArgs portrait;
  auto* s_portrait = sub("portrait", "Periodic and preperiodic points of x^2 + c");
  s_portrait->add_option("-c", portrait.c, "The constant c")->required();

  ExceptionalArgs exc;
  auto* s_exc = sub("exceptional", "Classify the pair (x^2 + c1, x^2 + c2)");
  s_exc->add_option("--c1", exc.c1, "First constant (also -c1)")->required();
  s_exc->add_option("--c2", exc.c2, "Second constant (also -c2)")->required();

  ScanPairsArgs pairs;
  auto* s_pairs = sub("scan-pairs", "Exceptional pairs on a grid");
  s_pairs->add_option("--min", pairs.min, "Smallest constant");
  s_pairs->add_option("--max", pairs.max, "Largest constant");

  PrefixArgs prefix;
  auto* s_prefix = sub("construct-prefix", "Irreducible prefix recipe for a generator set");
  s_prefix->add_option("-c", prefix.generators, "Generator constants")->required();
  s_prefix->add_option("--b-range", prefix.b_range, "Direct sweep range for the exceptional case");
  s_prefix->add_option("--box", prefix.box, "Search box for the minimal height");
  s_prefix->add_option("--iterations", prefix.iterations, "Height iterations");
  s_prefix->add_option("--expand", prefix.expand, "Also certify prefix o F for all |F| <= k");

  VerifyArgs verify;
  auto* s_verify = sub("verify-lemma", "Compare bounded search with a lemma's claimed solutions");
  s_verify->add_option("id", verify.id, "Lemma id, e.g. case1.1");
  s_verify->add_flag("--all", verify.all, "Every lemma in the registry");
  s_verify->add_option("--bound", verify.bound, "Search box |s|,|t| <= B");

  ObstructionArgs obst;
  auto* s_obst = sub("obstruction", "Residue search for a mod-tagged lemma");
  s_obst->add_option("id", obst.id, "Lemma id")->required();
  s_obst->add_option("--mod", obst.modulus, "4 or 8")->required();

  CurveArgs curve;
  auto* s_curve = sub("curve-points", "Integral points on y^2 = a4 q^4 + a2 q^2 + a0");
  s_curve->add_option("--coeffs", curve.coeffs, "a4,a2,a0")->required();
  s_curve->add_option("--bound", curve.bound, "Search |q| <= B");

  HeightsArgs hts;
  auto* s_heights = sub("heights", "Canonical heights, minimal height and the iterate bound N");
  s_heights->add_option("-c", hts.c, "The constant c")->required();
  s_heights->add_option("--iterations", hts.iterations, "Iterations per height estimate");
  s_heights->add_option("--box", hts.box, "Search box for the minimal height");
  s_heights->add_option("-a", hts.points, "Points whose canonical height to report");

  McArgs mc;
  auto* s_mc = sub("mc-stability", "Monte Carlo square-free fraction of random words");
  s_mc->add_option("-c", mc.generators, "Generator constants")->required();
  s_mc->add_option("-L", mc.depth, "Word length")->required();
  s_mc->add_option("-T", mc.trials, "Trials")->required();
  s_mc->add_option("--seed", mc.seed, "64-bit seed")->required();
  s_mc->add_option("--weights", mc.weights, "Per-generator weights, normalized");

  CrossArgs cross;
  auto* s_cross = sub("cross-validate", "Check the orbit certificate against the exact oracle");
  s_cross->add_option("-c", cross.generators, "Generator constants")->required();
  s_cross->add_option("-L", cross.max_len, "Maximum word length")->required();

  try {
    auto args = normalize(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  const std::map<std::string, std::function<void(Report&)>> handlers{
      {"orbit", [&](Report& r) { cmd_orbit(orbit, g, r); }},
      {"scan-words", [&](Report& r) { cmd_scan_words(scan, g, r); }},
      {"portrait", [&](Report& r) { cmd_portrait(portrait, g, r); }},
      {"exceptional", [&](Report& r) { cmd_exceptional(exc, g, r); }},
      {"scan-pairs", [&](Report& r) { cmd_scan_pairs(pairs, g, r); }},
      {"construct-prefix", [&](Report& r) { cmd_construct_prefix(prefix, g, r); }},
      {"verify-lemma", [&](Report& r) { cmd_verify_lemma(verify, g, r); }},
      {"obstruction", [&](Report& r) { cmd_obstruction(obst, g, r); }},
      {"curve-points", [&](Report& r) { cmd_curve_points(curve, g, r); }},
      {"heights", [&](Report& r) { cmd_heights(hts, g, r); }},
      {"mc-stability", [&](Report& r) { cmd_mc_stability(mc, g, r); }},
      {"cross-validate", [&](Report& r) { cmd_cross_validate(cross, g, r); }},
  };

  Report report;
  const auto start = std::chrono::steady_clock::now();
  try {
    handlers.at(command)(report);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun 'quadsemi " << command << " --help' for the expected arguments.\n";
    return kUsageError;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kUsageError;
  } catch (const RegistryError& e) {
    err << "registry error: " << e.what() << "\n";
    return kUsageError;
  } catch (const TheoremViolation& e) {
    if (g.json_output) {
      report.verdicts["theorem_violation"] = {{"statement", e.statement()}, {"report", e.report()}};
      report.exit_code = kRefuted;
    } else {
      err << e.what() << "\n";
      return kRefuted;
    }
  }
  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (g.json_output) {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["inputs"] = report.inputs;
    j["verdicts"] = report.verdicts;
    j["witnesses"] = report.witnesses;
    j["exit_code"] = report.exit_code;
    j["timings"] = {{"total_ms", elapsed_ms}, {"threads", g.par().threads}};
    out << j.dump(2) << "\n";
  } else {
    out << report.text.str();
    if (g.verbose) out << "(" << elapsed_ms << " ms)\n";
  }
  return report.exit_code;
}

}  // namespace quadsemi::cli
