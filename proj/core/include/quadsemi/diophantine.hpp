#ifndef QUADSEMI_DIOPHANTINE_HPP
#define QUADSEMI_DIOPHANTINE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "quadsemi/arith.hpp"
#include "quadsemi/multipoly.hpp"
#include "quadsemi/parallel.hpp"

namespace quadsemi::diophantine {

enum class Family {
  A,  // L = s^2 - s^4,      R = t^2 - t^4
  B,  // L = s^2 - s^4,      R = -1 - t^2 - t^4
  C,  // L = -1 - s^2 - s^4, R = -1 - t^2 - t^4
};

/// Right-hand side of one equation as a function of the opposite parameter q.
enum class Selector { PlusSq, MinusSq, PlusSqMinus1, MinusSqMinus1, PlusSqPlus1, MinusSqPlus1 };

std::string to_string(Family f);
std::string to_string(Selector s);
std::int64_t apply(Selector s, std::int64_t q);

/// The four selectors legal on each side of a family, in registry order.
const std::array<Selector, 4>& left_selectors(Family f);
const std::array<Selector, 4>& right_selectors(Family f);

/// x^2 + L(s) = left(t) and y^2 + R(t) = right(s).
struct System {
  Family family = Family::A;
  Selector left = Selector::PlusSq;
  Selector right = Selector::PlusSq;

  /// left and right equations moved to one side, variables (x, y, s, t).
  MultiPoly left_poly() const;
  MultiPoly right_poly() const;
  std::string describe() const;
  friend bool operator==(const System&, const System&) = default;
};

/// Canonical solution (x, y, s, t) with x, y >= 0.
using Solution = std::array<std::int64_t, 4>;
using SolutionSet = std::set<Solution>;

/// Swap (x, y, s, t) -> (y, x, t, s).
Solution swap(const Solution& sol);
SolutionSet swap(const SolutionSet& sols);

/// One coordinate of a claimed family: +-p(u) or p(u) with deg p <= 2.
struct Component {
  bool plus_minus = false;
  std::array<std::int64_t, 3> coeffs{};  // a0 + a1 u + a2 u^2

  bool uses_u() const { return coeffs[1] != 0 || coeffs[2] != 0; }
  std::int64_t at(std::int64_t u) const { return coeffs[0] + u * (coeffs[1] + u * coeffs[2]); }
  std::string to_string() const;
  friend bool operator==(const Component&, const Component&) = default;
};

enum class FamilyKind { Explicit, Parametric };

struct SolutionFamily {
  std::array<Component, 4> components;

  FamilyKind kind() const;
  std::string to_string() const;
  friend bool operator==(const SolutionFamily&, const SolutionFamily&) = default;
};

enum class TechniqueKind { Mod4, Mod8, Sandwich, Curve, Factor, Symmetry };

struct Technique {
  TechniqueKind kind;
  std::string target;  // symmetry only
  std::string to_string() const;
  friend bool operator==(const Technique&, const Technique&) = default;
};

struct LemmaEntry {
  std::string id;  // "case1.1" ... "case3.16"
  System system;
  std::vector<SolutionFamily> claimed;  // empty: no solutions
  std::vector<Technique> techniques;

  bool has(TechniqueKind kind) const;
  std::optional<std::string> symmetry_target() const;
};

/// Parses and validates registry text: 16 records per family, legal
/// selectors, ids case<F>.<4i+j+1> matching the selectors, symmetry targets
/// that exist and precede the entry, and parametric claims satisfying their
/// system for |u| <= 10. Throws RegistryError.
std::vector<LemmaEntry> parse_registry(std::string_view text, const std::string& origin = "<registry>");

/// The bundled registry, or the file named by QUADSEMI_REGISTRY when set.
/// Parsed once per process.
const std::vector<LemmaEntry>& registry();

/// Text of the bundled registry file.
std::string_view embedded_registry_text();

/// Throws ContractError for unknown ids.
const LemmaEntry& find_entry(const std::string& id);

/// Every canonical solution with |s|, |t| <= B. Requires 0 <= B <= 10^4.
SolutionSet solve_system_bounded(const System& system, std::int64_t B, Parallelism par = {});

/// Claimed families instantiated in canonical form and clipped to |s|, |t| <= B.
SolutionSet instantiate_claims(const LemmaEntry& entry, std::int64_t B);

struct LemmaVerdict {
  std::string id;
  std::int64_t bound = 0;
  SolutionSet found;
  SolutionSet extra;    // found but not claimed
  SolutionSet missing;  // claimed but not found

  bool match() const { return extra.empty() && missing.empty(); }
};

/// Requires 1 <= B <= 10^4.
LemmaVerdict verify_lemma(const LemmaEntry& entry, std::int64_t B, Parallelism par = {});

struct ObstructionResult {
  std::string id;
  std::int64_t modulus = 0;
  bool confirmed = false;
  std::size_t residue_solutions = 0;
  std::optional<arith::Residues> witness;  // first residue solution when refuted
};

/// Residue search of both equations together over (Z/m)^4. Throws
/// ContractError unless m is 4 or 8 and the entry carries the matching tag.
ObstructionResult modular_obstruction(const LemmaEntry& entry, std::int64_t modulus);

struct CurvePoint {
  std::int64_t q;
  Integer y;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// All (q, y) with |q| <= B, y >= 0 and y^2 = a4 q^4 + a2 q^2 + a0, by increasing q.
std::vector<CurvePoint> quartic_curve_points(const Integer& a4, const Integer& a2, const Integer& a0, std::int64_t B);

struct SandwichResult {
  bool all_pass = true;
  std::size_t points_checked = 0;
  std::optional<std::array<std::int64_t, 2>> violation;  // (s, t)
  std::string reason;
};

/// Checks lower^2 < expr < upper^2 with |upper| = |lower| + 1 at every grid
/// point |s|, |t| <= grid satisfying `region`. Polynomials use variable 0 for
/// s and 1 for t. Stops at the first violation. Throws ContractError when the
/// region holds at no grid point.
SandwichResult sandwich_probe(const MultiPoly& expr, const MultiPoly& lower, const MultiPoly& upper,
                              const std::function<bool(std::int64_t, std::int64_t)>& region, std::int64_t grid);

}  // namespace quadsemi::diophantine

#endif  // QUADSEMI_DIOPHANTINE_HPP
