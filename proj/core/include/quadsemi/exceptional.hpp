#ifndef QUADSEMI_EXCEPTIONAL_HPP
#define QUADSEMI_EXCEPTIONAL_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadsemi/arith.hpp"
#include "quadsemi/dynamics.hpp"
#include "quadsemi/heights.hpp"
#include "quadsemi/parallel.hpp"
#include "quadsemi/portraits.hpp"

namespace quadsemi::exceptional {

/// Parameters for the iterate bound N used by every certificate here.
struct BoundOptions {
  Integer search_box = 0;  // effective box is max(search_box, |c| + 1)
  std::size_t iterations = 30;
};

enum class ClosedFormKind { PairMinus1Minus3, Family };

struct ClosedForm {
  ClosedFormKind kind;
  Integer s;  // Family only: (c1, c2) = (s^2 - s^4, -1 - s^2 - s^4) up to order
  friend bool operator==(const ClosedForm&, const ClosedForm&) = default;
};

std::string to_string(const ClosedForm& form);

/// (-1, -3) or (s^2 - s^4, -1 - s^2 - s^4) for some s >= 0, in either order.
std::optional<ClosedForm> closed_form(const Integer& c1, const Integer& c2);

struct ImageWitness {
  Integer b;      // b >= 0
  Integer image;  // b^2 + c_self, a preperiodic point of the other map
};

struct ExceptionalVerdict {
  bool is_exceptional = false;
  /// Square periodic point s^2 of phi_1 and phi_2, when one exists.
  std::array<std::optional<Integer>, 2> cond1_witnesses;
  /// [0]: phi_1(b) in PrePer(phi_2); [1]: phi_2(b) in PrePer(phi_1).
  std::array<std::optional<ImageWitness>, 2> cond2_witnesses;
  std::optional<ClosedForm> closed_form;
};

/// Both maps have a square periodic point and each map's integer image meets
/// the other's preperiodic set. Throws ContractError when c1 == c2.
ExceptionalVerdict is_exceptional_pair(const Integer& c1, const Integer& c2);
ExceptionalVerdict is_exceptional_pair(const portraits::Portrait& p1, const portraits::Portrait& p2);

struct ExceptionalPair {
  Integer c1;
  Integer c2;
  ExceptionalVerdict verdict;
};

/// Every ordered pair of distinct c1, c2 in [lo, hi] that is exceptional,
/// in lexicographic (c1, c2) order.
std::vector<ExceptionalPair> scan_exceptional_pairs(long lo, long hi, Parallelism par = {});

enum class SquareImageStatus { Certified, Refuted, Inapplicable };

std::string to_string(SquareImageStatus status);

struct SquareImageVerdict {
  SquareImageStatus status = SquareImageStatus::Inapplicable;
  unsigned N = 0;
  heights::Rigor rigor = heights::Rigor::BoxSearched;
  std::string reason;
  /// Refuted: phi_1^N(phi_2(b)) = value is a perfect square.
  std::optional<Integer> b;
  std::optional<Integer> value;
};

/// Decides whether phi_1^N(phi_2(b)) avoids squares for every integer b, with
/// N the iterate bound of phi_1. Inapplicable when c1 == c2 or either is 0 or -1.
SquareImageVerdict certify_no_square_images(const Integer& c1, const Integer& c2, const BoundOptions& opts = {});

struct SubCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExceptionalPrefixReport {
  Integer s;
  Integer c1;
  Integer c2;
  unsigned N = 0;
  heights::Rigor rigor = heights::Rigor::BoxSearched;
  std::vector<SubCheck> checks;
  Integer b_range;
  std::optional<Integer> sweep_counterexample;

  bool passed() const;
};

/// For (c1, c2) = (s^2 - s^4, -1 - s^2 - s^4) with |s| >= 2: re-checks each
/// finite step showing phi_1^N(phi_2(phi_1(b))) is never a square, then sweeps
/// |b| <= b_range directly. Throws ContractError for s in {0, +-1}.
ExceptionalPrefixReport check_exceptional_prefix(const Integer& s, const Integer& b_range,
                                                 const BoundOptions& opts = {});

/// First n in [2, n_max] with phi^n(0) a perfect square, or nullopt.
/// Throws ContractError for c in {0, -1}.
std::optional<std::size_t> stoll_check(const Integer& c, std::size_t n_max);

enum class PrefixShape {
  TwoLetter,    // phi_i^N o phi_j
  ThreeLetter,  // phi_i^N o phi_j o phi_i
};

std::string to_string(PrefixShape shape);

struct PrefixRecipe {
  std::size_t i = 0;  // 0-based generator indices
  std::size_t j = 0;
  unsigned N = 2;
  PrefixShape shape = PrefixShape::TwoLetter;
  heights::Rigor rigor = heights::Rigor::BoxSearched;
  std::vector<std::string> certificate;

  /// The concrete prefix word; every extension prefix o F is irreducible.
  dynamics::Word prefix() const;
};

struct RecipeOptions {
  BoundOptions bound;
  Integer b_range = 200;  // direct sweep for the exceptional case
};

/// Builds the irreducible prefix from the first two irreducible generators.
/// Throws ContractError with fewer than two irreducible generators and
/// TheoremViolation if no certificate closes.
PrefixRecipe construct_irreducible_prefix(const dynamics::GeneratorSet& gens, const RecipeOptions& opts = {});

/// x^2 + c is irreducible over Q iff -c is not a perfect square.
bool is_irreducible_generator(const Integer& c);

}  // namespace quadsemi::exceptional

#endif  // QUADSEMI_EXCEPTIONAL_HPP
