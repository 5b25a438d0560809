#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "brex/assignment.hpp"
#include "brex/formula.hpp"
#include "brex/rational.hpp"

namespace brex {

/// Which child flips can change a gate's value under the current assignment.
/// Single-flip cases take precedence: Either/Left/Right describe gates whose
/// value changes when one designated child flips alone; Both is reserved for
/// gates that only change when both children flip together (e.g. False AND
/// False, True OR True). Pass is the unary negation gate.
enum class CauseKind : std::uint8_t { Both, Either, Left, Right, Pass };

/// Classifies a gate from its operator and the Boolean values of its
/// children. `gate_value` must equal the operator applied to the children.
/// Total for And/Or/Xor on Boolean inputs; Not always classifies as Pass.
CauseKind classify_cause(OpKind op, TruthValue left_value, TruthValue right_value,
                         TruthValue gate_value);

/// Per-node dependency counts, indexed by formula node id.
using DepsMap = std::vector<int>;

/// Optional instrumentation for the linear-time passes.
struct TraversalStats {
  int deps_visits = 0;
  int responsibility_visits = 0;
};

/// Bottom-up pass: deps(node) is the minimum number of leaf flips that change
/// the node's value. Leaves count 1; gates combine their children according
/// to the cause classification (Both adds, Either takes the minimum,
/// Left/Right/Pass forward the designated child). At the root this equals the
/// minimum Hamming distance, over the formula's variables, to an assignment
/// with the opposite output.
/// Requires a read-once formula and Boolean values on all used variables.
DepsMap depends(const Formula& f, const Assignment& a,
                TraversalStats* stats = nullptr);

/// Per-variable responsibility values, exact rationals over the input width.
/// Every entry is 0 or 1/(k+1) for some integer witness size k >= 0.
class ResponsibilityMap {
 public:
  ResponsibilityMap() = default;
  explicit ResponsibilityMap(int width)
      : values_(static_cast<std::size_t>(width)) {}

  int width() const { return static_cast<int>(values_.size()); }
  const Rational& at(int i) const { return values_[static_cast<std::size_t>(i)]; }
  void set(int i, Rational v) { values_[static_cast<std::size_t>(i)] = v; }

  std::vector<double> to_doubles() const;
  /// Indices with strictly positive responsibility.
  std::vector<int> support() const;
  bool all_zero() const;

  friend bool operator==(const ResponsibilityMap&, const ResponsibilityMap&) = default;

 private:
  std::vector<Rational> values_;
};

/// Top-down pass over the dependency labels: an accumulator carries the size
/// of the witness set collected so far; a leaf reached with accumulator k
/// receives responsibility 1/(1+k). Gates that depend on one child forward
/// the accumulator to it; Either forwards it to both children; Both sends
/// each child the accumulator plus the sibling's dependency count. Variables
/// in unvisited subtrees keep responsibility 0.
/// Same preconditions as depends().
ResponsibilityMap responsibility_read_once(const Formula& f, const Assignment& a,
                                           TraversalStats* stats = nullptr);

struct BruteForceOptions {
  int max_arity = 15;            // exhaustive-search guard, raise explicitly to override
  bool subset_condition = true;  // require every subset of a witness to preserve
                                 // the output, not just the witness itself
};

/// Full classical truth table of a formula over its used variables.
/// Assignment codes use bit j for used_vars()[j].
class TruthTable {
 public:
  TruthTable(const Formula& f, int max_arity = 15);

  int arity() const { return static_cast<int>(used_.size()); }
  const std::vector<int>& used_vars() const { return used_; }

  /// Code of a concrete assignment; throws if a used variable is Unassigned.
  std::uint32_t code_of(const Assignment& a) const;
  bool output(std::uint32_t code) const {
    return table_[static_cast<std::size_t>(code)] != 0;
  }

 private:
  std::vector<int> used_;
  std::vector<std::uint8_t> table_;
};

/// Smallest non-empty set of used-variable flips that changes the classical
/// output; nullopt when the formula is extensionally constant on its used
/// variables (possible only with repeated variables).
std::optional<int> min_flips_brute(const Formula& f, const Assignment& a,
                                   const BruteForceOptions& options = {});
std::optional<int> min_flips_brute(const TruthTable& table, const Assignment& a);

/// Exhaustive responsibility over the precomputed truth table: for each used
/// variable, the smallest witness W of other used variables such that every
/// subset of W preserves the output while flipping W plus the variable
/// changes it. Responsibility is 1/(1+|W|), or 0 when no witness exists.
/// Unused variables always receive 0. Works on any formula within the guard.
ResponsibilityMap responsibility_brute_force(const Formula& f, const Assignment& a,
                                             const BruteForceOptions& options = {});
ResponsibilityMap responsibility_brute_force(const TruthTable& table,
                                             const Assignment& a,
                                             const BruteForceOptions& options = {});

}  // namespace brex
