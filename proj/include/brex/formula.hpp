#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "brex/assignment.hpp"
#include "brex/truth_value.hpp"

namespace brex {

enum class OpKind : std::uint8_t { Var, Not, And, Or, Xor };

struct FormulaNode {
  OpKind kind = OpKind::Var;
  std::int32_t left = -1;   // only child for Not, left operand for binaries
  std::int32_t right = -1;  // right operand for binaries
  std::int32_t var = -1;    // variable index for Var leaves
};

struct FormulaMeta {
  int arity = 0;               // number of distinct variables used
  std::vector<int> used_vars;  // sorted, unique
  bool read_once = true;       // every used variable occurs exactly once
};

/// Parse tree of a Boolean expression over indexed variables. Nodes are
/// stored in topological order: children always precede their parent and the
/// root is the last node, so evaluation is a single forward scan.
/// Immutable after construction and safe for concurrent use.
class Formula {
 public:
  int node_count() const { return static_cast<int>(nodes_.size()); }
  std::int32_t root() const { return static_cast<std::int32_t>(nodes_.size()) - 1; }
  const FormulaNode& node(std::int32_t id) const {
    return nodes_[static_cast<std::size_t>(id)];
  }
  const FormulaMeta& meta() const { return meta_; }
  int max_var_index() const { return max_var_; }

  /// Structural equality of the trees (arena layout is irrelevant).
  friend bool operator==(const Formula& a, const Formula& b);

  friend Formula var(int index);
  friend Formula not_(Formula f);
  friend Formula binary(OpKind op, Formula lhs, Formula rhs);

 private:
  Formula() = default;
  void finalize_meta();

  std::vector<FormulaNode> nodes_;
  FormulaMeta meta_;
  int max_var_ = -1;
};

Formula var(int index);
Formula not_(Formula f);
Formula binary(OpKind op, Formula lhs, Formula rhs);
inline Formula and_(Formula lhs, Formula rhs) {
  return binary(OpKind::And, std::move(lhs), std::move(rhs));
}
inline Formula or_(Formula lhs, Formula rhs) {
  return binary(OpKind::Or, std::move(lhs), std::move(rhs));
}
inline Formula xor_(Formula lhs, Formula rhs) {
  return binary(OpKind::Xor, std::move(lhs), std::move(rhs));
}

/// Strong Kleene evaluation; classical evaluation on fully Boolean inputs.
TruthValue evaluate_k3(const Formula& f, const Assignment& a);

struct ParseError : std::runtime_error {
  ParseError(const std::string& message, int position);
  int position;
};

/// Grammar (whitespace insignificant, precedence ! > & > ^ > |):
///   expr  := or
///   or    := xor ('|' xor)*
///   xor   := and ('^' and)*
///   and   := unary ('&' unary)*
///   unary := '!' unary | '(' expr ')' | var
///   var   := 'x' digits            (1-indexed in text, 0-indexed internally)
Formula parse_formula(std::string_view text);

/// As above, additionally rejecting variables at or beyond `declared_width`.
Formula parse_formula(std::string_view text, int declared_width);

/// Canonical text form; parse_formula(render(f)) reproduces f exactly.
std::string render(const Formula& f);

}  // namespace brex
