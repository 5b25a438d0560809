#include "brex/responsibility.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace brex {

namespace {

TruthValue apply_op(OpKind op, TruthValue l, TruthValue r) {
  switch (op) {
    case OpKind::And: return k3_and(l, r);
    case OpKind::Or: return k3_or(l, r);
    case OpKind::Xor: return k3_xor(l, r);
    default: throw std::invalid_argument("apply_op: not a binary operator");
  }
}

}  // namespace

CauseKind classify_cause(OpKind op, TruthValue left_value, TruthValue right_value,
                         TruthValue gate_value) {
  if (op == OpKind::Not) return CauseKind::Pass;
  if (op == OpKind::Var) {
    throw std::invalid_argument("classify_cause: leaves have no cause kind");
  }
  if (!is_boolean(left_value) || !is_boolean(right_value)) {
    throw std::invalid_argument("classify_cause: child values must be Boolean");
  }
  assert(apply_op(op, left_value, right_value) == gate_value);
  const bool left_flips =
      apply_op(op, k3_not(left_value), right_value) != gate_value;
  const bool right_flips =
      apply_op(op, left_value, k3_not(right_value)) != gate_value;
  if (left_flips && right_flips) return CauseKind::Either;
  if (left_flips) return CauseKind::Left;
  if (right_flips) return CauseKind::Right;
  assert(apply_op(op, k3_not(left_value), k3_not(right_value)) != gate_value);
  return CauseKind::Both;
}

namespace {

struct LabeledFormula {
  std::vector<TruthValue> values;  // per node
  std::vector<CauseKind> kinds;    // per node, meaningful for gates only
};

void require_read_once_boolean(const Formula& f, const Assignment& a) {
  if (!f.meta().read_once) {
    throw std::invalid_argument("read-once formula required; use the brute-force path");
  }
  if (f.max_var_index() >= a.width()) {
    throw std::invalid_argument("assignment narrower than formula");
  }
  if (!a.boolean_on(f.meta().used_vars)) {
    throw std::invalid_argument("used variables must hold Boolean values");
  }
}

LabeledFormula label_gates(const Formula& f, const Assignment& a) {
  LabeledFormula out;
  out.values.resize(static_cast<std::size_t>(f.node_count()));
  out.kinds.resize(static_cast<std::size_t>(f.node_count()), CauseKind::Pass);
  for (std::int32_t i = 0; i < f.node_count(); ++i) {
    const FormulaNode& n = f.node(i);
    switch (n.kind) {
      case OpKind::Var:
        out.values[i] = a.at(n.var);
        break;
      case OpKind::Not:
        out.values[i] = k3_not(out.values[n.left]);
        break;
      default:
        out.values[i] = apply_op(n.kind, out.values[n.left], out.values[n.right]);
        out.kinds[i] =
            classify_cause(n.kind, out.values[n.left], out.values[n.right],
                           out.values[i]);
        break;
    }
  }
  return out;
}

DepsMap deps_from_labels(const Formula& f, const LabeledFormula& labels,
                         TraversalStats* stats) {
  DepsMap deps(static_cast<std::size_t>(f.node_count()), 0);
  for (std::int32_t i = 0; i < f.node_count(); ++i) {
    if (stats != nullptr) ++stats->deps_visits;
    const FormulaNode& n = f.node(i);
    switch (n.kind) {
      case OpKind::Var:
        deps[i] = 1;
        break;
      case OpKind::Not:
        deps[i] = deps[n.left];
        break;
      default:
        switch (labels.kinds[i]) {
          case CauseKind::Both: deps[i] = deps[n.left] + deps[n.right]; break;
          case CauseKind::Either:
            deps[i] = std::min(deps[n.left], deps[n.right]);
            break;
          case CauseKind::Left: deps[i] = deps[n.left]; break;
          case CauseKind::Right: deps[i] = deps[n.right]; break;
          case CauseKind::Pass: deps[i] = deps[n.left]; break;
        }
        break;
    }
  }
  return deps;
}

void distribute(const Formula& f, const LabeledFormula& labels, const DepsMap& deps,
                std::int32_t id, int ctx, ResponsibilityMap& rho,
                TraversalStats* stats) {
  if (stats != nullptr) ++stats->responsibility_visits;
  const FormulaNode& n = f.node(id);
  switch (n.kind) {
    case OpKind::Var:
      rho.set(n.var, Rational::responsibility_for_witness(ctx));
      break;
    case OpKind::Not:
      distribute(f, labels, deps, n.left, ctx, rho, stats);
      break;
    default:
      switch (labels.kinds[id]) {
        case CauseKind::Left:
        case CauseKind::Pass:
          distribute(f, labels, deps, n.left, ctx, rho, stats);
          break;
        case CauseKind::Right:
          distribute(f, labels, deps, n.right, ctx, rho, stats);
          break;
        case CauseKind::Either:
          distribute(f, labels, deps, n.left, ctx, rho, stats);
          distribute(f, labels, deps, n.right, ctx, rho, stats);
          break;
        case CauseKind::Both:
          distribute(f, labels, deps, n.left, ctx + deps[n.right], rho, stats);
          distribute(f, labels, deps, n.right, ctx + deps[n.left], rho, stats);
          break;
      }
      break;
  }
}

}  // namespace

DepsMap depends(const Formula& f, const Assignment& a, TraversalStats* stats) {
  require_read_once_boolean(f, a);
  return deps_from_labels(f, label_gates(f, a), stats);
}

std::vector<double> ResponsibilityMap::to_doubles() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].value();
  return out;
}

std::vector<int> ResponsibilityMap::support() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!values_[i].is_zero()) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool ResponsibilityMap::all_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Rational& r) { return r.is_zero(); });
}

ResponsibilityMap responsibility_read_once(const Formula& f, const Assignment& a,
                                           TraversalStats* stats) {
  require_read_once_boolean(f, a);
  const LabeledFormula labels = label_gates(f, a);
  const DepsMap deps = deps_from_labels(f, labels, stats);
  ResponsibilityMap rho(a.width());
  distribute(f, labels, deps, f.root(), 0, rho, stats);
  return rho;
}

TruthTable::TruthTable(const Formula& f, int max_arity)
    : used_(f.meta().used_vars) {
  if (f.meta().arity > max_arity) {
    throw std::invalid_argument("TruthTable: formula arity exceeds guard");
  }
  const int m = arity();
  // bit position per input variable; forward scan evaluates all codes.
  std::vector<int> bit_of(static_cast<std::size_t>(f.max_var_index()) + 1, -1);
  for (int j = 0; j < m; ++j) bit_of[static_cast<std::size_t>(used_[j])] = j;

  const std::uint32_t rows = std::uint32_t{1} << m;
  table_.resize(rows);
  std::vector<std::uint8_t> vals(static_cast<std::size_t>(f.node_count()));
  for (std::uint32_t code = 0; code < rows; ++code) {
    for (std::int32_t i = 0; i < f.node_count(); ++i) {
      const FormulaNode& n = f.node(i);
      switch (n.kind) {
        case OpKind::Var:
          vals[i] = static_cast<std::uint8_t>((code >> bit_of[n.var]) & 1u);
          break;
        case OpKind::Not: vals[i] = vals[n.left] ^ 1u; break;
        case OpKind::And: vals[i] = vals[n.left] & vals[n.right]; break;
        case OpKind::Or: vals[i] = vals[n.left] | vals[n.right]; break;
        case OpKind::Xor: vals[i] = vals[n.left] ^ vals[n.right]; break;
      }
    }
    table_[code] = vals[static_cast<std::size_t>(f.root())];
  }
}

std::uint32_t TruthTable::code_of(const Assignment& a) const {
  std::uint32_t code = 0;
  for (int j = 0; j < arity(); ++j) {
    const TruthValue v = a.at(used_[static_cast<std::size_t>(j)]);
    if (!is_boolean(v)) {
      throw std::invalid_argument("code_of: used variable is Unassigned");
    }
    if (v == TruthValue::True) code |= std::uint32_t{1} << j;
  }
  return code;
}

std::optional<int> min_flips_brute(const TruthTable& table, const Assignment& a) {
  const std::uint32_t base = table.code_of(a);
  const bool base_out = table.output(base);
  const std::uint32_t rows = std::uint32_t{1} << table.arity();
  int best = table.arity() + 1;
  for (std::uint32_t s = 1; s < rows; ++s) {
    if (table.output(base ^ s) != base_out) {
      best = std::min(best, std::popcount(s));
    }
  }
  if (best > table.arity()) return std::nullopt;
  return best;
}

std::optional<int> min_flips_brute(const Formula& f, const Assignment& a,
                                   const BruteForceOptions& options) {
  return min_flips_brute(TruthTable(f, options.max_arity), a);
}

ResponsibilityMap responsibility_brute_force(const TruthTable& table,
                                             const Assignment& a,
                                             const BruteForceOptions& options) {
  const int m = table.arity();
  ResponsibilityMap rho(a.width());
  if (m == 0) return rho;

  const std::uint32_t base = table.code_of(a);
  const bool base_out = table.output(base);
  const std::uint32_t rows = std::uint32_t{1} << m;

  // preserved[S]: flipping exactly the variables in S keeps the output.
  std::vector<std::uint8_t> preserved(rows);
  for (std::uint32_t s = 0; s < rows; ++s) {
    preserved[s] = table.output(base ^ s) == base_out ? 1 : 0;
  }

  // qualifies[W]: every subset of W preserves the output (subset-closed AND).
  std::vector<std::uint8_t> qualifies = preserved;
  if (options.subset_condition) {
    for (std::uint32_t w = 1; w < rows; ++w) {
      if (qualifies[w] == 0) continue;
      for (int b = 0; b < m; ++b) {
        const std::uint32_t bit = std::uint32_t{1} << b;
        if ((w & bit) != 0 && qualifies[w ^ bit] == 0) {
          qualifies[w] = 0;
          break;
        }
      }
    }
  }

  for (int j = 0; j < m; ++j) {
    const std::uint32_t self = std::uint32_t{1} << j;
    int best = m;  // witnesses exclude the variable itself, so |W| < m
    bool found = false;
    for (std::uint32_t w = 0; w < rows; ++w) {
      if ((w & self) != 0) continue;
      if (qualifies[w] != 0 && preserved[w | self] == 0) {
        const int size = std::popcount(w);
        if (!found || size < best) {
          best = size;
          found = true;
        }
      }
    }
    if (found) {
      rho.set(table.used_vars()[static_cast<std::size_t>(j)],
              Rational::responsibility_for_witness(best));
    }
  }
  return rho;
}

ResponsibilityMap responsibility_brute_force(const Formula& f, const Assignment& a,
                                             const BruteForceOptions& options) {
  if (f.max_var_index() >= a.width()) {
    throw std::invalid_argument("assignment narrower than formula");
  }
  return responsibility_brute_force(TruthTable(f, options.max_arity), a, options);
}

}  // namespace brex
