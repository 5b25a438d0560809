#pragma once

#include "brex/formula.hpp"
#include "brex/rng.hpp"

namespace brex {

/// Monotonic formulae draw gates from {AND, OR}; nonmonotonic ones also use
/// XOR gates and may negate subtrees.
enum class OperatorFamily { Monotonic, Nonmonotonic };

const char* family_token(OperatorFamily family);
OperatorFamily family_from_token(std::string_view token);

struct RandomFormulaParams {
  double negate_prob = 0.25;     // per-subtree negation chance (nonmonotonic only)
  double duplicate_prob = 0.3;   // per-variable extra occurrence chance (general mode)
};

/// Random formula over variables x1..x_arity, each used at least once
/// (exactly once when read_once). The variable multiset is split recursively
/// into two non-empty parts at a uniform point after shuffling; each split is
/// joined by a gate drawn uniformly from the family's operator set.
/// Deterministic for a fixed generator state.
Formula random_formula(int arity, OperatorFamily family, bool read_once, Rng& rng,
                       const RandomFormulaParams& params = {});

}  // namespace brex
