#include "brex/random_formula.hpp"

#include <stdexcept>
#include <string>

namespace brex {

const char* family_token(OperatorFamily family) {
  return family == OperatorFamily::Monotonic ? "monotonic" : "nonmonotonic";
}

OperatorFamily family_from_token(std::string_view token) {
  if (token == "monotonic" || token == "mono") return OperatorFamily::Monotonic;
  if (token == "nonmonotonic" || token == "nonmono") {
    return OperatorFamily::Nonmonotonic;
  }
  throw std::invalid_argument("unknown operator family: " + std::string(token));
}

namespace {

OpKind draw_gate(OperatorFamily family, Rng& rng) {
  if (family == OperatorFamily::Monotonic) {
    return uniform_below(rng, 2) == 0 ? OpKind::And : OpKind::Or;
  }
  switch (uniform_below(rng, 3)) {
    case 0: return OpKind::And;
    case 1: return OpKind::Or;
    default: return OpKind::Xor;
  }
}

Formula build(std::vector<int> vars, OperatorFamily family, Rng& rng,
              const RandomFormulaParams& params) {
  Formula out = [&] {
    if (vars.size() == 1) return var(vars.front());
    shuffle_in_place(vars, rng);
    const std::size_t cut =
        1 + static_cast<std::size_t>(uniform_below(rng, vars.size() - 1));
    std::vector<int> left(vars.begin(), vars.begin() + static_cast<long>(cut));
    std::vector<int> right(vars.begin() + static_cast<long>(cut), vars.end());
    const OpKind gate = draw_gate(family, rng);
    Formula lhs = build(std::move(left), family, rng, params);
    Formula rhs = build(std::move(right), family, rng, params);
    return binary(gate, std::move(lhs), std::move(rhs));
  }();
  if (family == OperatorFamily::Nonmonotonic &&
      uniform_unit(rng) < params.negate_prob) {
    out = not_(std::move(out));
  }
  return out;
}

}  // namespace

Formula random_formula(int arity, OperatorFamily family, bool read_once, Rng& rng,
                       const RandomFormulaParams& params) {
  if (arity < 1) throw std::invalid_argument("random_formula: arity must be >= 1");
  std::vector<int> vars;
  vars.reserve(static_cast<std::size_t>(arity) * 2);
  for (int i = 0; i < arity; ++i) vars.push_back(i);
  if (!read_once) {
    for (int i = 0; i < arity; ++i) {
      if (uniform_unit(rng) < params.duplicate_prob) vars.push_back(i);
    }
  }
  return build(std::move(vars), family, rng, params);
}

}  // namespace brex
