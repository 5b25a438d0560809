#pragma once

#include <atomic>
#include <cstdint>
#include <string_view>

#include "brex/assignment.hpp"
#include "brex/formula.hpp"

namespace brex {

/// Classification outcome as seen by black-box explainers. Undetermined
/// arises only on masked inputs.
enum class Label : std::uint8_t { False = 0, True = 1, Undetermined = 2 };

constexpr Label label_of(TruthValue v) {
  switch (v) {
    case TruthValue::False: return Label::False;
    case TruthValue::True: return Label::True;
    default: return Label::Undetermined;
  }
}

constexpr bool is_determinate(Label l) { return l != Label::Undetermined; }

std::string_view label_name(Label l);

/// Deterministic classifier interface. Every classify() increments a call
/// counter used for budget accounting; the counter is atomic so concurrent
/// probing is safe when the underlying classifier is pure.
class Oracle {
 public:
  virtual ~Oracle() = default;

  Label classify(const Assignment& a) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return do_classify(a);
  }

  std::int64_t calls() const { return calls_.load(std::memory_order_relaxed); }
  void reset_calls() const { calls_.store(0, std::memory_order_relaxed); }

 private:
  virtual Label do_classify(const Assignment& a) const = 0;

  mutable std::atomic<std::int64_t> calls_{0};
};

/// Default oracle: strong Kleene evaluation of a fixed formula.
class FormulaOracle : public Oracle {
 public:
  explicit FormulaOracle(Formula f) : formula_(std::move(f)) {}
  const Formula& formula() const { return formula_; }

 private:
  Label do_classify(const Assignment& a) const override {
    return label_of(evaluate_k3(formula_, a));
  }

  Formula formula_;
};

}  // namespace brex
