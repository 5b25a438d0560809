#pragma once

#include <cstdint>
#include <stdexcept>

namespace brex {

/// Three-valued truth domain: classical True/False plus Unassigned.
enum class TruthValue : std::uint8_t { False = 0, True = 1, Unassigned = 2 };

constexpr bool is_boolean(TruthValue v) { return v != TruthValue::Unassigned; }

constexpr TruthValue truth_of(bool b) {
  return b ? TruthValue::True : TruthValue::False;
}

// Strong Kleene connectives. A determined operand forces the result where it
// can (False dominates AND, True dominates OR); otherwise Unassigned
// propagates. XOR is undetermined as soon as either side is.
constexpr TruthValue k3_not(TruthValue a) {
  if (a == TruthValue::Unassigned) return TruthValue::Unassigned;
  return a == TruthValue::True ? TruthValue::False : TruthValue::True;
}

constexpr TruthValue k3_and(TruthValue a, TruthValue b) {
  if (a == TruthValue::False || b == TruthValue::False) return TruthValue::False;
  if (a == TruthValue::True && b == TruthValue::True) return TruthValue::True;
  return TruthValue::Unassigned;
}

constexpr TruthValue k3_or(TruthValue a, TruthValue b) {
  if (a == TruthValue::True || b == TruthValue::True) return TruthValue::True;
  if (a == TruthValue::False && b == TruthValue::False) return TruthValue::False;
  return TruthValue::Unassigned;
}

constexpr TruthValue k3_xor(TruthValue a, TruthValue b) {
  if (!is_boolean(a) || !is_boolean(b)) return TruthValue::Unassigned;
  return truth_of(a != b);
}

constexpr char truth_char(TruthValue v) {
  switch (v) {
    case TruthValue::False: return '0';
    case TruthValue::True: return '1';
    default: return 'u';
  }
}

inline TruthValue truth_from_char(char c) {
  switch (c) {
    case '0':
    case 'F':
      return TruthValue::False;
    case '1':
    case 'T':
      return TruthValue::True;
    case 'u':
    case 'U':
      return TruthValue::Unassigned;
    default:
      throw std::invalid_argument("invalid truth value character");
  }
}

}  // namespace brex
