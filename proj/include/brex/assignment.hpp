#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brex/rng.hpp"
#include "brex/truth_value.hpp"

namespace brex {

/// Fixed-width vector of truth values. Immutable by convention once built;
/// all transformations below return fresh copies.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int width, TruthValue fill = TruthValue::False);

  /// Parses a string of '0'/'1'/'u' characters (also accepts 'F'/'T'/'U').
  static Assignment from_string(std::string_view text);

  int width() const { return static_cast<int>(values_.size()); }
  TruthValue at(int i) const { return values_[static_cast<std::size_t>(i)]; }
  void set(int i, TruthValue v) { values_[static_cast<std::size_t>(i)] = v; }

  bool fully_boolean() const;
  bool boolean_on(std::span<const int> positions) const;

  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<TruthValue> values_;
};

/// Copy of `a` with the values at `indices` negated. Throws if any index is
/// out of range or holds Unassigned (no Boolean value to negate).
Assignment flip(const Assignment& a, std::span<const int> indices);

/// Copy of `a` where every position not in `keep` becomes Unassigned.
Assignment mask(const Assignment& a, std::span<const int> keep);

/// Copy of `a` where every position in `hide` becomes Unassigned.
Assignment mask_out(const Assignment& a, std::span<const int> hide);

/// Largest position count enumerable in one space (2^20 assignments).
inline constexpr int kMaxEnumerationWidth = 20;

/// The ordered space of Boolean assignments over a chosen subset of
/// positions; the remaining positions are fixed to False. Codes enumerate
/// lexicographically with the first chosen position most significant and
/// False < True, so full(2) yields 00, 01, 10, 11.
class AssignmentSpace {
 public:
  static AssignmentSpace full(int width);
  static AssignmentSpace restricted_to(int width, std::vector<int> positions);

  std::uint64_t size() const { return std::uint64_t{1} << positions_.size(); }
  Assignment at(std::uint64_t code) const;

  int width() const { return width_; }
  const std::vector<int>& positions() const { return positions_; }

 private:
  AssignmentSpace(int width, std::vector<int> positions);

  int width_ = 0;
  std::vector<int> positions_;
};

/// Seeded uniform subsample of [0, space_size) without replacement, returned
/// in ascending order; the whole range when n >= space_size.
std::vector<std::uint64_t> sample_codes(std::uint64_t space_size, std::uint64_t n,
                                        Rng& rng);

}  // namespace brex
