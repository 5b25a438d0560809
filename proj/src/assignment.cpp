#include "brex/assignment.hpp"

#include <algorithm>
#include <stdexcept>

namespace brex {

Assignment::Assignment(int width, TruthValue fill)
    : values_(static_cast<std::size_t>(width), fill) {
  if (width < 0) throw std::invalid_argument("Assignment: negative width");
}

Assignment Assignment::from_string(std::string_view text) {
  Assignment a(static_cast<int>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    a.values_[i] = truth_from_char(text[i]);
  }
  return a;
}

bool Assignment::fully_boolean() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](TruthValue v) { return is_boolean(v); });
}

bool Assignment::boolean_on(std::span<const int> positions) const {
  return std::all_of(positions.begin(), positions.end(),
                     [&](int i) { return is_boolean(at(i)); });
}

std::string Assignment::to_string() const {
  std::string out;
  out.reserve(values_.size());
  for (TruthValue v : values_) out.push_back(truth_char(v));
  return out;
}

namespace {

void check_index(const Assignment& a, int i) {
  if (i < 0 || i >= a.width()) {
    throw std::out_of_range("assignment index out of range");
  }
}

}  // namespace

Assignment flip(const Assignment& a, std::span<const int> indices) {
  Assignment out = a;
  for (int i : indices) {
    check_index(a, i);
    if (!is_boolean(out.at(i))) {
      throw std::invalid_argument("flip: position holds no Boolean value");
    }
    out.set(i, k3_not(out.at(i)));
  }
  return out;
}

Assignment mask(const Assignment& a, std::span<const int> keep) {
  std::vector<bool> kept(static_cast<std::size_t>(a.width()), false);
  for (int i : keep) {
    check_index(a, i);
    kept[static_cast<std::size_t>(i)] = true;
  }
  Assignment out = a;
  for (int i = 0; i < a.width(); ++i) {
    if (!kept[static_cast<std::size_t>(i)]) out.set(i, TruthValue::Unassigned);
  }
  return out;
}

Assignment mask_out(const Assignment& a, std::span<const int> hide) {
  Assignment out = a;
  for (int i : hide) {
    check_index(a, i);
    out.set(i, TruthValue::Unassigned);
  }
  return out;
}

AssignmentSpace::AssignmentSpace(int width, std::vector<int> positions)
    : width_(width), positions_(std::move(positions)) {
  if (width < 0) throw std::invalid_argument("AssignmentSpace: negative width");
  if (positions_.size() > static_cast<std::size_t>(kMaxEnumerationWidth)) {
    throw std::invalid_argument("AssignmentSpace: enumeration width over guard");
  }
  for (int p : positions_) {
    if (p < 0 || p >= width) {
      throw std::out_of_range("AssignmentSpace: position out of range");
    }
  }
  std::sort(positions_.begin(), positions_.end());
  positions_.erase(std::unique(positions_.begin(), positions_.end()),
                   positions_.end());
}

AssignmentSpace AssignmentSpace::full(int width) {
  std::vector<int> all(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) all[static_cast<std::size_t>(i)] = i;
  return AssignmentSpace(width, std::move(all));
}

AssignmentSpace AssignmentSpace::restricted_to(int width, std::vector<int> positions) {
  return AssignmentSpace(width, std::move(positions));
}

Assignment AssignmentSpace::at(std::uint64_t code) const {
  Assignment a(width_, TruthValue::False);
  const int m = static_cast<int>(positions_.size());
  for (int j = 0; j < m; ++j) {
    const bool bit = (code >> (m - 1 - j)) & 1u;
    a.set(positions_[static_cast<std::size_t>(j)], truth_of(bit));
  }
  return a;
}

std::vector<std::uint64_t> sample_codes(std::uint64_t space_size, std::uint64_t n,
                                        Rng& rng) {
  std::vector<std::uint64_t> out;
  if (n >= space_size) {
    out.resize(space_size);
    for (std::uint64_t i = 0; i < space_size; ++i) out[i] = i;
    return out;
  }
  // Floyd's sampling: n distinct draws, O(n) memory.
  std::vector<std::uint64_t> chosen;
  chosen.reserve(n);
  for (std::uint64_t j = space_size - n; j < space_size; ++j) {
    const std::uint64_t t = uniform_below(rng, j + 1);
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(j);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace brex
