#pragma once

#include <vector>

#include "brex/responsibility.hpp"

namespace brex {

/// Non-negative values summing to 1; the common ground attribution maps and
/// responsibility maps are projected onto before divergence comparison.
class Distribution {
 public:
  const std::vector<double>& probabilities() const { return p_; }
  int size() const { return static_cast<int>(p_.size()); }

  friend Distribution normalize(const std::vector<double>& a);

 private:
  explicit Distribution(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

/// Absolute values scaled to unit L1 norm; the uniform distribution when the
/// norm is zero. Throws on non-finite entries or empty input.
Distribution normalize(const std::vector<double>& a);

/// Jensen-Shannon divergence, base-2 logarithm, so the range is [0, 1].
/// Exactly symmetric in its arguments and exactly 0 on identical inputs.
double jsd(const Distribution& p, const Distribution& q);

/// True iff the |gt.support()| highest-|a| indices are exactly the support of
/// the ground truth, requiring every supported index to score strictly above
/// every unsupported one (boundary ties fail). Throws when the ground truth
/// is all-zero or widths differ.
bool topk_perfect_overlap(const std::vector<double>& a, const ResponsibilityMap& gt);

struct AggregateStat {
  double mean = 0.0;
  double std_dev = 0.0;           // sample standard deviation (n-1)
  double ci95_half_width = 0.0;   // 1.96 * std_dev / sqrt(n)
  int n = 0;
};

/// Throws on an empty sample.
AggregateStat aggregate(const std::vector<double>& xs);

}  // namespace brex
