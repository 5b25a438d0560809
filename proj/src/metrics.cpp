#include "brex/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace brex {

Distribution normalize(const std::vector<double>& a) {
  if (a.empty()) throw std::invalid_argument("normalize: empty attribution map");
  std::vector<double> p(a.size());
  double l1 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i])) {
      throw std::invalid_argument("normalize: non-finite attribution value");
    }
    p[i] = std::abs(a[i]);
    l1 += p[i];
  }
  if (l1 <= 0.0) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
  } else {
    for (double& v : p) v /= l1;
  }
  return Distribution(std::move(p));
}

namespace {

// v * log2(v / m) with the 0 log 0 convention.
double kl_term(double v, double m) { return v > 0.0 ? v * std::log2(v / m) : 0.0; }

}  // namespace

double jsd(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) throw std::invalid_argument("jsd: length mismatch");
  double total = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    const double a = p.probabilities()[static_cast<std::size_t>(i)];
    const double b = q.probabilities()[static_cast<std::size_t>(i)];
    const double m = (a + b) / 2.0;
    // accumulate in value order so jsd(p, q) and jsd(q, p) are bit-identical
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    total += kl_term(lo, m) + kl_term(hi, m);
  }
  return std::clamp(total / 2.0, 0.0, 1.0);
}

bool topk_perfect_overlap(const std::vector<double>& a, const ResponsibilityMap& gt) {
  if (static_cast<int>(a.size()) != gt.width()) {
    throw std::invalid_argument("topk_perfect_overlap: width mismatch");
  }
  double min_relevant = 0.0;
  double max_irrelevant = 0.0;
  bool any_relevant = false;
  bool any_irrelevant = false;
  for (int i = 0; i < gt.width(); ++i) {
    const double score = std::abs(a[static_cast<std::size_t>(i)]);
    if (!gt.at(i).is_zero()) {
      min_relevant = any_relevant ? std::min(min_relevant, score) : score;
      any_relevant = true;
    } else {
      max_irrelevant = any_irrelevant ? std::max(max_irrelevant, score) : score;
      any_irrelevant = true;
    }
  }
  if (!any_relevant) {
    throw std::invalid_argument("topk_perfect_overlap: all-zero ground truth");
  }
  if (!any_irrelevant) return true;
  return min_relevant > max_irrelevant;
}

AggregateStat aggregate(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("aggregate: empty sample");
  AggregateStat stat;
  stat.n = static_cast<int>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  stat.mean = sum / static_cast<double>(stat.n);
  if (stat.n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - stat.mean) * (x - stat.mean);
    stat.std_dev = std::sqrt(ss / static_cast<double>(stat.n - 1));
  }
  stat.ci95_half_width = 1.96 * stat.std_dev / std::sqrt(static_cast<double>(stat.n));
  return stat;
}

}  // namespace brex
