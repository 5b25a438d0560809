#include "brex/baselines.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace brex {

namespace {

std::vector<int> all_positions(int width) {
  std::vector<int> out(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) out[static_cast<std::size_t>(i)] = i;
  return out;
}

void check_players(const Assignment& x, const std::vector<int>& players) {
  if (players.size() > static_cast<std::size_t>(kMaxShapleyPlayers)) {
    throw std::invalid_argument("shapley: player count exceeds guard");
  }
  for (int p : players) {
    if (p < 0 || p >= x.width()) {
      throw std::out_of_range("shapley: player index out of range");
    }
  }
}

/// s!(n-1-s)! for s in [0, n), exact in 64 bits for n <= 20.
std::vector<std::int64_t> permutation_weights(int n) {
  std::vector<std::int64_t> factorial(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i) {
    factorial[static_cast<std::size_t>(i)] =
        factorial[static_cast<std::size_t>(i - 1)] * i;
  }
  std::vector<std::int64_t> weights(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    weights[static_cast<std::size_t>(s)] =
        factorial[static_cast<std::size_t>(s)] *
        factorial[static_cast<std::size_t>(n - 1 - s)];
  }
  return weights;
}

}  // namespace

CoalitionPayoff::CoalitionPayoff(const Oracle& oracle, const Assignment& x,
                                 std::vector<int> players, PayoffKind kind)
    : oracle_(oracle), x_(x), players_(std::move(players)), kind_(kind) {
  check_players(x, players_);
  base_ = oracle_.classify(x_);
  if (!is_determinate(base_)) {
    throw std::invalid_argument("CoalitionPayoff: input has no determinate label");
  }
  const std::size_t rows = std::size_t{1} << players_.size();
  memo_.assign(rows, 0.0);
  known_.assign(rows, 0);
}

double CoalitionPayoff::value(std::uint32_t coalition) const {
  if (known_[coalition] != 0) return memo_[coalition];
  Assignment mutant = x_;
  for (std::size_t j = 0; j < players_.size(); ++j) {
    if ((coalition >> j & 1u) == 0) {
      mutant.set(players_[j], TruthValue::Unassigned);
    }
  }
  double v = 0.0;
  if (kind_ == PayoffKind::LabelPreservation) {
    v = oracle_.classify(mutant) == base_ ? 1.0 : 0.0;
  } else {
    // Average agreement over Boolean completions of the masked players.
    std::vector<int> hidden;
    for (std::size_t j = 0; j < players_.size(); ++j) {
      if ((coalition >> j & 1u) == 0) hidden.push_back(players_[j]);
    }
    const std::uint32_t completions = std::uint32_t{1} << hidden.size();
    std::uint32_t agree = 0;
    for (std::uint32_t c = 0; c < completions; ++c) {
      for (std::size_t j = 0; j < hidden.size(); ++j) {
        mutant.set(hidden[j], truth_of((c >> j & 1u) != 0));
      }
      if (oracle_.classify(mutant) == base_) ++agree;
    }
    v = static_cast<double>(agree) / static_cast<double>(completions);
  }
  memo_[coalition] = v;
  known_[coalition] = 1;
  return v;
}

AttributionMap ShapleyExactRational::values(int width) const {
  AttributionMap out(static_cast<std::size_t>(width), 0.0);
  for (std::size_t j = 0; j < players.size(); ++j) {
    out[static_cast<std::size_t>(players[j])] =
        static_cast<double>(numerators[j]) / static_cast<double>(denominator);
  }
  return out;
}

ShapleyExactRational shapley_exact_rational(const Oracle& oracle, const Assignment& x,
                                            std::vector<int> players) {
  CoalitionPayoff game(oracle, x, std::move(players), PayoffKind::LabelPreservation);
  const int n = game.player_count();
  ShapleyExactRational out;
  out.players = game.players();
  out.numerators.assign(static_cast<std::size_t>(n), 0);
  out.denominator = 1;
  for (int i = 1; i <= n; ++i) out.denominator *= i;
  if (n == 0) return out;

  const std::vector<std::int64_t> weights = permutation_weights(n);
  const std::uint32_t rows = std::uint32_t{1} << n;
  for (std::uint32_t coalition = 0; coalition < rows; ++coalition) {
    game.value(coalition);  // materialize every coalition once
  }
  for (int j = 0; j < n; ++j) {
    const std::uint32_t self = std::uint32_t{1} << j;
    std::int64_t acc = 0;
    for (std::uint32_t s = 0; s < rows; ++s) {
      if ((s & self) != 0) continue;
      const int with = game.value(s | self) > 0.5 ? 1 : 0;
      const int without = game.value(s) > 0.5 ? 1 : 0;
      acc += weights[static_cast<std::size_t>(std::popcount(s))] * (with - without);
    }
    out.numerators[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

AttributionMap shapley_exact(const Oracle& oracle, const Assignment& x,
                             std::vector<int> players, PayoffKind kind) {
  if (kind == PayoffKind::LabelPreservation) {
    return shapley_exact_rational(oracle, x, std::move(players)).values(x.width());
  }
  CoalitionPayoff game(oracle, x, std::move(players), kind);
  const int n = game.player_count();
  AttributionMap out(static_cast<std::size_t>(x.width()), 0.0);
  if (n == 0) return out;
  const std::vector<std::int64_t> weights = permutation_weights(n);
  double denominator = 1.0;
  for (int i = 1; i <= n; ++i) denominator *= i;
  const std::uint32_t rows = std::uint32_t{1} << n;
  for (int j = 0; j < n; ++j) {
    const std::uint32_t self = std::uint32_t{1} << j;
    double acc = 0.0;
    for (std::uint32_t s = 0; s < rows; ++s) {
      if ((s & self) != 0) continue;
      acc += static_cast<double>(weights[static_cast<std::size_t>(std::popcount(s))]) *
             (game.value(s | self) - game.value(s));
    }
    out[static_cast<std::size_t>(game.players()[static_cast<std::size_t>(j)])] =
        acc / denominator;
  }
  return out;
}

AttributionMap shapley_exact(const Oracle& oracle, const Assignment& x) {
  return shapley_exact(oracle, x, all_positions(x.width()));
}

AttributionMap shapley_sampled(const Oracle& oracle, const Assignment& x,
                               int num_permutations, Rng& rng,
                               std::vector<int> players, PayoffKind kind) {
  if (num_permutations < 1) {
    throw std::invalid_argument("shapley_sampled: need at least one permutation");
  }
  CoalitionPayoff game(oracle, x, std::move(players), kind);
  const int n = game.player_count();
  AttributionMap out(static_cast<std::size_t>(x.width()), 0.0);
  if (n == 0) return out;

  std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) perm[static_cast<std::size_t>(j)] = j;
  for (int p = 0; p < num_permutations; ++p) {
    shuffle_in_place(perm, rng);
    std::uint32_t coalition = 0;
    double prev = game.value(coalition);
    for (int j : perm) {
      coalition |= std::uint32_t{1} << j;
      const double cur = game.value(coalition);
      acc[static_cast<std::size_t>(j)] += cur - prev;
      prev = cur;
    }
  }
  for (int j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(game.players()[static_cast<std::size_t>(j)])] =
        acc[static_cast<std::size_t>(j)] / static_cast<double>(num_permutations);
  }
  return out;
}

AttributionMap shapley_sampled(const Oracle& oracle, const Assignment& x,
                               int num_permutations, Rng& rng) {
  return shapley_sampled(oracle, x, num_permutations, rng, all_positions(x.width()));
}

AttributionMap random_attribution(int width, Rng& rng) {
  AttributionMap out(static_cast<std::size_t>(width));
  for (double& v : out) v = uniform_unit(rng);
  return out;
}

}  // namespace brex
