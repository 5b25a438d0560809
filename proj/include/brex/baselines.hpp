#pragma once

#include <cstdint>
#include <vector>

#include "brex/assignment.hpp"
#include "brex/oracle.hpp"
#include "brex/rng.hpp"

namespace brex {

/// Per-index importance scores; any real values, length = input width.
using AttributionMap = std::vector<double>;

/// How a coalition's worth is scored. LabelPreservation is the 0/1 indicator
/// that masking everything outside the coalition keeps the oracle's label;
/// CompletionAgreement scores the fraction of Boolean completions of the
/// masked players that keep it (sensitivity-analysis variant).
enum class PayoffKind { LabelPreservation, CompletionAgreement };

/// Largest coalition-game size enumerable exactly.
inline constexpr int kMaxShapleyPlayers = 20;

/// Characteristic function of the masking game over a fixed player set.
/// Coalition bit j stands for players()[j]; values are memoized, so the
/// deterministic oracle is consulted at most once per coalition.
class CoalitionPayoff {
 public:
  CoalitionPayoff(const Oracle& oracle, const Assignment& x,
                  std::vector<int> players, PayoffKind kind);

  double value(std::uint32_t coalition) const;
  int player_count() const { return static_cast<int>(players_.size()); }
  const std::vector<int>& players() const { return players_; }
  Label base_label() const { return base_; }

 private:
  const Oracle& oracle_;
  Assignment x_;
  std::vector<int> players_;
  PayoffKind kind_;
  Label base_;
  mutable std::vector<double> memo_;
  mutable std::vector<std::uint8_t> known_;
};

/// Exact Shapley values of the label-preservation game as rationals over a
/// common denominator of player_count()! — marginal payoffs are 0/1
/// indicators, so the values are exact and the efficiency identity
/// sum(numerators) == denominator holds with integer arithmetic.
struct ShapleyExactRational {
  std::vector<int> players;
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 1;

  AttributionMap values(int width) const;
};

ShapleyExactRational shapley_exact_rational(const Oracle& oracle, const Assignment& x,
                                            std::vector<int> players);

/// Exact Shapley values over all 2^n coalitions of the given players
/// (defaults to every input position). Positions outside the player set
/// score 0. Guarded at kMaxShapleyPlayers.
AttributionMap shapley_exact(const Oracle& oracle, const Assignment& x,
                             std::vector<int> players,
                             PayoffKind kind = PayoffKind::LabelPreservation);
AttributionMap shapley_exact(const Oracle& oracle, const Assignment& x);

/// Permutation-sampling estimate of the same game: the mean marginal
/// contribution of each player over `num_permutations` uniformly random
/// orderings. Converges to shapley_exact and is deterministic per seed.
AttributionMap shapley_sampled(const Oracle& oracle, const Assignment& x,
                               int num_permutations, Rng& rng,
                               std::vector<int> players,
                               PayoffKind kind = PayoffKind::LabelPreservation);
AttributionMap shapley_sampled(const Oracle& oracle, const Assignment& x,
                               int num_permutations, Rng& rng);

/// I.i.d. uniform [0,1) scores; the sanity floor for the benchmark.
AttributionMap random_attribution(int width, Rng& rng);

}  // namespace brex
