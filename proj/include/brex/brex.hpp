#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "brex/assignment.hpp"
#include "brex/oracle.hpp"
#include "brex/rng.hpp"

namespace brex {

/// Disjoint, non-empty index blocks covering one partitioned index set.
struct BlockPartition {
  std::vector<std::vector<int>> blocks;
};

struct BrexConfig {
  int num_blocks = 4;       // partition width b, clamped to the index-set size
  int restarts = 20;        // independent runs averaged into the estimate
  std::optional<std::int64_t> call_budget;  // max oracle calls per explain
  std::uint64_t seed = 0;
  int min_block_to_recurse = 2;  // blocks below this size are not refined
};

/// Per-index responsibility estimates in [0, 1].
using ResponsibilityEstimate = std::vector<double>;

/// Splits `indices` into at most `m` blocks. The absolute weights restricted
/// to `indices` are L1-normalized (uniform when the norm is zero); indices
/// are then drawn without replacement proportionally to weight, filling the
/// current block until its cumulative normalized weight reaches 1/m, after
/// which the next block opens; the final block absorbs the remainder. High
/// weight therefore isolates quickly while low-weight indices pool together.
BlockPartition partition(const std::vector<int>& indices,
                         const std::vector<double>& weights, int m, Rng& rng);

/// Smallest set of blocks other than `target` whose masking preserves the
/// oracle's label on `x` while additionally masking `target` changes it
/// (a change to Undetermined counts). Positions neither in `outside_keep`
/// nor in any block are treated as already masked. Subsets are tried in
/// increasing cardinality, lexicographic within each size; returns the ids
/// of the first qualifying set, or nullopt when none exists.
std::optional<std::vector<int>> find_witness_blocks(const Oracle& oracle,
                                                    const Assignment& x,
                                                    const BlockPartition& blocks,
                                                    int target,
                                                    std::span<const int> outside_keep);

/// Black-box responsibility estimation by recursive partition refinement.
/// Each restart partitions the full index set, assigns every causal block
/// ρ = 1/(1 + ctx + |witness|) — ctx counts masked ancestor blocks — and
/// recurses into causal blocks of at least min_block_to_recurse indices with
/// the witness blocks kept masked. Non-causal blocks score 0. The returned
/// estimate is the arithmetic mean over restarts; when the call budget runs
/// out the mean over the restarts started so far is returned.
/// Throws if the unmasked input classifies as Undetermined or the budget is
/// zero.
ResponsibilityEstimate brex_explain(const Oracle& oracle, const Assignment& x,
                                    const BrexConfig& config);

}  // namespace brex
