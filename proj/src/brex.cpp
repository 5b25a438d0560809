#include "brex/brex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace brex {

namespace {

constexpr double kQuotaSlack = 1e-12;

struct BudgetExhausted {};

/// Budget-aware probe state shared by one explain invocation.
struct ProbeContext {
  const Oracle& oracle;
  const Assignment& x;
  Label base = Label::Undetermined;
  std::optional<std::int64_t> budget;
  std::int64_t start_calls = 0;

  Label classify(const Assignment& mutant) const {
    if (budget.has_value() && oracle.calls() - start_calls >= *budget) {
      throw BudgetExhausted{};
    }
    return oracle.classify(mutant);
  }
};

/// Masks `scratch` to x with every flagged position plus the given blocks
/// hidden, then classifies.
Label probe(const ProbeContext& ctx, Assignment& scratch,
            const std::vector<std::uint8_t>& masked_flags,
            const BlockPartition& blocks, std::span<const int> block_ids,
            const std::vector<int>* extra_block) {
  scratch = ctx.x;
  for (int i = 0; i < scratch.width(); ++i) {
    if (masked_flags[static_cast<std::size_t>(i)] != 0) {
      scratch.set(i, TruthValue::Unassigned);
    }
  }
  for (int id : block_ids) {
    for (int i : blocks.blocks[static_cast<std::size_t>(id)]) {
      scratch.set(i, TruthValue::Unassigned);
    }
  }
  if (extra_block != nullptr) {
    for (int i : *extra_block) scratch.set(i, TruthValue::Unassigned);
  }
  return ctx.classify(scratch);
}

/// Increasing-cardinality, lexicographic subset search over the sibling
/// block ids of `target`.
std::optional<std::vector<int>> search_witness(const ProbeContext& ctx,
                                               Assignment& scratch,
                                               const std::vector<std::uint8_t>& masked_flags,
                                               const BlockPartition& blocks,
                                               int target) {
  std::vector<int> candidates;
  for (int id = 0; id < static_cast<int>(blocks.blocks.size()); ++id) {
    if (id != target) candidates.push_back(id);
  }
  const int n = static_cast<int>(candidates.size());
  const std::vector<int>& target_block =
      blocks.blocks[static_cast<std::size_t>(target)];

  std::vector<int> pick;  // positions into candidates
  std::vector<int> chosen;
  for (int k = 0; k <= n; ++k) {
    pick.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
      chosen.clear();
      for (int p : pick) chosen.push_back(candidates[static_cast<std::size_t>(p)]);
      const Label kept = probe(ctx, scratch, masked_flags, blocks, chosen, nullptr);
      if (kept == ctx.base) {
        const Label without_target =
            probe(ctx, scratch, masked_flags, blocks, chosen, &target_block);
        if (without_target != ctx.base) return chosen;
      }
      // advance to the next k-combination
      int i = k - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) {
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  return std::nullopt;
}

void refine(const ProbeContext& ctx, Assignment& scratch,
            const std::vector<int>& index_set,
            std::vector<std::uint8_t>& masked_flags, int witness_ctx,
            std::vector<double>& rho, const BrexConfig& config, Rng& rng) {
  const BlockPartition blocks = partition(index_set, rho, config.num_blocks, rng);
  for (int target = 0; target < static_cast<int>(blocks.blocks.size()); ++target) {
    const std::vector<int>& block = blocks.blocks[static_cast<std::size_t>(target)];
    const std::optional<std::vector<int>> witness =
        search_witness(ctx, scratch, masked_flags, blocks, target);
    if (!witness.has_value()) {
      for (int i : block) rho[static_cast<std::size_t>(i)] = 0.0;
      continue;
    }
    const int witness_size = static_cast<int>(witness->size());
    const double value = 1.0 / (1 + witness_ctx + witness_size);
    for (int i : block) rho[static_cast<std::size_t>(i)] = value;

    const bool refinable = static_cast<int>(block.size()) >=
                               std::max(2, config.min_block_to_recurse) &&
                           block.size() < index_set.size();
    if (!refinable) continue;
    // The witness blocks stay masked inside the refined block; their count
    // carries into the child as collected witness size.
    std::vector<int> newly_masked;
    for (int id : *witness) {
      for (int i : blocks.blocks[static_cast<std::size_t>(id)]) {
        if (masked_flags[static_cast<std::size_t>(i)] == 0) {
          masked_flags[static_cast<std::size_t>(i)] = 1;
          newly_masked.push_back(i);
        }
      }
    }
    refine(ctx, scratch, block, masked_flags, witness_ctx + witness_size, rho,
           config, rng);
    for (int i : newly_masked) masked_flags[static_cast<std::size_t>(i)] = 0;
  }
}

}  // namespace

BlockPartition partition(const std::vector<int>& indices,
                         const std::vector<double>& weights, int m, Rng& rng) {
  if (indices.empty()) throw std::invalid_argument("partition: empty index set");
  if (m < 1) throw std::invalid_argument("partition: block count must be >= 1");
  for (int i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= weights.size()) {
      throw std::out_of_range("partition: index outside weight vector");
    }
  }
  const int m_eff = std::min<int>(m, static_cast<int>(indices.size()));

  std::vector<double> w(indices.size());
  double l1 = 0.0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    w[i] = std::abs(weights[static_cast<std::size_t>(indices[i])]);
    l1 += w[i];
  }
  if (l1 <= 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(indices.size()));
  } else {
    for (double& wi : w) wi /= l1;
  }

  // Weighted draw without replacement; zero-weight leftovers fall back to a
  // uniform draw so every index is placed.
  std::vector<std::size_t> order;
  std::vector<std::size_t> remaining(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) remaining[i] = i;
  while (!remaining.empty()) {
    double total = 0.0;
    for (std::size_t r : remaining) total += w[r];
    std::size_t chosen_at = 0;
    if (total <= 0.0) {
      chosen_at = static_cast<std::size_t>(uniform_below(rng, remaining.size()));
    } else {
      const double u = uniform_unit(rng) * total;
      double cum = 0.0;
      chosen_at = remaining.size() - 1;
      for (std::size_t k = 0; k < remaining.size(); ++k) {
        cum += w[remaining[k]];
        if (u < cum) {
          chosen_at = k;
          break;
        }
      }
    }
    order.push_back(remaining[chosen_at]);
    remaining.erase(remaining.begin() + static_cast<long>(chosen_at));
  }

  const double quota = 1.0 / static_cast<double>(m_eff) - kQuotaSlack;
  BlockPartition out;
  out.blocks.emplace_back();
  double block_weight = 0.0;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    // never let the first block swallow the whole set when m >= 2
    if (pos + 1 == order.size() && out.blocks.size() == 1 && m_eff >= 2 &&
        !out.blocks.back().empty()) {
      out.blocks.emplace_back();
      block_weight = 0.0;
    }
    out.blocks.back().push_back(indices[order[pos]]);
    block_weight += w[order[pos]];
    const std::size_t left = order.size() - pos - 1;
    const bool can_open = static_cast<int>(out.blocks.size()) < m_eff && left > 0;
    if (can_open && block_weight >= quota) {
      out.blocks.emplace_back();
      block_weight = 0.0;
    }
  }
  return out;
}

std::optional<std::vector<int>> find_witness_blocks(const Oracle& oracle,
                                                    const Assignment& x,
                                                    const BlockPartition& blocks,
                                                    int target,
                                                    std::span<const int> outside_keep) {
  if (target < 0 || static_cast<std::size_t>(target) >= blocks.blocks.size()) {
    throw std::out_of_range("find_witness_blocks: target block out of range");
  }
  ProbeContext ctx{oracle, x, oracle.classify(x), std::nullopt, 0};
  if (!is_determinate(ctx.base)) {
    throw std::invalid_argument("find_witness_blocks: input has no determinate label");
  }
  std::vector<std::uint8_t> masked_flags(static_cast<std::size_t>(x.width()), 1);
  for (int i : outside_keep) masked_flags[static_cast<std::size_t>(i)] = 0;
  for (const std::vector<int>& block : blocks.blocks) {
    for (int i : block) masked_flags[static_cast<std::size_t>(i)] = 0;
  }
  Assignment scratch = x;
  return search_witness(ctx, scratch, masked_flags, blocks, target);
}

ResponsibilityEstimate brex_explain(const Oracle& oracle, const Assignment& x,
                                    const BrexConfig& config) {
  if (x.width() < 1) throw std::invalid_argument("brex_explain: empty input");
  if (config.num_blocks < 2) {
    throw std::invalid_argument("brex_explain: num_blocks must be >= 2");
  }
  if (config.restarts < 1) {
    throw std::invalid_argument("brex_explain: restarts must be >= 1");
  }
  if (config.call_budget.has_value() && *config.call_budget <= 0) {
    throw std::invalid_argument("brex_explain: call budget must allow a call");
  }

  ProbeContext ctx{oracle, x, Label::Undetermined, config.call_budget,
                   oracle.calls()};
  ctx.base = ctx.classify(x);
  if (!is_determinate(ctx.base)) {
    throw std::invalid_argument("brex_explain: input has no determinate label");
  }

  std::vector<int> all_indices(static_cast<std::size_t>(x.width()));
  for (int i = 0; i < x.width(); ++i) all_indices[static_cast<std::size_t>(i)] = i;

  Assignment scratch = x;
  std::vector<double> sums(static_cast<std::size_t>(x.width()), 0.0);
  int started = 0;
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
    std::vector<double> rho(static_cast<std::size_t>(x.width()), 0.0);
    std::vector<std::uint8_t> masked_flags(static_cast<std::size_t>(x.width()), 0);
    ++started;
    bool exhausted = false;
    try {
      refine(ctx, scratch, all_indices, masked_flags, 0, rho, config, rng);
    } catch (const BudgetExhausted&) {
      exhausted = true;
    }
    for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += rho[i];
    if (exhausted) break;
  }
  for (double& v : sums) v /= static_cast<double>(started);
  return sums;
}

}  // namespace brex
