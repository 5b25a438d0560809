#include "brex/brex.hpp"

#include <set>

#include "brex/random_formula.hpp"
#include "doctest.h"
#include "test_oracles.hpp"

using namespace brex;

namespace {

std::vector<int> iota_indices(int n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i;
  return out;
}

BrexConfig singleton_config(int width, std::uint64_t seed = 0) {
  BrexConfig cfg;
  cfg.num_blocks = std::max(2, width);  // singleton blocks: no refinement happens
  cfg.restarts = 1;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("brex");

TEST_CASE("partition splits uniform weights evenly") {
  Rng rng(3);
  const std::vector<double> weights(8, 0.0);  // zero L1 -> uniform fallback
  const BlockPartition p = partition(iota_indices(8), weights, 4, rng);
  REQUIRE(p.blocks.size() == 4);
  for (const std::vector<int>& block : p.blocks) CHECK(block.size() == 2);
}

TEST_CASE("partition isolates a dominant weight") {
  Rng rng(5);
  std::vector<double> weights(6, 0.0);
  weights[4] = 3.5;
  const BlockPartition p = partition(iota_indices(6), weights, 2, rng);
  REQUIRE(p.blocks.size() == 2);
  CHECK(p.blocks[0] == std::vector<int>{4});
  CHECK(p.blocks[1].size() == 5);
}

TEST_CASE("partition clamps to the index count") {
  Rng rng(7);
  const std::vector<double> weights(4, 1.0);
  CHECK(partition({2}, weights, 5, rng).blocks ==
        std::vector<std::vector<int>>{{2}});
  CHECK_THROWS_AS(partition({}, weights, 2, rng), std::invalid_argument);
}

TEST_CASE("partition fuzz: disjoint non-empty cover with at most m blocks") {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int width = 1 + static_cast<int>(uniform_below(rng, 14));
    std::vector<double> weights(static_cast<std::size_t>(width));
    for (double& w : weights) {
      w = uniform_below(rng, 3) == 0 ? 0.0 : uniform_unit(rng) * 5.0 - 2.5;
    }
    std::vector<int> indices;
    for (int i = 0; i < width; ++i) {
      if (uniform_below(rng, 4) != 0) indices.push_back(i);
    }
    if (indices.empty()) indices.push_back(0);
    const int m = 1 + static_cast<int>(uniform_below(rng, 6));
    const BlockPartition p = partition(indices, weights, m, rng);
    CHECK(p.blocks.size() <= static_cast<std::size_t>(std::min<int>(
                                 m, static_cast<int>(indices.size()))));
    std::set<int> seen;
    for (const std::vector<int>& block : p.blocks) {
      CHECK_FALSE(block.empty());
      for (int i : block) CHECK(seen.insert(i).second);
    }
    CHECK(seen == std::set<int>(indices.begin(), indices.end()));
    if (indices.size() >= 2 && m >= 2) CHECK(p.blocks.size() >= 2);
  }
}

TEST_CASE("find_witness_blocks on two-variable gates") {
  SUBCASE("(x1 | x2) under 11: the sibling must be masked first") {
    const FormulaOracle oracle(or_(var(0), var(1)));
    const Assignment x = Assignment::from_string("11");
    const BlockPartition blocks{{{0}, {1}}};
    const auto witness = find_witness_blocks(oracle, x, blocks, 0, iota_indices(2));
    REQUIRE(witness.has_value());
    CHECK(*witness == std::vector<int>{1});
  }
  SUBCASE("(x1 & x2) under 11: masking the target alone already flips") {
    const FormulaOracle oracle(and_(var(0), var(1)));
    const Assignment x = Assignment::from_string("11");
    const BlockPartition blocks{{{0}, {1}}};
    const auto witness = find_witness_blocks(oracle, x, blocks, 0, iota_indices(2));
    REQUIRE(witness.has_value());
    CHECK(witness->empty());
  }
  SUBCASE("a block of unused variables has no witness") {
    const FormulaOracle oracle(and_(var(0), var(1)));
    const Assignment x = Assignment::from_string("1100");
    const BlockPartition blocks{{{0}, {1}, {2, 3}}};
    CHECK_FALSE(
        find_witness_blocks(oracle, x, blocks, 2, iota_indices(4)).has_value());
  }
}

TEST_CASE("brex_explain worked examples") {
  SUBCASE("single relevant variable gets 1, everything else 0") {
    const FormulaOracle oracle(var(0));
    const Assignment x = Assignment::from_string("100101");
    for (int b : {2, 3, 6}) {
      BrexConfig cfg;
      cfg.num_blocks = b;
      cfg.restarts = 4;
      const ResponsibilityEstimate rho = brex_explain(oracle, x, cfg);
      CHECK(rho[0] == 1.0);
      for (int i = 1; i < 6; ++i) CHECK(rho[static_cast<std::size_t>(i)] == 0.0);
    }
  }
  SUBCASE("(x1 & x2) under 11 with singleton blocks") {
    const FormulaOracle oracle(and_(var(0), var(1)));
    const Assignment x = Assignment::from_string("1100");
    const ResponsibilityEstimate rho = brex_explain(oracle, x, singleton_config(4));
    CHECK(rho == ResponsibilityEstimate{1.0, 1.0, 0.0, 0.0});
  }
  SUBCASE("(x1 & (x2 & x3)) under 000 with singleton blocks") {
    const FormulaOracle oracle(and_(var(0), and_(var(1), var(2))));
    const Assignment x = Assignment::from_string("00010");
    const ResponsibilityEstimate rho = brex_explain(oracle, x, singleton_config(5));
    CHECK(rho == ResponsibilityEstimate{1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0, 0.0});
  }
}

TEST_CASE("full granularity equals the masking-semantics reference") {
  Rng rng(61);
  for (int trial = 0; trial < 120; ++trial) {
    const int arity = 1 + static_cast<int>(uniform_below(rng, 5));
    const OperatorFamily family = uniform_below(rng, 2) == 0
                                      ? OperatorFamily::Monotonic
                                      : OperatorFamily::Nonmonotonic;
    const bool read_once = uniform_below(rng, 2) == 0;
    const Formula f = random_formula(arity, family, read_once, rng);
    const int width = arity + static_cast<int>(uniform_below(rng, 3));
    const FormulaOracle oracle(f);
    const AssignmentSpace space =
        AssignmentSpace::restricted_to(width, f.meta().used_vars);
    for (std::uint64_t code = 0; code < space.size(); ++code) {
      const Assignment x = space.at(code);
      if (!is_determinate(label_of(evaluate_k3(f, x)))) continue;
      CAPTURE(render(f));
      CAPTURE(x.to_string());
      REQUIRE(brex_explain(oracle, x, singleton_config(width)) ==
              testing::masking_responsibility(f, x));
    }
  }
}

TEST_CASE("determinism and estimate range") {
  Rng rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    const Formula f = random_formula(5, OperatorFamily::Nonmonotonic, true, rng);
    const FormulaOracle oracle(f);
    const Assignment x =
        AssignmentSpace::full(7).at(uniform_below(rng, 32) * 4);  // Boolean input
    BrexConfig cfg;
    cfg.restarts = 5;
    cfg.seed = 17 + static_cast<std::uint64_t>(trial);
    const ResponsibilityEstimate a = brex_explain(oracle, x, cfg);
    const ResponsibilityEstimate b = brex_explain(oracle, x, cfg);
    CHECK(a == b);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i] >= 0.0);
      CHECK(a[i] <= 1.0);
    }
    for (int i = 5; i < 7; ++i) CHECK(a[static_cast<std::size_t>(i)] == 0.0);
  }
}

TEST_CASE("budget accounting") {
  const Formula f = and_(var(0), or_(var(1), var(2)));
  const FormulaOracle oracle(f);
  const Assignment x = Assignment::from_string("111");
  SUBCASE("never exceeds the budget and still returns an estimate") {
    for (std::int64_t budget : {1, 2, 3, 5, 10, 50, 1000}) {
      BrexConfig cfg;
      cfg.num_blocks = 3;
      cfg.restarts = 3;
      cfg.call_budget = budget;
      oracle.reset_calls();
      const ResponsibilityEstimate rho = brex_explain(oracle, x, cfg);
      CHECK(oracle.calls() <= budget);
      CHECK(rho.size() == 3);
    }
  }
  SUBCASE("an unbudgeted run is reproduced by a budget at least as large") {
    BrexConfig cfg;
    cfg.num_blocks = 3;
    cfg.restarts = 3;
    oracle.reset_calls();
    const ResponsibilityEstimate unbounded = brex_explain(oracle, x, cfg);
    const std::int64_t used = oracle.calls();
    cfg.call_budget = used;
    CHECK(brex_explain(oracle, x, cfg) == unbounded);
  }
  SUBCASE("zero budget is rejected") {
    BrexConfig cfg;
    cfg.call_budget = 0;
    CHECK_THROWS_AS(brex_explain(oracle, x, cfg), std::invalid_argument);
  }
  SUBCASE("an undetermined input is rejected") {
    CHECK_THROWS_AS(brex_explain(oracle, Assignment::from_string("u11"), BrexConfig{}),
                    std::invalid_argument);
  }
}

TEST_SUITE_END();
