#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brex/baselines.hpp"
#include "brex/brex.hpp"
#include "brex/metrics.hpp"
#include "brex/random_formula.hpp"
#include "brex/responsibility.hpp"

namespace brex {

inline constexpr const char* kExplainerBrex = "brex";
inline constexpr const char* kExplainerShapleyExact = "shapley_exact";
inline constexpr const char* kExplainerShapleySampled = "shapley_sampled";
inline constexpr const char* kExplainerRandom = "random";

struct ExplainerSpec {
  std::string id;
  BrexConfig brex;          // brex only (its seed field is overridden per record)
  int permutations = 128;   // shapley_sampled only
  PayoffKind payoff = PayoffKind::LabelPreservation;
};

std::vector<ExplainerSpec> default_explainers();

struct ExperimentConfig {
  int width = 12;
  std::vector<int> arities = {3, 4, 5, 6, 7, 8, 9, 10};
  int formulae_per_arity = 10;
  std::vector<OperatorFamily> families = {OperatorFamily::Monotonic,
                                          OperatorFamily::Nonmonotonic};
  bool read_once = true;
  RandomFormulaParams gen_params;
  std::optional<std::uint64_t> sample;  // assignments per formula; all when unset
  bool full_width_assignments = false;  // enumerate all width positions instead
                                        // of only the used ones
  std::uint64_t seed = 0;
  std::vector<ExplainerSpec> explainers = default_explainers();
  BruteForceOptions brute;
  bool cache_truth_tables = true;
  bool measure_time = false;  // wall_time_us is 0 when off, keeping runs
                              // byte-reproducible
};

struct ResultRecord {
  std::string formula_id;
  OperatorFamily family = OperatorFamily::Monotonic;
  int arity = 0;
  std::string assignment;  // full-width bitstring
  std::string explainer_id;
  double jsd_value = 0.0;
  bool topk_perfect = false;
  std::int64_t oracle_calls = 0;
  std::int64_t wall_time_us = 0;
};

struct BenchFormula {
  std::string id;
  OperatorFamily family = OperatorFamily::Monotonic;
  Formula formula;
};

/// Seeded random corpus: formulae_per_arity formulae per (family, arity).
std::vector<BenchFormula> random_suite(const ExperimentConfig& config);

/// Fixed-structure suite: one alternating AND/OR chain and one alternating
/// XOR/AND chain per arity 3..10, plus the four hand-crafted forms
/// (x1&x2, x1|x2, x1^x2, (x1^x2)&(x3^x4)).
std::vector<BenchFormula> fixed_suite(int width);

/// Runs every configured explainer on every enumerated (or sampled)
/// assignment of every suite formula against exact ground truth (linear
/// two-pass for read-once formulae, truth-table brute force otherwise).
/// Assignments whose ground-truth map is all-zero are skipped; that cannot
/// happen for formulae that are non-constant on their used variables.
/// Deterministic for a fixed config; records come back sorted by
/// (formula_id, assignment, explainer_id).
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config,
                                         const std::vector<BenchFormula>& suite);
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);

enum class GroupBy { ExplainerFamilyArity, ExplainerFamily, ExplainerArity };

struct ReportRow {
  std::string explainer_id;
  std::optional<OperatorFamily> family;  // empty when collapsed by grouping
  std::optional<int> arity;
  AggregateStat jsd;
  AggregateStat topk;  // mean of 0/1 outcomes = top-k accuracy
};

struct ReportTable {
  std::vector<ReportRow> rows;  // sorted by (explainer, family, arity)
};

ReportTable report(const std::vector<ResultRecord>& records,
                   GroupBy group_by = GroupBy::ExplainerFamilyArity);

/// Benchmark presets mirroring the two experiment shapes.
ExperimentConfig preset_paper_jsd();
struct TopkPreset {
  ExperimentConfig config;
  std::vector<BenchFormula> suite;
};
TopkPreset preset_paper_topk();

}  // namespace brex
