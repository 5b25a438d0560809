#include "brex/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <memory>
#include <map>
#include <stdexcept>
#include <tuple>

namespace brex {

namespace {

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string two_digits(int v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d", v);
  return buf;
}

AttributionMap run_explainer(const ExplainerSpec& spec, const Oracle& oracle,
                             const Assignment& a, const std::vector<int>& players,
                             std::uint64_t record_seed) {
  if (spec.id == kExplainerBrex) {
    BrexConfig cfg = spec.brex;
    cfg.seed = record_seed;
    return brex_explain(oracle, a, cfg);
  }
  if (spec.id == kExplainerShapleyExact) {
    return shapley_exact(oracle, a, players, spec.payoff);
  }
  if (spec.id == kExplainerShapleySampled) {
    Rng rng(record_seed);
    return shapley_sampled(oracle, a, spec.permutations, rng, players, spec.payoff);
  }
  if (spec.id == kExplainerRandom) {
    Rng rng(record_seed);
    return random_attribution(a.width(), rng);
  }
  throw std::invalid_argument("unknown explainer id: " + spec.id);
}

}  // namespace

std::vector<ExplainerSpec> default_explainers() {
  std::vector<ExplainerSpec> out(4);
  out[0].id = kExplainerBrex;
  out[1].id = kExplainerShapleyExact;
  out[2].id = kExplainerShapleySampled;
  out[3].id = kExplainerRandom;
  return out;
}

std::vector<BenchFormula> random_suite(const ExperimentConfig& config) {
  std::vector<BenchFormula> suite;
  for (OperatorFamily family : config.families) {
    for (int arity : config.arities) {
      if (arity < 1 || arity > config.width) {
        throw std::invalid_argument("random_suite: arity outside [1, width]");
      }
      for (int k = 0; k < config.formulae_per_arity; ++k) {
        const std::uint64_t salt =
            ((family == OperatorFamily::Monotonic ? 0ULL : 1ULL) * 64 +
             static_cast<std::uint64_t>(arity)) *
                1024 +
            static_cast<std::uint64_t>(k);
        Rng rng(derive_seed(config.seed, salt));
        BenchFormula item{
            std::string(family == OperatorFamily::Monotonic ? "mono" : "nonmono") +
                "-a" + two_digits(arity) + "-f" + two_digits(k),
            family,
            random_formula(arity, family, config.read_once, rng, config.gen_params)};
        suite.push_back(std::move(item));
      }
    }
  }
  return suite;
}

std::vector<BenchFormula> fixed_suite(int width) {
  if (width < 10) throw std::invalid_argument("fixed_suite: width must be >= 10");
  std::vector<BenchFormula> suite;
  for (int arity = 3; arity <= 10; ++arity) {
    Formula mono_chain = var(0);
    Formula nonmono_chain = var(0);
    for (int i = 2; i <= arity; ++i) {
      mono_chain = binary(i % 2 == 0 ? OpKind::And : OpKind::Or,
                          std::move(mono_chain), var(i - 1));
      nonmono_chain = binary(i % 2 == 0 ? OpKind::Xor : OpKind::And,
                             std::move(nonmono_chain), var(i - 1));
    }
    suite.push_back({"chain-mono-a" + two_digits(arity), OperatorFamily::Monotonic,
                     std::move(mono_chain)});
    suite.push_back({"chain-nonmono-a" + two_digits(arity),
                     OperatorFamily::Nonmonotonic, std::move(nonmono_chain)});
  }
  suite.push_back({"form-and", OperatorFamily::Monotonic, and_(var(0), var(1))});
  suite.push_back({"form-or", OperatorFamily::Monotonic, or_(var(0), var(1))});
  suite.push_back({"form-xor", OperatorFamily::Nonmonotonic, xor_(var(0), var(1))});
  suite.push_back({"form-xorandxor", OperatorFamily::Nonmonotonic,
                   and_(xor_(var(0), var(1)), xor_(var(2), var(3)))});
  return suite;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config,
                                         const std::vector<BenchFormula>& suite) {
  std::vector<ResultRecord> records;
  for (const BenchFormula& item : suite) {
    const Formula& f = item.formula;
    if (f.max_var_index() >= config.width) {
      throw std::invalid_argument("run_experiment: formula wider than input width");
    }
    const std::vector<int>& used = f.meta().used_vars;
    const bool fast_path = f.meta().read_once;
    std::unique_ptr<TruthTable> cached;
    if (!fast_path && config.cache_truth_tables) {
      cached = std::make_unique<TruthTable>(f, config.brute.max_arity);
    }

    const AssignmentSpace space =
        config.full_width_assignments
            ? AssignmentSpace::full(config.width)
            : AssignmentSpace::restricted_to(config.width, used);
    std::vector<std::uint64_t> codes;
    if (config.sample.has_value()) {
      Rng rng(derive_seed(config.seed, fnv1a64(item.id) ^ 0x5a5a5a5aULL));
      codes = sample_codes(space.size(), *config.sample, rng);
    } else {
      codes.resize(space.size());
      for (std::uint64_t i = 0; i < space.size(); ++i) codes[i] = i;
    }

    const FormulaOracle oracle(f);
    const std::uint64_t formula_seed = derive_seed(config.seed, fnv1a64(item.id));
    for (std::uint64_t code : codes) {
      const Assignment a = space.at(code);
      ResponsibilityMap gt;
      if (fast_path) {
        gt = responsibility_read_once(f, a);
      } else if (cached != nullptr) {
        gt = responsibility_brute_force(*cached, a, config.brute);
      } else {
        gt = responsibility_brute_force(f, a, config.brute);
      }
      if (gt.all_zero()) continue;  // degenerate constant formula
      const Distribution gt_dist = normalize(gt.to_doubles());

      for (std::size_t e = 0; e < config.explainers.size(); ++e) {
        const ExplainerSpec& spec = config.explainers[e];
        const std::uint64_t record_seed =
            derive_seed(derive_seed(formula_seed, code), e);
        oracle.reset_calls();
        const auto t0 = std::chrono::steady_clock::now();
        const AttributionMap attribution =
            run_explainer(spec, oracle, a, used, record_seed);
        const auto t1 = std::chrono::steady_clock::now();

        ResultRecord record;
        record.formula_id = item.id;
        record.family = item.family;
        record.arity = f.meta().arity;
        record.assignment = a.to_string();
        record.explainer_id = spec.id;
        record.jsd_value = jsd(normalize(attribution), gt_dist);
        record.topk_perfect = topk_perfect_overlap(attribution, gt);
        record.oracle_calls = oracle.calls();
        record.wall_time_us =
            config.measure_time
                ? std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0)
                      .count()
                : 0;
        records.push_back(std::move(record));
      }
    }
  }
  std::sort(records.begin(), records.end(),
            [](const ResultRecord& a, const ResultRecord& b) {
              return std::tie(a.formula_id, a.assignment, a.explainer_id) <
                     std::tie(b.formula_id, b.assignment, b.explainer_id);
            });
  return records;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, random_suite(config));
}

ReportTable report(const std::vector<ResultRecord>& records, GroupBy group_by) {
  if (records.empty()) throw std::invalid_argument("report: no records");
  struct Key {
    std::string explainer;
    int family = -1;  // -1 means collapsed
    int arity = -1;
    bool operator<(const Key& o) const {
      return std::tie(explainer, family, arity) <
             std::tie(o.explainer, o.family, o.arity);
    }
  };
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const ResultRecord& r : records) {
    Key key;
    key.explainer = r.explainer_id;
    if (group_by != GroupBy::ExplainerArity) {
      key.family = r.family == OperatorFamily::Monotonic ? 0 : 1;
    }
    if (group_by != GroupBy::ExplainerFamily) key.arity = r.arity;
    auto& [jsds, topks] = groups[key];
    jsds.push_back(r.jsd_value);
    topks.push_back(r.topk_perfect ? 1.0 : 0.0);
  }
  ReportTable table;
  for (const auto& [key, samples] : groups) {
    ReportRow row;
    row.explainer_id = key.explainer;
    if (key.family >= 0) {
      row.family = key.family == 0 ? OperatorFamily::Monotonic
                                   : OperatorFamily::Nonmonotonic;
    }
    if (key.arity >= 0) row.arity = key.arity;
    row.jsd = aggregate(samples.first);
    row.topk = aggregate(samples.second);
    table.rows.push_back(std::move(row));
  }
  return table;
}

ExperimentConfig preset_paper_jsd() { return ExperimentConfig{}; }

TopkPreset preset_paper_topk() {
  TopkPreset preset;
  preset.suite = fixed_suite(preset.config.width);
  return preset;
}

}  // namespace brex
