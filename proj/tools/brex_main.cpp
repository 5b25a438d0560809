// Command-line front end: corpus generation, ground-truth dumps, single-input
// explanation, benchmark runs and report regeneration.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "brex/bench.hpp"
#include "brex/io.hpp"

namespace {

using namespace brex;

std::uint64_t env_default_seed() {
  const char* env = std::getenv("BREX_SEED");
  if (env == nullptr) return 0;
  return std::strtoull(env, nullptr, 10);
}

// "3,5,7" or "3-10" or a mix of both.
std::vector<int> parse_arities(const std::string& text) {
  std::vector<int> out;
  std::string token;
  std::istringstream stream(text);
  while (std::getline(stream, token, ',')) {
    const std::size_t dash = token.find('-');
    if (dash == std::string::npos) {
      out.push_back(std::stoi(token));
    } else {
      const int lo = std::stoi(token.substr(0, dash));
      const int hi = std::stoi(token.substr(dash + 1));
      for (int a = lo; a <= hi; ++a) out.push_back(a);
    }
  }
  if (out.empty()) throw CLI::ValidationError("--arities", "empty arity list");
  return out;
}

std::vector<OperatorFamily> parse_families(const std::string& text) {
  if (text == "both") {
    return {OperatorFamily::Monotonic, OperatorFamily::Nonmonotonic};
  }
  return {family_from_token(text)};
}

struct ExplainerKnobs {
  int blocks = 4;
  int restarts = 20;
  std::optional<std::int64_t> budget;
  int permutations = 128;
};

std::vector<ExplainerSpec> build_explainers(const std::string& list,
                                            const ExplainerKnobs& knobs) {
  std::vector<ExplainerSpec> out;
  std::string token;
  std::istringstream stream(list);
  while (std::getline(stream, token, ',')) {
    ExplainerSpec spec;
    spec.id = token;
    spec.brex.num_blocks = knobs.blocks;
    spec.brex.restarts = knobs.restarts;
    spec.brex.call_budget = knobs.budget;
    spec.permutations = knobs.permutations;
    out.push_back(std::move(spec));
  }
  if (out.empty()) throw CLI::ValidationError("--explainers", "empty explainer list");
  return out;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

int run_gen(const std::string& out_path, int width, const std::string& arities,
            const std::string& family, int count, bool general, std::uint64_t seed) {
  ExperimentConfig config;
  config.width = width;
  config.arities = parse_arities(arities);
  config.families = parse_families(family);
  config.formulae_per_arity = count;
  config.read_once = !general;
  config.seed = seed;
  std::vector<Formula> formulas;
  for (BenchFormula& item : random_suite(config)) {
    formulas.push_back(std::move(item.formula));
  }
  write_corpus(out_path, width, formulas);
  std::cout << "wrote " << formulas.size() << " formulae to " << out_path << "\n";
  return 0;
}

int run_truth(const std::string& corpus_path, const std::string& formula_text,
              int width, const std::string& out_path,
              std::optional<std::uint64_t> sample, int guard, bool relax_subsets,
              std::uint64_t seed) {
  Corpus corpus;
  if (!corpus_path.empty()) {
    corpus = read_corpus(corpus_path);
  } else {
    if (formula_text.empty()) {
      throw CLI::ValidationError("truth", "need --corpus or --formula");
    }
    corpus.width = width;
    corpus.formulas.push_back(parse_formula(formula_text, width));
  }
  BruteForceOptions brute;
  brute.max_arity = guard;
  brute.subset_condition = !relax_subsets;

  std::vector<TruthRow> rows;
  for (std::size_t k = 0; k < corpus.formulas.size(); ++k) {
    const Formula& f = corpus.formulas[k];
    char id[16];
    std::snprintf(id, sizeof id, "f%03zu", k);
    const AssignmentSpace space =
        AssignmentSpace::restricted_to(corpus.width, f.meta().used_vars);
    std::vector<std::uint64_t> codes;
    if (sample.has_value()) {
      Rng rng(derive_seed(seed, k));
      codes = sample_codes(space.size(), *sample, rng);
    } else {
      codes.resize(space.size());
      for (std::uint64_t i = 0; i < space.size(); ++i) codes[i] = i;
    }
    std::unique_ptr<TruthTable> table;
    if (!f.meta().read_once) table = std::make_unique<TruthTable>(f, guard);
    for (std::uint64_t code : codes) {
      const Assignment a = space.at(code);
      const ResponsibilityMap rho = f.meta().read_once
                                        ? responsibility_read_once(f, a)
                                        : responsibility_brute_force(*table, a, brute);
      for (int v = 0; v < rho.width(); ++v) {
        rows.push_back({id, a.to_string(), v, rho.at(v)});
      }
    }
  }
  write_truth_csv(out_path, rows);
  std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
  return 0;
}

int run_explain(const std::string& formula_text, int width,
                const std::string& assignment_text, const std::string& explainer,
                const ExplainerKnobs& knobs, std::uint64_t seed,
                const std::string& out_path) {
  const Assignment x = Assignment::from_string(assignment_text);
  if (width > 0 && width != x.width()) {
    throw CLI::ValidationError("--assignment", "length differs from --width");
  }
  const Formula f = parse_formula(formula_text, x.width());
  const FormulaOracle oracle(f);

  std::vector<ExplainerSpec> specs = build_explainers(explainer, knobs);
  ExplainerSpec spec = specs.front();
  spec.brex.seed = seed;

  AttributionMap estimates;
  if (spec.id == kExplainerBrex) {
    estimates = brex_explain(oracle, x, spec.brex);
  } else if (spec.id == kExplainerShapleyExact) {
    estimates = shapley_exact(oracle, x, f.meta().used_vars);
  } else if (spec.id == kExplainerShapleySampled) {
    Rng rng(seed);
    estimates = shapley_sampled(oracle, x, spec.permutations, rng, f.meta().used_vars);
  } else if (spec.id == kExplainerRandom) {
    Rng rng(seed);
    estimates = random_attribution(x.width(), rng);
  } else {
    throw CLI::ValidationError("--explainer", "unknown explainer id " + spec.id);
  }

  const std::string json =
      explanation_json("adhoc", x, estimates, oracle.calls(), spec, seed);
  if (out_path.empty()) {
    std::cout << json << "\n";
  } else {
    std::ofstream out(out_path);
    out << json << "\n";
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int run_bench_like(const ExperimentConfig& config,
                   const std::vector<BenchFormula>& suite,
                   const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::vector<ResultRecord> records = run_experiment(config, suite);
  const ReportTable table = report(records);

  const std::string results = join_path(out_dir, "results.csv");
  const std::string report_jsd = join_path(out_dir, "report_jsd.csv");
  const std::string report_topk = join_path(out_dir, "report_topk.csv");
  const std::string plot_data = join_path(out_dir, "plot_data.csv");
  write_results_csv(results, records);
  write_report_csv(report_jsd, table, /*topk_metric=*/false);
  write_report_csv(report_topk, table, /*topk_metric=*/true);
  write_plot_data_csv(plot_data, table);
  write_manifest(join_path(out_dir, "manifest.json"), config,
                 {results, report_jsd, report_topk, plot_data});

  std::cout << render_text_tables(table, /*topk_metric=*/false);
  std::cout << render_text_tables(table, /*topk_metric=*/true);
  std::cout << records.size() << " records -> " << results << "\n";
  return 0;
}

int run_report(const std::string& results_path, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::vector<ResultRecord> records = read_results_csv(results_path);
  const ReportTable table = report(records);
  write_report_csv(join_path(out_dir, "report_jsd.csv"), table, false);
  write_report_csv(join_path(out_dir, "report_topk.csv"), table, true);
  write_plot_data_csv(join_path(out_dir, "plot_data.csv"), table);
  std::cout << render_text_tables(table, false);
  std::cout << render_text_tables(table, true);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Responsibility ground truth, black-box explainers and benchmarks "
               "for Boolean formula classifiers"};
  app.require_subcommand(1);

  const std::uint64_t seed_default = env_default_seed();

  // gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a random formula corpus");
  std::string gen_out = "corpus.txt";
  int gen_width = 12;
  std::string gen_arities = "3-10";
  std::string gen_family = "both";
  int gen_count = 10;
  bool gen_general = false;
  std::uint64_t gen_seed = seed_default;
  gen->add_option("--out", gen_out, "corpus file to write");
  gen->add_option("--width", gen_width, "input width");
  gen->add_option("--arities", gen_arities, "arity list, e.g. 3-10 or 3,5,7");
  gen->add_option("--family", gen_family, "monotonic | nonmonotonic | both");
  gen->add_option("--count", gen_count, "formulae per (family, arity)");
  gen->add_flag("--general", gen_general, "allow repeated variables");
  gen->add_flag("--read-once", [](std::int64_t) {}, "one occurrence per variable (default)");
  gen->add_option("--seed", gen_seed, "generation seed");

  // truth --------------------------------------------------------------
  auto* truth = app.add_subcommand("truth", "dump exact ground-truth responsibility");
  std::string truth_corpus;
  std::string truth_formula;
  int truth_width = 12;
  std::string truth_out = "truth.csv";
  std::optional<std::uint64_t> truth_sample;
  int truth_guard = 15;
  bool truth_relax = false;
  std::uint64_t truth_seed = seed_default;
  truth->add_option("--corpus", truth_corpus, "corpus file to read");
  truth->add_option("--formula", truth_formula, "single formula text");
  truth->add_option("--width", truth_width, "input width for --formula");
  truth->add_option("--out", truth_out, "CSV file to write");
  truth->add_option("--sample", truth_sample, "sample this many assignments per formula");
  truth->add_option("--guard", truth_guard, "brute-force arity guard override");
  truth->add_flag("--relax-subset-rule", truth_relax,
                  "only require the witness itself to preserve the output");
  truth->add_option("--seed", truth_seed, "sampling seed");

  // explain ------------------------------------------------------------
  auto* explain = app.add_subcommand("explain", "explain a single input");
  std::string explain_formula;
  int explain_width = 0;
  std::string explain_assignment;
  std::string explain_id = kExplainerBrex;
  ExplainerKnobs explain_knobs;
  std::uint64_t explain_seed = seed_default;
  std::string explain_out;
  explain->add_option("--formula", explain_formula, "formula text")->required();
  explain->add_option("--assignment", explain_assignment, "input bits, e.g. 0110")
      ->required();
  explain->add_option("--width", explain_width, "input width check");
  explain->add_option("--explainer", explain_id,
                      "brex | shapley_exact | shapley_sampled | random");
  explain->add_option("--blocks", explain_knobs.blocks, "partition width b");
  explain->add_option("--restarts", explain_knobs.restarts, "averaged restarts");
  explain->add_option("--budget", explain_knobs.budget, "oracle call budget");
  explain->add_option("--perms", explain_knobs.permutations,
                      "permutations for shapley_sampled");
  explain->add_option("--seed", explain_seed, "explainer seed");
  explain->add_option("--out", explain_out, "write JSON here instead of stdout");

  // bench --------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "run a benchmark and emit reports");
  std::string bench_preset = "paper-jsd";
  int bench_width = 12;
  std::string bench_arities = "3-10";
  std::string bench_family = "both";
  int bench_count = 10;
  bool bench_general = false;
  std::optional<std::uint64_t> bench_sample;
  bool bench_faithful = false;
  std::uint64_t bench_seed = seed_default;
  std::string bench_explainers = "brex,shapley_exact,shapley_sampled,random";
  std::string bench_out_dir = ".";
  ExplainerKnobs bench_knobs;
  int bench_guard = 15;
  bool bench_timing = false;
  bench->add_option("--preset", bench_preset, "paper-jsd | paper-topk");
  bench->add_option("--width", bench_width, "input width");
  bench->add_option("--arities", bench_arities, "arity list (paper-jsd)");
  bench->add_option("--family", bench_family, "monotonic | nonmonotonic | both");
  bench->add_option("--formulae-per-arity", bench_count, "formulae per (family, arity)");
  bench->add_flag("--general", bench_general, "allow repeated variables");
  bench->add_flag("--read-once", [](std::int64_t) {},
                  "one occurrence per variable (default)");
  bench->add_option("--sample", bench_sample, "assignments per formula");
  bench->add_flag("--paper-faithful", bench_faithful,
                  "enumerate all width positions, not only used ones");
  bench->add_option("--seed", bench_seed, "experiment seed");
  bench->add_option("--explainers", bench_explainers, "comma-separated explainer ids");
  bench->add_option("--out-dir", bench_out_dir, "output directory");
  bench->add_option("--blocks", bench_knobs.blocks, "b-rex partition width");
  bench->add_option("--restarts", bench_knobs.restarts, "b-rex restarts");
  bench->add_option("--budget", bench_knobs.budget, "b-rex oracle call budget");
  bench->add_option("--perms", bench_knobs.permutations,
                    "permutations for shapley_sampled");
  bench->add_option("--guard", bench_guard, "brute-force arity guard override");
  bench->add_flag("--timing", bench_timing, "record wall times (non-reproducible)");

  // report -------------------------------------------------------------
  auto* rep = app.add_subcommand("report", "rebuild reports from results.csv");
  std::string report_results = "results.csv";
  std::string report_out_dir = ".";
  rep->add_option("--results", report_results, "results.csv to read");
  rep->add_option("--out-dir", report_out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return run_gen(gen_out, gen_width, gen_arities, gen_family, gen_count,
                     gen_general, gen_seed);
    }
    if (truth->parsed()) {
      return run_truth(truth_corpus, truth_formula, truth_width, truth_out,
                       truth_sample, truth_guard, truth_relax, truth_seed);
    }
    if (explain->parsed()) {
      return run_explain(explain_formula, explain_width, explain_assignment,
                         explain_id, explain_knobs, explain_seed, explain_out);
    }
    if (bench->parsed()) {
      ExperimentConfig config;
      config.width = bench_width;
      config.arities = parse_arities(bench_arities);
      config.families = parse_families(bench_family);
      config.formulae_per_arity = bench_count;
      config.read_once = !bench_general;
      config.sample = bench_sample;
      config.full_width_assignments = bench_faithful;
      config.seed = bench_seed;
      config.explainers = build_explainers(bench_explainers, bench_knobs);
      config.brute.max_arity = bench_guard;
      config.measure_time = bench_timing;
      std::vector<BenchFormula> suite;
      if (bench_preset == "paper-topk") {
        suite = fixed_suite(config.width);
      } else if (bench_preset == "paper-jsd") {
        suite = random_suite(config);
      } else {
        throw CLI::ValidationError("--preset", "unknown preset " + bench_preset);
      }
      return run_bench_like(config, suite, bench_out_dir);
    }
    if (rep->parsed()) return run_report(report_results, report_out_dir);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
