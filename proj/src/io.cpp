#include "brex/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace brex {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string file_content_hash(const std::string& path) {
  std::ifstream in = open_in(path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char c = 0;
  while (in.get(c)) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_corpus(const std::string& path, int width,
                  const std::vector<Formula>& formulas) {
  std::ofstream out = open_out(path);
  out << "width=" << width << "\n";
  for (const Formula& f : formulas) {
    if (f.max_var_index() >= width) {
      throw std::invalid_argument("write_corpus: formula wider than header width");
    }
    out << render(f) << "\n";
  }
}

Corpus read_corpus(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("width=", 0) != 0) {
    throw std::runtime_error("corpus: missing width header");
  }
  Corpus corpus;
  corpus.width = std::stoi(line.substr(6));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    corpus.formulas.push_back(parse_formula(line, corpus.width));
  }
  return corpus;
}

void write_truth_csv(const std::string& path, const std::vector<TruthRow>& rows) {
  std::ofstream out = open_out(path);
  out << "formula_id,assignment,var_index,responsibility_num,responsibility_den\n";
  for (const TruthRow& row : rows) {
    out << row.formula_id << ',' << row.assignment << ',' << row.var_index << ','
        << row.responsibility.num() << ',' << row.responsibility.den() << "\n";
  }
}

namespace {

constexpr const char* kResultsHeader =
    "formula_id,family,arity,assignment,explainer_id,jsd,topk_perfect,"
    "oracle_calls,wall_time_us";

}  // namespace

void write_results_csv(const std::string& path,
                       const std::vector<ResultRecord>& records) {
  std::ofstream out = open_out(path);
  out << kResultsHeader << "\n";
  for (const ResultRecord& r : records) {
    out << r.formula_id << ',' << family_token(r.family) << ',' << r.arity << ','
        << r.assignment << ',' << r.explainer_id << ','
        << format_double(r.jsd_value) << ',' << (r.topk_perfect ? 1 : 0) << ','
        << r.oracle_calls << ',' << r.wall_time_us << "\n";
  }
}

std::vector<ResultRecord> read_results_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) {
    throw std::runtime_error("results csv: unexpected header");
  }
  std::vector<ResultRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 9) throw std::runtime_error("results csv: malformed row");
    ResultRecord r;
    r.formula_id = f[0];
    r.family = family_from_token(f[1]);
    r.arity = std::stoi(f[2]);
    r.assignment = f[3];
    r.explainer_id = f[4];
    r.jsd_value = std::stod(f[5]);
    r.topk_perfect = f[6] == "1";
    r.oracle_calls = std::stoll(f[7]);
    r.wall_time_us = std::stoll(f[8]);
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

std::string family_field(const ReportRow& row) {
  return row.family.has_value() ? family_token(*row.family) : "all";
}

std::string arity_field(const ReportRow& row) {
  return row.arity.has_value() ? std::to_string(*row.arity) : "all";
}

}  // namespace

void write_report_csv(const std::string& path, const ReportTable& table,
                      bool topk_metric) {
  std::ofstream out = open_out(path);
  out << "explainer,family,arity,mean,std,ci95,n\n";
  for (const ReportRow& row : table.rows) {
    const AggregateStat& s = topk_metric ? row.topk : row.jsd;
    out << row.explainer_id << ',' << family_field(row) << ',' << arity_field(row)
        << ',' << format_double(s.mean) << ',' << format_double(s.std_dev) << ','
        << format_double(s.ci95_half_width) << ',' << s.n << "\n";
  }
}

ReportTable read_report_csv(const std::string& path, bool topk_metric) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "explainer,family,arity,mean,std,ci95,n") {
    throw std::runtime_error("report csv: unexpected header");
  }
  ReportTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 7) throw std::runtime_error("report csv: malformed row");
    ReportRow row;
    row.explainer_id = f[0];
    if (f[1] != "all") row.family = family_from_token(f[1]);
    if (f[2] != "all") row.arity = std::stoi(f[2]);
    AggregateStat s;
    s.mean = std::stod(f[3]);
    s.std_dev = std::stod(f[4]);
    s.ci95_half_width = std::stod(f[5]);
    s.n = std::stoi(f[6]);
    (topk_metric ? row.topk : row.jsd) = s;
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_plot_data_csv(const std::string& path, const ReportTable& table) {
  std::ofstream out = open_out(path);
  out << "family,arity,explainer,mean,ci95\n";
  for (const ReportRow& row : table.rows) {
    out << family_field(row) << ',' << arity_field(row) << ',' << row.explainer_id
        << ',' << format_double(row.jsd.mean) << ','
        << format_double(row.jsd.ci95_half_width) << "\n";
  }
}

std::string render_text_tables(const ReportTable& table, bool topk_metric) {
  std::vector<int> arities;
  std::vector<std::string> explainers;
  std::vector<OperatorFamily> families;
  for (const ReportRow& row : table.rows) {
    if (row.arity.has_value() &&
        std::find(arities.begin(), arities.end(), *row.arity) == arities.end()) {
      arities.push_back(*row.arity);
    }
    if (std::find(explainers.begin(), explainers.end(), row.explainer_id) ==
        explainers.end()) {
      explainers.push_back(row.explainer_id);
    }
    if (row.family.has_value() &&
        std::find(families.begin(), families.end(), *row.family) == families.end()) {
      families.push_back(*row.family);
    }
  }
  std::sort(arities.begin(), arities.end());

  const auto cell = [&](const std::string& explainer, OperatorFamily family,
                        int arity) -> std::string {
    for (const ReportRow& row : table.rows) {
      if (row.explainer_id == explainer && row.family == family &&
          row.arity == arity) {
        const AggregateStat& s = topk_metric ? row.topk : row.jsd;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f±%.3f", s.mean, s.ci95_half_width);
        return buf;
      }
    }
    return "-";
  };

  std::ostringstream out;
  const char* metric = topk_metric ? "top-k accuracy" : "JSD from ground truth";
  for (OperatorFamily family : families) {
    out << metric << ", " << family_token(family) << " formulae\n";
    out << "  explainer        ";
    for (int arity : arities) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " %13d", arity);
      out << buf;
    }
    out << "\n";
    for (const std::string& explainer : explainers) {
      char name[32];
      std::snprintf(name, sizeof name, "  %-17s", explainer.c_str());
      out << name;
      for (int arity : arities) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " %13s", cell(explainer, family, arity).c_str());
        out << buf;
      }
      out << "\n";
    }
    out << "\n";
  }
  return out.str();
}

namespace {

nlohmann::json config_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["width"] = config.width;
  j["arities"] = config.arities;
  j["formulae_per_arity"] = config.formulae_per_arity;
  nlohmann::json families = nlohmann::json::array();
  for (OperatorFamily f : config.families) families.push_back(family_token(f));
  j["families"] = families;
  j["read_once"] = config.read_once;
  j["negate_prob"] = config.gen_params.negate_prob;
  j["duplicate_prob"] = config.gen_params.duplicate_prob;
  if (config.sample.has_value()) {
    j["sample"] = *config.sample;
  } else {
    j["sample"] = nullptr;
  }
  j["full_width_assignments"] = config.full_width_assignments;
  j["seed"] = config.seed;
  j["brute_max_arity"] = config.brute.max_arity;
  j["brute_subset_condition"] = config.brute.subset_condition;
  nlohmann::json explainers = nlohmann::json::array();
  for (const ExplainerSpec& spec : config.explainers) {
    nlohmann::json e;
    e["id"] = spec.id;
    if (spec.id == kExplainerBrex) {
      e["num_blocks"] = spec.brex.num_blocks;
      e["restarts"] = spec.brex.restarts;
      e["min_block_to_recurse"] = spec.brex.min_block_to_recurse;
      if (spec.brex.call_budget.has_value()) {
        e["call_budget"] = *spec.brex.call_budget;
      }
    }
    if (spec.id == kExplainerShapleySampled) e["permutations"] = spec.permutations;
    if (spec.id == kExplainerShapleyExact || spec.id == kExplainerShapleySampled) {
      e["payoff"] = spec.payoff == PayoffKind::LabelPreservation
                        ? "label_preservation"
                        : "completion_agreement";
    }
    explainers.push_back(std::move(e));
  }
  j["explainers"] = explainers;
  return j;
}

}  // namespace

void write_manifest(const std::string& path, const ExperimentConfig& config,
                    const std::vector<std::string>& output_files) {
  nlohmann::json j;
  j["config"] = config_json(config);
  j["seed"] = config.seed;
  nlohmann::json files = nlohmann::json::object();
  for (const std::string& file : output_files) {
    const std::size_t slash = file.find_last_of('/');
    const std::string name = slash == std::string::npos ? file : file.substr(slash + 1);
    files[name] = {{"fnv1a64", file_content_hash(file)}};
  }
  j["files"] = files;
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

std::string explanation_json(const std::string& formula_id,
                             const Assignment& assignment,
                             const std::vector<double>& estimates,
                             std::int64_t oracle_calls,
                             const ExplainerSpec& spec, std::uint64_t seed) {
  nlohmann::json j;
  j["formula_id"] = formula_id;
  j["assignment"] = assignment.to_string();
  j["estimates"] = estimates;
  j["oracle_calls"] = oracle_calls;
  nlohmann::json cfg;
  cfg["explainer"] = spec.id;
  if (spec.id == kExplainerBrex) {
    cfg["num_blocks"] = spec.brex.num_blocks;
    cfg["restarts"] = spec.brex.restarts;
    cfg["min_block_to_recurse"] = spec.brex.min_block_to_recurse;
    if (spec.brex.call_budget.has_value()) cfg["call_budget"] = *spec.brex.call_budget;
  }
  if (spec.id == kExplainerShapleySampled) cfg["permutations"] = spec.permutations;
  j["config"] = cfg;
  j["seed"] = seed;
  return j.dump(2);
}

}  // namespace brex
