#pragma once

#include <string>
#include <vector>

#include "brex/bench.hpp"

namespace brex {

/// Shortest-round-trip decimal form of a double (17 significant digits).
std::string format_double(double v);

/// FNV-1a 64-bit hash of a file's bytes, as 16 hex digits.
std::string file_content_hash(const std::string& path);

// --- formula corpus -------------------------------------------------------
// Header line `width=<n>`, then one rendered formula per line.

struct Corpus {
  int width = 0;
  std::vector<Formula> formulas;
};

void write_corpus(const std::string& path, int width,
                  const std::vector<Formula>& formulas);
Corpus read_corpus(const std::string& path);

// --- ground-truth dump ----------------------------------------------------
// CSV: formula_id,assignment,var_index,responsibility_num,responsibility_den

struct TruthRow {
  std::string formula_id;
  std::string assignment;
  int var_index = 0;
  Rational responsibility;
};

void write_truth_csv(const std::string& path, const std::vector<TruthRow>& rows);

// --- benchmark results ----------------------------------------------------

void write_results_csv(const std::string& path,
                       const std::vector<ResultRecord>& records);
std::vector<ResultRecord> read_results_csv(const std::string& path);

void write_report_csv(const std::string& path, const ReportTable& table,
                      bool topk_metric);
ReportTable read_report_csv(const std::string& path, bool topk_metric);

/// CSV of (family, arity, explainer, mean, ci95) for the JSD aggregates.
void write_plot_data_csv(const std::string& path, const ReportTable& table);

/// Aligned per-family text tables (explainer rows, arity columns).
std::string render_text_tables(const ReportTable& table, bool topk_metric);

/// JSON manifest: configuration, seed and content hashes of the named files.
void write_manifest(const std::string& path, const ExperimentConfig& config,
                    const std::vector<std::string>& output_files);

/// JSON dump of one explanation run.
std::string explanation_json(const std::string& formula_id,
                             const Assignment& assignment,
                             const std::vector<double>& estimates,
                             std::int64_t oracle_calls,
                             const ExplainerSpec& spec, std::uint64_t seed);

}  // namespace brex
