#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smtuq/corpus.hpp"
#include "smtuq/evaluation.hpp"
#include "smtuq/fusion.hpp"
#include "smtuq/metrics.hpp"
#include "smtuq/solver.hpp"

namespace smtuq {

struct RunConfig {
  EstimationMethod method = EstimationMethod::Lidstone;
  double smoothing = 1.0;
  PiMode pi_mode = PiMode::Empirical;
  Polarity polarity = Polarity::Direct;
  std::vector<std::string> ensemble_subset = default_simple_subset();
  int folds = 5;
  std::uint64_t seed = 0;
  double validation_fraction = 0.3;
  SolverConfig solver;
  int jobs = 1;
};

// JSON object with optional keys: estimation_method, smoothing, pi_mode,
// polarity, ensemble_subset, folds, seed, validation_fraction,
// solver_command, solver_timeout_seconds, jobs.
RunConfig load_run_config(const std::string& path);

struct QuestionAnalysis {
  std::string question_id;
  std::string dataset;
  std::size_t n_samples = 0;
  std::size_t parsed = 0;
  std::size_t failed = 0;
  std::optional<MetricVector> metrics;
  std::optional<bool> label_ground_truth;  // SMT majority == ground truth
  std::optional<bool> label_smt_text;      // SMT majority == text majority
  std::string exclusion_reason;            // nonempty when excluded
  std::vector<std::string> parse_diagnostics;
};

struct AnalysisResult {
  std::vector<QuestionAnalysis> questions;  // sorted by question_id
  EvaluationReport report_ground_truth;
  EvaluationReport report_smt_text;

  std::string metrics_csv() const;
  std::string labels_csv() const;
  std::string exclusions_csv() const;
};

// Full per-question pipeline: parse, estimate, metric vectors, consistency
// labels, then every signal evaluated against both prediction tasks.
// Deterministic given corpus + config regardless of the job count.
AnalysisResult analyze(const std::vector<CorpusRecord>& corpus,
                       const RunConfig& config);

// Writes metrics.csv, labels.csv, exclusions.csv, evaluation CSV/JSON pairs
// and per-signal reliability tables under out_dir.
void write_reports(const AnalysisResult& result, const std::string& out_dir);

// Per-(question, temperature) metric rows; exact-value grouping.
std::string group_by_temperature_csv(const std::vector<CorpusRecord>& corpus,
                                     const RunConfig& config);

// Per-dataset confusion of the SMT majority (True as positive class)
// against ground truth.
std::string benchmark_csv(const std::vector<CorpusRecord>& corpus,
                          const RunConfig& config);

// Syntax-check summary: per-question parse counts plus diagnostics.
std::string parse_report_csv(const std::vector<CorpusRecord>& corpus);

// Runs the configured solver over every sample lacking a verdict.
void fill_solver_verdicts(std::vector<CorpusRecord>& corpus,
                          const RunConfig& config);

}  // namespace smtuq
