#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace smtuq {

// Parallel lists: uncertainty score (higher = more uncertain) and whether
// the underlying prediction was correct.
struct ScoredInstances {
  std::vector<double> scores;
  std::vector<bool> correct;

  std::size_t size() const { return scores.size(); }
};

// Rank-based Mann-Whitney AUROC with average ranks for ties:
// P(score_incorrect > score_correct) + 1/2 P(equal). Throws SingleClass.
double auroc(const ScoredInstances& instances);

struct ReliabilityBin {
  std::int64_t count;
  double mean_confidence;
  double accuracy;
};

struct CalibrationResult {
  double ece;
  double brier;
  std::vector<ReliabilityBin> bins;
};

// Equal-width bins over [0,1], right-inclusive on the last bin.
CalibrationResult calibration(const std::vector<double>& confidences,
                              const std::vector<bool>& correct, int bins = 10);

struct RiskCoveragePoint {
  double coverage;
  double risk;
};

struct RiskCoverageResult {
  std::vector<RiskCoveragePoint> curve;
  double aurc;  // mean of the per-coverage risks
};

// Most-confident-first sweep, ties broken by stable input order.
RiskCoverageResult risk_coverage(const ScoredInstances& instances);

struct SelectivePrediction {
  double opt_threshold;  // abstention fraction from the grid
  double err_at_t;
  double rel_err_red;
};

// Grid of abstention fractions 0, 0.05, ..., 0.50; abstain on the
// ceil(f*n) most-uncertain instances; argmax of relative error reduction,
// ties resolved to the smallest fraction.
SelectivePrediction selective_prediction(const ScoredInstances& instances);

const std::vector<double>& abstention_grid();

struct ConfusionMatrix {
  std::int64_t tp = 0, tn = 0, fp = 0, fn = 0;
};

struct ConfusionStats {
  double accuracy, precision, recall, f1;
};

ConfusionStats confusion_stats(const ConfusionMatrix& m);

struct ErrorRatioAnalysis {
  std::optional<double> pearson_r;  // missing when either list is constant
  std::vector<std::int64_t> text_histogram;  // 10 bins over [0,1]
  std::vector<std::int64_t> smt_histogram;
};

ErrorRatioAnalysis error_ratio_analysis(
    const std::vector<std::pair<double, double>>& ratios);

// One evaluated signal; mirrors the report CSV columns.
struct SignalReport {
  std::string signal;
  double auroc;
  double ece;
  double brier;
  double aurc;
  double opt_threshold;
  double err_at_t;
  double rel_err_red;
};

struct EvaluationReport {
  std::vector<SignalReport> rows;

  std::string to_csv() const;   // 6 decimal places
  std::string to_json() const;  // same rows as a JSON array
};

// Confidence for calibration: 1 - min-max-normalized uncertainty over the
// evaluated set (constant scores map to confidence 0.5).
std::vector<double> confidence_from_scores(const std::vector<double>& scores);

// Full row for one signal against one label set.
SignalReport evaluate_signal(const std::string& name,
                             const ScoredInstances& instances);

}  // namespace smtuq
