#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smtuq/metrics.hpp"

namespace smtuq {

enum class Orientation { HigherMoreUncertain, LowerMoreUncertain };

// Per-metric direction flags; PCFG metrics are uncertainties, the
// self-consistency scores are confidences.
using OrientationTable = std::map<std::string, Orientation>;

const OrientationTable& default_orientation();

// Key subset for the simple ensemble; configurable.
const std::vector<std::string>& default_simple_subset();

enum class Normalization { MinMax, ZScore };

struct FeatureMatrix {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // oriented, normalized, imputed
  Normalization normalization = Normalization::MinMax;
  // Retained statistics, per column, in pre-orientation metric units.
  std::vector<double> column_median;  // imputation value
  std::vector<double> norm_offset;    // min (MinMax) or mean (ZScore)
  std::vector<double> norm_scale;     // range or stddev; 0 for constant columns

  std::size_t column_index(const std::string& name) const;  // throws UnknownColumn
};

// Builds the matrix from per-question metric vectors. Missing values are
// imputed with the column median before normalization; orientation flips
// MinMax values to 1-x and negates z-scores.
FeatureMatrix build_feature_matrix(const std::vector<MetricVector>& vectors,
                                   Normalization normalization,
                                   const OrientationTable& orientation = default_orientation(),
                                   const std::vector<std::string>& columns = {});

std::vector<double> ensemble_simple(const FeatureMatrix& matrix,
                                    const std::vector<std::string>& subset);

std::vector<double> ensemble_average(const FeatureMatrix& matrix);

// Column weights max(AUROC - 0.5, 0) on the validation rows, renormalized;
// an all-zero profile falls back to uniform weights.
std::vector<double> ensemble_weighted(const FeatureMatrix& matrix,
                                      const std::vector<bool>& labels,
                                      const std::vector<std::size_t>& validation_rows);

// Stratified validation split for ensemble_weighted (default 30%).
std::vector<std::size_t> validation_split(const std::vector<bool>& labels,
                                          double fraction, std::uint64_t seed);

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;
  int iterations = 0;
  double class_weight_error = 1.0;    // weight of label==true (error) rows
  double class_weight_correct = 1.0;
  std::vector<double> loss_trace;     // balanced cross-entropy per iteration

  double predict(const std::vector<double>& features) const;
  std::string export_text(const std::vector<std::string>& columns) const;
};

// Full-batch gradient descent on class-weight-balanced cross-entropy,
// zero-initialized, deterministic. labels: true = error.
LogisticModel train_logistic(const FeatureMatrix& matrix,
                             const std::vector<bool>& labels);

struct FoldAssignment {
  std::vector<int> fold_of_row;
  int folds;
  std::string to_csv() const;
};

FoldAssignment stratified_folds(const std::vector<bool>& labels, int folds,
                                std::uint64_t seed);

// Out-of-fold predicted error probabilities; each row is scored by the
// model trained without its fold.
std::vector<double> ensemble_ml(const FeatureMatrix& matrix,
                                const std::vector<bool>& labels, int folds,
                                std::uint64_t seed,
                                FoldAssignment* assignment_out = nullptr);

}  // namespace smtuq
