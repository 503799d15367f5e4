#include "smtuq/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

#include "smtuq/errors.hpp"
#include "smtuq/evaluation.hpp"

namespace smtuq {

const OrientationTable& default_orientation() {
  static const OrientationTable table = [] {
    OrientationTable t;
    for (const std::string& name : metric_column_names())
      t[name] = Orientation::HigherMoreUncertain;
    t["self_consistency_text"] = Orientation::LowerMoreUncertain;
    t["self_consistency_smt"] = Orientation::LowerMoreUncertain;
    return t;
  }();
  return table;
}

const std::vector<std::string>& default_simple_subset() {
  static const std::vector<std::string> subset = {
      "grammar_entropy", "perplexity", "spectral_radius", "self_consistency_smt"};
  return subset;
}

std::size_t FeatureMatrix::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw UnknownColumn(name);
}

FeatureMatrix build_feature_matrix(const std::vector<MetricVector>& vectors,
                                   Normalization normalization,
                                   const OrientationTable& orientation,
                                   const std::vector<std::string>& columns) {
  const std::vector<std::string>& wanted =
      columns.empty() ? metric_column_names() : columns;
  const std::size_t n = vectors.size();

  FeatureMatrix out;
  out.normalization = normalization;

  for (const std::string& name : wanted) {
    std::vector<std::optional<double>> raw(n);
    std::vector<double> present;
    for (std::size_t r = 0; r < n; ++r) {
      raw[r] = metric_value(vectors[r], name);
      if (raw[r]) {
        if (!std::isfinite(*raw[r])) throw NonFiniteFeature(name);
        present.push_back(*raw[r]);
      }
    }
    if (present.empty()) continue;  // column absent everywhere; drop it

    std::sort(present.begin(), present.end());
    const std::size_t k = present.size();
    const double median = k % 2 == 1
                              ? present[k / 2]
                              : 0.5 * (present[k / 2 - 1] + present[k / 2]);

    std::vector<double> imputed(n);
    for (std::size_t r = 0; r < n; ++r) imputed[r] = raw[r].value_or(median);

    double offset = 0.0, scale = 0.0;
    if (normalization == Normalization::MinMax) {
      const auto [lo, hi] = std::minmax_element(imputed.begin(), imputed.end());
      offset = *lo;
      scale = *hi - *lo;
    } else {
      double mean = 0.0;
      for (double x : imputed) mean += x;
      mean /= static_cast<double>(n);
      double var = 0.0;
      for (double x : imputed) var += (x - mean) * (x - mean);
      var /= static_cast<double>(n);
      offset = mean;
      scale = std::sqrt(var);
    }

    auto it = orientation.find(name);
    const bool flip =
        it != orientation.end() && it->second == Orientation::LowerMoreUncertain;

    std::vector<double> values(n);
    for (std::size_t r = 0; r < n; ++r) {
      double v;
      if (normalization == Normalization::MinMax) {
        v = scale > 0.0 ? (imputed[r] - offset) / scale : 0.5;
        if (flip) v = 1.0 - v;
      } else {
        v = scale > 0.0 ? (imputed[r] - offset) / scale : 0.0;
        if (flip) v = -v;
      }
      values[r] = v;
    }

    out.columns.push_back(name);
    out.column_median.push_back(median);
    out.norm_offset.push_back(offset);
    out.norm_scale.push_back(scale);
    if (out.rows.empty()) out.rows.resize(n);
    for (std::size_t r = 0; r < n; ++r) out.rows[r].push_back(values[r]);
  }
  return out;
}

std::vector<double> ensemble_simple(const FeatureMatrix& matrix,
                                    const std::vector<std::string>& subset) {
  if (subset.empty()) throw UnknownColumn("(empty subset)");
  std::vector<std::size_t> cols;
  for (const std::string& name : subset) cols.push_back(matrix.column_index(name));
  std::vector<double> scores(matrix.rows.size(), 0.0);
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    double acc = 0.0;
    for (std::size_t c : cols) acc += matrix.rows[r][c];
    scores[r] = acc / static_cast<double>(cols.size());
  }
  return scores;
}

std::vector<double> ensemble_average(const FeatureMatrix& matrix) {
  if (matrix.columns.empty()) throw EmptyMatrix("feature matrix has no columns");
  return ensemble_simple(matrix, matrix.columns);
}

std::vector<double> ensemble_weighted(const FeatureMatrix& matrix,
                                      const std::vector<bool>& labels,
                                      const std::vector<std::size_t>& validation_rows) {
  bool has_error = false, has_correct = false;
  for (std::size_t r : validation_rows) (labels[r] ? has_error : has_correct) = true;
  if (!has_error || !has_correct) throw SingleClassValidation();

  std::vector<double> weights(matrix.columns.size(), 0.0);
  double weight_total = 0.0;
  for (std::size_t c = 0; c < matrix.columns.size(); ++c) {
    ScoredInstances val;
    for (std::size_t r : validation_rows) {
      val.scores.push_back(matrix.rows[r][c]);
      val.correct.push_back(!labels[r]);
    }
    weights[c] = std::max(auroc(val) - 0.5, 0.0);
    weight_total += weights[c];
  }
  if (weight_total == 0.0)
    weights.assign(matrix.columns.size(),
                   1.0 / static_cast<double>(matrix.columns.size()));
  else
    for (double& w : weights) w /= weight_total;

  std::vector<double> scores(matrix.rows.size(), 0.0);
  for (std::size_t r = 0; r < matrix.rows.size(); ++r)
    for (std::size_t c = 0; c < matrix.columns.size(); ++c)
      scores[r] += weights[c] * matrix.rows[r][c];
  return scores;
}

std::vector<std::size_t> validation_split(const std::vector<bool>& labels,
                                          double fraction, std::uint64_t seed) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t r = 0; r < labels.size(); ++r)
    (labels[r] ? pos : neg).push_back(r);
  std::mt19937_64 rng(seed);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);
  std::vector<std::size_t> out;
  const auto take = [&](std::vector<std::size_t>& v) {
    const auto k = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(v.size()) - 1e-12));
    out.insert(out.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
  };
  take(pos);
  take(neg);
  std::sort(out.begin(), out.end());
  return out;
}

double LogisticModel::predict(const std::vector<double>& features) const {
  double z = bias;
  for (std::size_t i = 0; i < weights.size(); ++i) z += weights[i] * features[i];
  return 1.0 / (1.0 + std::exp(-z));
}

std::string LogisticModel::export_text(const std::vector<std::string>& columns) const {
  std::ostringstream out;
  char buf[48];
  for (std::size_t i = 0; i < weights.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g", weights[i]);
    out << columns[i] << ' ' << buf << '\n';
  }
  std::snprintf(buf, sizeof(buf), "%.12g", bias);
  out << "__bias__ " << buf << '\n';
  return out.str();
}

namespace {

struct TrainView {
  const FeatureMatrix* matrix;
  const std::vector<bool>* labels;
  std::vector<std::size_t> rows;
};

LogisticModel train_on_rows(const TrainView& view) {
  const FeatureMatrix& m = *view.matrix;
  const std::size_t d = m.columns.size();
  const std::size_t n = view.rows.size();
  if (n < 2) throw SingleClass();

  std::int64_t errors = 0;
  for (std::size_t r : view.rows) errors += (*view.labels)[r] ? 1 : 0;
  if (errors == 0 || errors == static_cast<std::int64_t>(n)) throw SingleClass();

  LogisticModel model;
  model.weights.assign(d, 0.0);
  model.class_weight_error =
      static_cast<double>(n) / (2.0 * static_cast<double>(errors));
  model.class_weight_correct =
      static_cast<double>(n) /
      (2.0 * static_cast<double>(static_cast<std::int64_t>(n) - errors));

  for (std::size_t r : view.rows)
    for (double x : m.rows[r])
      if (!std::isfinite(x)) throw NonFiniteFeature("(matrix)");

  // Fixed step 1/L with L an upper bound on the Hessian norm, so the loss
  // is nonincreasing without a line search.
  double sq = static_cast<double>(n);  // bias column
  for (std::size_t r : view.rows)
    for (double x : m.rows[r]) sq += x * x;
  const double max_w = std::max(model.class_weight_error, model.class_weight_correct);
  const double lipschitz = 0.25 * max_w * sq / static_cast<double>(n);
  const double step = 1.0 / std::max(lipschitz, 1e-12);

  std::vector<double> grad(d + 1);
  const int max_iters = 10000;
  for (int iter = 0; iter < max_iters; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0.0;
    for (std::size_t r : view.rows) {
      const std::vector<double>& x = m.rows[r];
      const bool y = (*view.labels)[r];
      const double p = model.predict(x);
      const double w = y ? model.class_weight_error : model.class_weight_correct;
      const double eps = 1e-15;
      loss -= w * (y ? std::log(std::max(p, eps))
                     : std::log(std::max(1.0 - p, eps)));
      const double residual = w * (p - (y ? 1.0 : 0.0));
      for (std::size_t j = 0; j < d; ++j) grad[j] += residual * x[j];
      grad[d] += residual;
    }
    model.loss_trace.push_back(loss / static_cast<double>(n));
    double norm = 0.0;
    for (double& g : grad) {
      g /= static_cast<double>(n);
      norm += g * g;
    }
    norm = std::sqrt(norm);
    model.iterations = iter + 1;
    if (norm <= 1e-8) break;
    for (std::size_t j = 0; j < d; ++j) model.weights[j] -= step * grad[j];
    model.bias -= step * grad[d];
  }
  return model;
}

}  // namespace

LogisticModel train_logistic(const FeatureMatrix& matrix,
                             const std::vector<bool>& labels) {
  TrainView view{&matrix, &labels, {}};
  view.rows.resize(matrix.rows.size());
  std::iota(view.rows.begin(), view.rows.end(), 0);
  return train_on_rows(view);
}

std::string FoldAssignment::to_csv() const {
  std::ostringstream out;
  out << "row,fold\n";
  for (std::size_t r = 0; r < fold_of_row.size(); ++r)
    out << r << ',' << fold_of_row[r] << '\n';
  return out.str();
}

FoldAssignment stratified_folds(const std::vector<bool>& labels, int folds,
                                std::uint64_t seed) {
  FoldAssignment out;
  out.folds = folds;
  out.fold_of_row.assign(labels.size(), 0);
  std::vector<std::size_t> pos, neg;
  for (std::size_t r = 0; r < labels.size(); ++r)
    (labels[r] ? pos : neg).push_back(r);
  std::mt19937_64 rng(seed);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);
  int next = 0;
  for (std::size_t r : pos) out.fold_of_row[r] = next++ % folds;
  for (std::size_t r : neg) out.fold_of_row[r] = next++ % folds;
  return out;
}

std::vector<double> ensemble_ml(const FeatureMatrix& matrix,
                                const std::vector<bool>& labels, int folds,
                                std::uint64_t seed,
                                FoldAssignment* assignment_out) {
  const FoldAssignment assignment = stratified_folds(labels, folds, seed);
  std::vector<double> scores(matrix.rows.size(), 0.0);
  for (int f = 0; f < folds; ++f) {
    TrainView view{&matrix, &labels, {}};
    std::vector<std::size_t> heldout;
    for (std::size_t r = 0; r < matrix.rows.size(); ++r)
      (assignment.fold_of_row[r] == f ? heldout : view.rows).push_back(r);
    if (heldout.empty()) continue;
    bool has_error = false, has_correct = false;
    for (std::size_t r : view.rows) (labels[r] ? has_error : has_correct) = true;
    if (!has_error || !has_correct) throw FoldDegenerate(f);
    const LogisticModel model = train_on_rows(view);
    for (std::size_t r : heldout) scores[r] = model.predict(matrix.rows[r]);
  }
  if (assignment_out) *assignment_out = assignment;
  return scores;
}

}  // namespace smtuq
