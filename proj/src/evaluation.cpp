#include "smtuq/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "smtuq/errors.hpp"

namespace smtuq {

double auroc(const ScoredInstances& instances) {
  const std::size_t n = instances.size();
  if (n != instances.correct.size())
    throw EmptyInput("score/label length mismatch");
  std::int64_t positives = 0;  // incorrect = positive for uncertainty ranking
  for (bool c : instances.correct) positives += c ? 0 : 1;
  const std::int64_t negatives = static_cast<std::int64_t>(n) - positives;
  if (positives == 0 || negatives == 0) throw SingleClass();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instances.scores[a] < instances.scores[b];
  });

  // Sum of positive-class average ranks (1-based, ties averaged).
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n &&
           instances.scores[order[j + 1]] == instances.scores[order[i]])
      ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k)
      if (!instances.correct[order[k]]) rank_sum += avg_rank;
    i = j + 1;
  }
  const double p = static_cast<double>(positives);
  const double q = static_cast<double>(negatives);
  return (rank_sum - p * (p + 1.0) / 2.0) / (p * q);
}

CalibrationResult calibration(const std::vector<double>& confidences,
                              const std::vector<bool>& correct, int bins) {
  if (confidences.empty() || confidences.size() != correct.size())
    throw EmptyInput("calibration requires nonempty parallel lists");
  CalibrationResult out{};
  std::vector<double> conf_sum(static_cast<std::size_t>(bins), 0.0);
  std::vector<double> acc_sum(static_cast<std::size_t>(bins), 0.0);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(bins), 0);

  const double width = 1.0 / static_cast<double>(bins);
  for (std::size_t i = 0; i < confidences.size(); ++i) {
    const double c = confidences[i];
    int b = static_cast<int>(std::floor(c / width));
    if (b >= bins) b = bins - 1;  // last bin right-inclusive
    if (b < 0) b = 0;
    ++counts[static_cast<std::size_t>(b)];
    conf_sum[static_cast<std::size_t>(b)] += c;
    acc_sum[static_cast<std::size_t>(b)] += correct[i] ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(confidences.size());
  for (int b = 0; b < bins; ++b) {
    const std::int64_t k = counts[static_cast<std::size_t>(b)];
    ReliabilityBin bin{k, 0.0, 0.0};
    if (k > 0) {
      bin.mean_confidence = conf_sum[static_cast<std::size_t>(b)] / static_cast<double>(k);
      bin.accuracy = acc_sum[static_cast<std::size_t>(b)] / static_cast<double>(k);
      out.ece += (static_cast<double>(k) / n) *
                 std::abs(bin.accuracy - bin.mean_confidence);
    }
    out.bins.push_back(bin);
  }
  for (std::size_t i = 0; i < confidences.size(); ++i) {
    const double d = confidences[i] - (correct[i] ? 1.0 : 0.0);
    out.brier += d * d;
  }
  out.brier /= n;
  return out;
}

namespace {

// Indices sorted ascending by uncertainty, stable on input order.
std::vector<std::size_t> confidence_order(const ScoredInstances& instances) {
  std::vector<std::size_t> order(instances.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instances.scores[a] < instances.scores[b];
  });
  return order;
}

}  // namespace

RiskCoverageResult risk_coverage(const ScoredInstances& instances) {
  const std::size_t n = instances.size();
  RiskCoverageResult out{};
  if (n == 0) return out;
  const std::vector<std::size_t> order = confidence_order(instances);
  double errors = 0.0;
  double risk_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    errors += instances.correct[order[k]] ? 0.0 : 1.0;
    const double risk = errors / static_cast<double>(k + 1);
    out.curve.push_back(
        {static_cast<double>(k + 1) / static_cast<double>(n), risk});
    risk_sum += risk;
  }
  out.aurc = risk_sum / static_cast<double>(n);
  return out;
}

const std::vector<double>& abstention_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i) g.push_back(static_cast<double>(i) * 0.05);
    return g;
  }();
  return grid;
}

SelectivePrediction selective_prediction(const ScoredInstances& instances) {
  const std::size_t n = instances.size();
  const std::vector<std::size_t> order = confidence_order(instances);

  std::int64_t base_errors = 0;
  for (bool c : instances.correct) base_errors += c ? 0 : 1;
  const double base_err = static_cast<double>(base_errors) / static_cast<double>(n);
  if (base_err == 0.0) return {0.0, 0.0, 0.0};

  // Suffix error counts: errors among the k most-confident instances.
  std::vector<std::int64_t> prefix_errors(n + 1, 0);
  for (std::size_t k = 0; k < n; ++k)
    prefix_errors[k + 1] =
        prefix_errors[k] + (instances.correct[order[k]] ? 0 : 1);

  SelectivePrediction best{0.0, base_err, 0.0};
  for (double f : abstention_grid()) {
    const auto abstain =
        static_cast<std::size_t>(std::ceil(f * static_cast<double>(n) - 1e-12));
    const std::size_t kept = n - std::min(abstain, n);
    if (kept == 0) continue;
    const double err = static_cast<double>(prefix_errors[kept]) /
                       static_cast<double>(kept);
    const double red = (base_err - err) / base_err;
    if (red > best.rel_err_red + 1e-12) best = {f, err, red};
  }
  return best;
}

ConfusionStats confusion_stats(const ConfusionMatrix& m) {
  const std::int64_t total = m.tp + m.tn + m.fp + m.fn;
  if (total <= 0) throw EmptyMatrix("empty confusion matrix");
  ConfusionStats out{};
  out.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(total);
  out.precision = m.tp + m.fp > 0
                      ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp)
                      : 0.0;
  out.recall = m.tp + m.fn > 0
                   ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn)
                   : 0.0;
  out.f1 = out.precision + out.recall > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

ErrorRatioAnalysis error_ratio_analysis(
    const std::vector<std::pair<double, double>>& ratios) {
  if (ratios.size() < 3)
    throw InsufficientData("error ratio analysis requires >= 3 questions");
  ErrorRatioAnalysis out;
  out.text_histogram.assign(10, 0);
  out.smt_histogram.assign(10, 0);
  auto bin_of = [](double x) {
    int b = static_cast<int>(std::floor(x * 10.0));
    return static_cast<std::size_t>(std::clamp(b, 0, 9));
  };
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : ratios) {
    ++out.text_histogram[bin_of(x)];
    ++out.smt_histogram[bin_of(y)];
    mx += x;
    my += y;
  }
  const double n = static_cast<double>(ratios.size());
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& [x, y] : ratios) {
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
    sxy += (x - mx) * (y - my);
  }
  if (sxx > 0.0 && syy > 0.0) out.pearson_r = sxy / std::sqrt(sxx * syy);
  return out;
}

std::vector<double> confidence_from_scores(const std::vector<double>& scores) {
  double lo = scores.empty() ? 0.0 : scores[0];
  double hi = lo;
  for (double s : scores) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  std::vector<double> out;
  out.reserve(scores.size());
  for (double s : scores)
    out.push_back(hi > lo ? 1.0 - (s - lo) / (hi - lo) : 0.5);
  return out;
}

SignalReport evaluate_signal(const std::string& name,
                             const ScoredInstances& instances) {
  SignalReport row{};
  row.signal = name;
  row.auroc = auroc(instances);
  const CalibrationResult cal =
      calibration(confidence_from_scores(instances.scores), instances.correct);
  row.ece = cal.ece;
  row.brier = cal.brier;
  row.aurc = risk_coverage(instances).aurc;
  const SelectivePrediction sp = selective_prediction(instances);
  row.opt_threshold = sp.opt_threshold;
  row.err_at_t = sp.err_at_t;
  row.rel_err_red = sp.rel_err_red;
  return row;
}

namespace {

std::string fmt6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

}  // namespace

std::string EvaluationReport::to_csv() const {
  std::ostringstream out;
  out << "signal,auroc,ece,brier,aurc,opt_t,err_at_t,rel_err_red\n";
  for (const SignalReport& r : rows) {
    out << r.signal << ',' << fmt6(r.auroc) << ',' << fmt6(r.ece) << ','
        << fmt6(r.brier) << ',' << fmt6(r.aurc) << ',' << fmt6(r.opt_threshold)
        << ',' << fmt6(r.err_at_t) << ',' << fmt6(r.rel_err_red) << '\n';
  }
  return out.str();
}

std::string EvaluationReport::to_json() const {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SignalReport& r = rows[i];
    out << "  {\"signal\": \"" << r.signal << "\", \"auroc\": " << fmt6(r.auroc)
        << ", \"ece\": " << fmt6(r.ece) << ", \"brier\": " << fmt6(r.brier)
        << ", \"aurc\": " << fmt6(r.aurc)
        << ", \"opt_t\": " << fmt6(r.opt_threshold)
        << ", \"err_at_t\": " << fmt6(r.err_at_t)
        << ", \"rel_err_red\": " << fmt6(r.rel_err_red) << "}"
        << (i + 1 < rows.size() ? "," : "") << '\n';
  }
  out << "]\n";
  return out.str();
}

}  // namespace smtuq
