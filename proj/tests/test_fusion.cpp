#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "smtuq/errors.hpp"
#include "smtuq/evaluation.hpp"
#include "smtuq/fusion.hpp"

using namespace smtuq;
using doctest::Approx;

namespace {

// Metric vectors whose grammar_entropy separates the two classes and whose
// perplexity is noise.
std::vector<MetricVector> toy_vectors(std::size_t n, std::mt19937_64& rng,
                                      std::vector<bool>* labels) {
  std::vector<MetricVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    const bool error = i % 3 == 0;
    MetricVector mv;
    mv.grammar_entropy =
        (error ? 2.0 : 0.5) +
        std::uniform_real_distribution<double>(-0.2, 0.2)(rng);
    mv.perplexity = std::uniform_real_distribution<double>(1.0, 4.0)(rng);
    mv.spectral_radius = std::uniform_real_distribution<double>(0.0, 0.9)(rng);
    mv.self_consistency_smt =
        std::uniform_real_distribution<double>(0.4, 1.0)(rng);
    out.push_back(mv);
    if (labels) labels->push_back(error);
  }
  return out;
}

}  // namespace

TEST_CASE("orientation defaults") {
  const OrientationTable& table = default_orientation();
  CHECK(table.at("grammar_entropy") == Orientation::HigherMoreUncertain);
  CHECK(table.at("self_consistency_smt") == Orientation::LowerMoreUncertain);
  CHECK(table.at("self_consistency_text") == Orientation::LowerMoreUncertain);
  // every metric column has an orientation
  for (const std::string& name : metric_column_names())
    CHECK(table.count(name) == 1);
}

TEST_CASE("min-max matrix is in [0,1] with flipped confidence columns") {
  std::mt19937_64 rng(5);
  std::vector<bool> labels;
  const auto vectors = toy_vectors(30, rng, &labels);
  const FeatureMatrix m = build_feature_matrix(vectors, Normalization::MinMax);
  for (const auto& row : m.rows)
    for (double v : row) {
      CHECK(v >= -1e-12);
      CHECK(v <= 1.0 + 1e-12);
    }
  // flipping orientation reverses the ranking of a column
  OrientationTable flipped = default_orientation();
  flipped["grammar_entropy"] = Orientation::LowerMoreUncertain;
  const FeatureMatrix mf =
      build_feature_matrix(vectors, Normalization::MinMax, flipped);
  const std::size_t c = m.column_index("grammar_entropy");
  const std::size_t cf = mf.column_index("grammar_entropy");
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    CHECK(m.rows[r][c] + mf.rows[r][cf] == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("columns with no data anywhere are dropped, partial ones imputed") {
  std::mt19937_64 rng(6);
  auto vectors = toy_vectors(10, rng, nullptr);
  // token metrics were never set -> no token_* columns
  const FeatureMatrix m = build_feature_matrix(vectors, Normalization::MinMax);
  const std::set<std::string> cols(m.columns.begin(), m.columns.end());
  CHECK(cols.count("token_entropy") == 0);
  CHECK(cols.count("grammar_entropy") == 1);

  // knock out one value: the row still gets the column median
  vectors[3].self_consistency_smt.reset();
  const FeatureMatrix m2 = build_feature_matrix(vectors, Normalization::MinMax);
  const std::size_t c = m2.column_index("self_consistency_smt");
  CHECK(std::isfinite(m2.rows[3][c]));
}

TEST_CASE("simple and average ensembles are row means") {
  std::mt19937_64 rng(7);
  const auto vectors = toy_vectors(12, rng, nullptr);
  const FeatureMatrix m = build_feature_matrix(vectors, Normalization::MinMax);

  const auto avg = ensemble_average(m);
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    double sum = 0;
    for (double v : m.rows[r]) sum += v;
    CHECK(avg[r] == Approx(sum / static_cast<double>(m.columns.size()))
                        .epsilon(1e-12));
  }

  const auto one = ensemble_simple(m, {"grammar_entropy"});
  const std::size_t c = m.column_index("grammar_entropy");
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    CHECK(one[r] == Approx(m.rows[r][c]).epsilon(1e-12));

  CHECK_THROWS_AS(ensemble_simple(m, {"bogus"}), UnknownColumn);
}

TEST_CASE("weighted ensemble with uniform column AUROCs equals the average") {
  // two duplicated columns -> identical validation AUROCs -> uniform weights
  std::vector<MetricVector> vectors;
  std::vector<bool> labels;
  for (int i = 0; i < 20; ++i) {
    MetricVector mv;
    mv.grammar_entropy = i;
    mv.perplexity = i;  // same ranking as grammar_entropy
    vectors.push_back(mv);
    labels.push_back(i >= 14);
  }
  const FeatureMatrix m = build_feature_matrix(
      vectors, Normalization::MinMax, default_orientation(),
      {"grammar_entropy", "perplexity"});
  std::vector<std::size_t> validation;
  for (std::size_t i = 0; i < 20; ++i) validation.push_back(i);
  const auto weighted = ensemble_weighted(m, labels, validation);
  const auto average = ensemble_average(m);
  for (std::size_t r = 0; r < weighted.size(); ++r)
    CHECK(weighted[r] == Approx(average[r]).epsilon(1e-12));

  CHECK_THROWS_AS(
      ensemble_weighted(m, std::vector<bool>(20, true), validation),
      SingleClassValidation);
}

TEST_CASE("anti-informative columns get zero weight") {
  std::vector<MetricVector> vectors;
  std::vector<bool> labels;
  for (int i = 0; i < 30; ++i) {
    const bool error = i % 2 == 0;
    MetricVector mv;
    mv.grammar_entropy = error ? 1.0 + 0.01 * i : 0.01 * i;  // informative
    mv.perplexity = error ? -1.0 - 0.01 * i : -0.01 * i;     // anti-informative
    vectors.push_back(mv);
    labels.push_back(error);
  }
  const FeatureMatrix m = build_feature_matrix(
      vectors, Normalization::MinMax, default_orientation(),
      {"grammar_entropy", "perplexity"});
  std::vector<std::size_t> validation;
  for (std::size_t i = 0; i < 30; ++i) validation.push_back(i);
  const auto weighted = ensemble_weighted(m, labels, validation);
  // anti-informative weight clamps to 0 -> scores equal the informative column
  const std::size_t c = m.column_index("grammar_entropy");
  for (std::size_t r = 0; r < weighted.size(); ++r)
    CHECK(weighted[r] == Approx(m.rows[r][c]).epsilon(1e-12));
}

TEST_CASE("validation split is stratified and seeded") {
  std::vector<bool> labels;
  for (int i = 0; i < 40; ++i) labels.push_back(i < 10);
  const auto a = validation_split(labels, 0.3, 11);
  const auto b = validation_split(labels, 0.3, 11);
  CHECK(a == b);
  const auto c = validation_split(labels, 0.3, 12);
  CHECK(a != c);
  int pos = 0;
  for (std::size_t row : a) pos += labels[row] ? 1 : 0;
  CHECK(pos == 3);           // 30% of the 10 positive rows
  CHECK(a.size() == 12);     // 30% of 40
}

TEST_CASE("logistic training separates a separable toy set") {
  std::vector<MetricVector> vectors;
  std::vector<bool> labels;
  std::mt19937_64 rng(9);
  for (int i = 0; i < 4; ++i) {
    MetricVector mv;
    mv.grammar_entropy = i < 2 ? -1.0 - i : 1.0 + i;
    mv.perplexity = i < 2 ? -2.0 : 2.0;
    vectors.push_back(mv);
    labels.push_back(i >= 2);
  }
  const FeatureMatrix m = build_feature_matrix(
      vectors, Normalization::ZScore, default_orientation(),
      {"grammar_entropy", "perplexity"});
  const LogisticModel model = train_logistic(m, labels);
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    CHECK((model.predict(m.rows[r]) > 0.5) == labels[r]);

  // loss never increases
  for (std::size_t i = 1; i < model.loss_trace.size(); ++i)
    CHECK(model.loss_trace[i] <= model.loss_trace[i - 1] + 1e-12);

  CHECK_THROWS_AS(train_logistic(m, std::vector<bool>(4, false)), SingleClass);
}

TEST_CASE("constant features learn negligible weight") {
  std::vector<MetricVector> vectors;
  std::vector<bool> labels;
  for (int i = 0; i < 50; ++i) {
    MetricVector mv;
    mv.grammar_entropy = 1.0;  // constant
    vectors.push_back(mv);
    labels.push_back(i % 2 == 0);  // coin labels
  }
  const FeatureMatrix m = build_feature_matrix(
      vectors, Normalization::ZScore, default_orientation(),
      {"grammar_entropy"});
  const LogisticModel model = train_logistic(m, labels);
  CHECK(std::abs(model.weights[0]) <= 0.1);
}

TEST_CASE("model export lists features and bias") {
  std::vector<MetricVector> vectors(4);
  vectors[0].grammar_entropy = 0;
  vectors[1].grammar_entropy = 1;
  vectors[2].grammar_entropy = 2;
  vectors[3].grammar_entropy = 3;
  const FeatureMatrix m = build_feature_matrix(
      vectors, Normalization::ZScore, default_orientation(),
      {"grammar_entropy"});
  const LogisticModel model =
      train_logistic(m, {false, false, true, true});
  const std::string text = model.export_text(m.columns);
  CHECK(text.find("grammar_entropy ") != std::string::npos);
  CHECK(text.find("__bias__ ") != std::string::npos);
}

TEST_CASE("stratified folds cover all rows and balance classes") {
  std::vector<bool> labels;
  for (int i = 0; i < 25; ++i) labels.push_back(i < 10);
  const FoldAssignment fa = stratified_folds(labels, 5, 3);
  REQUIRE(fa.fold_of_row.size() == 25);
  std::vector<int> pos_per_fold(5, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    CHECK(fa.fold_of_row[i] >= 0);
    CHECK(fa.fold_of_row[i] < 5);
    if (labels[i]) ++pos_per_fold[static_cast<std::size_t>(fa.fold_of_row[i])];
  }
  for (int c : pos_per_fold) CHECK(c == 2);  // 10 positives over 5 folds
  CHECK(fa.to_csv().rfind("row,fold", 0) == 0);
}

TEST_CASE("out-of-fold scoring never sees its own row") {
  std::mt19937_64 rng(13);
  std::vector<bool> labels;
  const auto vectors = toy_vectors(60, rng, &labels);
  const FeatureMatrix m = build_feature_matrix(vectors, Normalization::ZScore);

  FoldAssignment assignment;
  const auto scores = ensemble_ml(m, labels, 5, 17, &assignment);
  REQUIRE(scores.size() == 60);
  for (double s : scores) {
    CHECK(s > 0.0);
    CHECK(s < 1.0);
  }
  // determinism
  CHECK(ensemble_ml(m, labels, 5, 17) == scores);
  // a perfectly predictive feature gives out-of-fold AUROC 1
  CHECK(auroc({scores, [&] {
                 std::vector<bool> correct;
                 for (bool err : labels) correct.push_back(!err);
                 return correct;
               }()}) > 0.9);
}

TEST_CASE("pure-noise features score near chance out of fold") {
  std::mt19937_64 rng(21);
  std::vector<MetricVector> vectors;
  std::vector<bool> labels;
  for (int i = 0; i < 200; ++i) {
    MetricVector mv;
    mv.grammar_entropy = std::normal_distribution<double>(0, 1)(rng);
    mv.perplexity = std::normal_distribution<double>(0, 1)(rng);
    vectors.push_back(mv);
    labels.push_back(rng() % 2 == 0);
  }
  const FeatureMatrix m = build_feature_matrix(
      vectors, Normalization::ZScore, default_orientation(),
      {"grammar_entropy", "perplexity"});
  const auto scores = ensemble_ml(m, labels, 5, 4);
  std::vector<bool> correct;
  for (bool err : labels) correct.push_back(!err);
  const double a = auroc({scores, correct});
  CHECK(a >= 0.35);
  CHECK(a <= 0.65);
}
