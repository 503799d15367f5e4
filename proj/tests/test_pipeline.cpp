#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "smtuq/corpus.hpp"
#include "smtuq/errors.hpp"
#include "smtuq/pipeline.hpp"

using namespace smtuq;
using doctest::Approx;

namespace {

CorpusRecord make_question(const std::string& id,
                           const std::vector<std::string>& programs,
                           AnswerLabel truth, SolverVerdict verdict) {
  CorpusRecord r;
  r.question_id = id;
  r.dataset = "test";
  r.ground_truth = truth;
  int n = 0;
  for (const std::string& p : programs) {
    SampleRecord s;
    s.sample_id = "s" + std::to_string(n++);
    s.smt_program = p;
    s.solver_verdict = verdict;
    s.text_answer = map_verdict(verdict, Polarity::Direct);
    r.samples.push_back(std::move(s));
  }
  return r;
}

}  // namespace

TEST_CASE("identical ensembles collapse to the single-program vector") {
  std::vector<CorpusRecord> corpus;
  for (int q = 0; q < 3; ++q)
    corpus.push_back(make_question(
        "q" + std::to_string(q),
        std::vector<std::string>(4, "(assert p)(check-sat)"),
        AnswerLabel::True, SolverVerdict::Sat));
  corpus.push_back(make_question(
      "qsolo", std::vector<std::string>(1, "(assert p)(check-sat)"),
      AnswerLabel::True, SolverVerdict::Sat));
  RunConfig config;
  config.method = EstimationMethod::MLE;
  const AnalysisResult result = analyze(corpus, config);
  REQUIRE(result.questions.size() == 4);
  const double solo = result.questions.back().metrics->grammar_entropy;
  for (const QuestionAnalysis& qa : result.questions) {
    REQUIRE(qa.metrics.has_value());
    CHECK(qa.metrics->grammar_entropy == Approx(solo).epsilon(1e-12));
    CHECK(qa.label_ground_truth == true);
  }
  const std::string csv = result.metrics_csv();
  CHECK(csv.find("question_id,grammar_entropy") == 0);
}

TEST_CASE("constructed corpus: high-entropy questions are the errors") {
  const std::vector<std::string> uniform(6, "(assert p)(check-sat)");
  const std::vector<std::string> varied = {
      "(assert p)(check-sat)",
      "(declare-const x Int)(assert (> x 1))(check-sat)",
      "(assert (let ((t 1)) (= t 1)))(get-model)",
      "(assert (forall ((n Int)) (>= n n)))(check-sat)",
      "(set-logic ALL)(assert (or p q r))(check-sat)(exit)",
      "(declare-fun f (Int Int) Int)(assert (= (f 1 2) 3))(check-sat)",
  };
  std::vector<CorpusRecord> corpus;
  for (int q = 0; q < 12; ++q) {
    const bool error = q % 2 == 0;
    // errors: verdict disagrees with ground truth AND programs vary
    corpus.push_back(make_question("q" + std::to_string(q),
                                   error ? varied : uniform, AnswerLabel::True,
                                   error ? SolverVerdict::Unsat
                                         : SolverVerdict::Sat));
  }
  const AnalysisResult result = analyze(corpus, RunConfig{});
  bool found = false;
  for (const SignalReport& row : result.report_ground_truth.rows)
    if (row.signal == "grammar_entropy") {
      found = true;
      CHECK(row.auroc == Approx(1.0).epsilon(1e-9));
    }
  CHECK(found);
}

TEST_CASE("unparseable-only questions land in the exclusions report") {
  std::vector<CorpusRecord> corpus;
  corpus.push_back(make_question("bad", {"((", "(assert"},
                                 AnswerLabel::True, SolverVerdict::Sat));
  for (int q = 0; q < 4; ++q)
    corpus.push_back(make_question(
        "q" + std::to_string(q),
        std::vector<std::string>(3, "(assert p)(check-sat)"),
        AnswerLabel::True, q % 2 ? SolverVerdict::Sat : SolverVerdict::Unsat));
  const AnalysisResult result = analyze(corpus, RunConfig{});
  CHECK(result.questions.size() == 5);
  CHECK(!result.questions[0].metrics.has_value());  // "bad" sorts first
  CHECK(!result.questions[0].exclusion_reason.empty());
  CHECK(result.exclusions_csv().find("bad") != std::string::npos);
  for (std::size_t i = 1; i < result.questions.size(); ++i)
    CHECK(result.questions[i].metrics.has_value());
}

TEST_CASE("questions are sorted by id regardless of input order") {
  std::vector<CorpusRecord> corpus;
  for (const char* id : {"zz", "aa", "mm"})
    corpus.push_back(make_question(
        id, std::vector<std::string>(2, "(check-sat)"), AnswerLabel::True,
        SolverVerdict::Sat));
  const AnalysisResult result = analyze(corpus, RunConfig{});
  CHECK(result.questions[0].question_id == "aa");
  CHECK(result.questions[1].question_id == "mm");
  CHECK(result.questions[2].question_id == "zz");
}

TEST_CASE("temperature grouping requires temperatures") {
  std::vector<CorpusRecord> corpus;
  corpus.push_back(make_question("q0", {"(check-sat)", "(exit)"},
                                 AnswerLabel::True, SolverVerdict::Sat));
  CHECK_THROWS_AS(group_by_temperature_csv(corpus, RunConfig{}),
                  MissingTemperatures);

  corpus[0].samples[0].temperature = 0.5;
  corpus[0].samples[1].temperature = 1.0;
  const std::string csv = group_by_temperature_csv(corpus, RunConfig{});
  CHECK(csv.find("question_id,temperature,n_samples") == 0);
  CHECK(csv.find("q0,0.5,1") != std::string::npos);
  CHECK(csv.find("q0,1,1") != std::string::npos);
}

TEST_CASE("benchmark counts majority predictions per dataset") {
  std::vector<CorpusRecord> corpus;
  corpus.push_back(make_question("q0", {"(check-sat)", "(check-sat)"},
                                 AnswerLabel::True, SolverVerdict::Sat));   // tp
  corpus.push_back(make_question("q1", {"(check-sat)"},
                                 AnswerLabel::False, SolverVerdict::Unsat)); // tn
  corpus.push_back(make_question("q2", {"(check-sat)"},
                                 AnswerLabel::False, SolverVerdict::Sat));   // fp
  corpus.push_back(make_question("q3", {"(check-sat)"},
                                 AnswerLabel::True, SolverVerdict::Unknown)); // fn
  const std::string csv = benchmark_csv(corpus, RunConfig{});
  CHECK(csv.find("dataset,tp,tn,fp,fn") == 0);
  CHECK(csv.find("test,1,1,1,1,0.5000") != std::string::npos);
}

TEST_CASE("run config parses json and rejects bad enums") {
  const std::string path = "pipeline_config_test.json";
  {
    std::ofstream out(path);
    out << R"({"estimation_method":"mle","pi_mode":"fixed_point",)"
        << R"("polarity":"negated","smoothing":0.5,"folds":3,"seed":42,)"
        << R"("jobs":4,"ensemble_subset":["nsui"]})";
  }
  const RunConfig c = load_run_config(path);
  CHECK(c.method == EstimationMethod::MLE);
  CHECK(c.pi_mode == PiMode::FixedPoint);
  CHECK(c.polarity == Polarity::Negated);
  CHECK(c.smoothing == 0.5);
  CHECK(c.folds == 3);
  CHECK(c.seed == 42);
  CHECK(c.jobs == 4);
  REQUIRE(c.ensemble_subset.size() == 1);
  CHECK(c.ensemble_subset[0] == "nsui");
  {
    std::ofstream out(path);
    out << R"({"estimation_method":"bayes"})";
  }
  CHECK_THROWS_AS(load_run_config(path), MalformedLine);
  std::remove(path.c_str());
}

TEST_CASE("jobs do not change results") {
  std::vector<CorpusRecord> corpus;
  for (int q = 0; q < 9; ++q) {
    const bool error = q % 3 == 0;
    std::vector<std::string> programs;
    for (int s = 0; s < 5; ++s)
      programs.push_back(error && s % 2
                             ? "(declare-const v" + std::to_string(s) +
                                   " Int)(check-sat)"
                             : "(assert p)(check-sat)");
    corpus.push_back(make_question("q" + std::to_string(q), programs,
                                   AnswerLabel::True,
                                   error ? SolverVerdict::Unsat
                                         : SolverVerdict::Sat));
  }
  RunConfig seq;
  seq.jobs = 1;
  RunConfig par;
  par.jobs = 8;
  const AnalysisResult a = analyze(corpus, seq);
  const AnalysisResult b = analyze(corpus, par);
  CHECK(a.metrics_csv() == b.metrics_csv());
  CHECK(a.labels_csv() == b.labels_csv());
  CHECK(a.report_ground_truth.to_csv() == b.report_ground_truth.to_csv());
}
