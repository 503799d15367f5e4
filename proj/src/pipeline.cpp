#include "smtuq/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "smtuq/errors.hpp"
#include "smtuq/parser.hpp"
#include "smtuq/token.hpp"

namespace smtuq {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::string opt_fmt(const std::optional<double>& x) {
  return x ? fmt(*x) : std::string();
}

struct ParsedQuestion {
  EnsembleContext context;
  std::vector<std::string> diagnostics;
};

ParsedQuestion parse_question(const CorpusRecord& record, Polarity polarity) {
  ParsedQuestion out;
  out.context.grammar = &ConcreteGrammar::smtlib();
  for (const SampleRecord& sample : record.samples) {
    try {
      const std::vector<Token> tokens = tokenize(sample.smt_program);
      const ParseTree tree = parse_program(tokens, sample.sample_id);
      out.context.parsed_programs.push_back(extract_rule_applications(tree));
      out.context.smt_answers.push_back(
          sample.solver_verdict ? map_verdict(*sample.solver_verdict, polarity)
                                : std::nullopt);
    } catch (const Error& e) {
      ++out.context.failed_count;
      out.diagnostics.push_back(sample.sample_id + ": " + e.what());
      out.context.smt_answers.push_back(std::nullopt);  // unparsed: no answer
    }
    out.context.text_answers.push_back(sample.text_answer);
    TokenRecord tr;
    if (sample.token_logprobs) tr.chosen_logprobs = *sample.token_logprobs;
    if (sample.token_topk) tr.topk_probs = *sample.token_topk;
    out.context.token_records.push_back(std::move(tr));
  }
  return out;
}

QuestionAnalysis analyze_question(const CorpusRecord& record,
                                  const RunConfig& config) {
  QuestionAnalysis qa;
  qa.question_id = record.question_id;
  qa.dataset = record.dataset;
  qa.n_samples = record.samples.size();

  ParsedQuestion parsed = parse_question(record, config.polarity);
  qa.parsed = parsed.context.parsed_programs.size();
  qa.failed = parsed.context.failed_count;
  qa.parse_diagnostics = std::move(parsed.diagnostics);

  MetricOptions options{config.method, config.smoothing, config.pi_mode};
  try {
    qa.metrics = compute_metric_vector(parsed.context, options);
  } catch (const Error& e) {
    qa.exclusion_reason = e.what();
    return qa;
  }

  // An undefined SMT majority counts as incorrect on both tasks.
  try {
    const VoteResult smt = majority_vote(parsed.context.smt_answers);
    qa.label_ground_truth = smt.winner == record.ground_truth;
    try {
      const VoteResult text = majority_vote(parsed.context.text_answers);
      qa.label_smt_text = smt.winner == text.winner;
    } catch (const AllMissing&) {
      qa.label_smt_text = false;
    }
  } catch (const AllMissing&) {
    qa.label_ground_truth = false;
    qa.label_smt_text = false;
  }
  return qa;
}

struct TaskData {
  std::vector<bool> labels;  // true = error (incorrect)
  bool usable = false;       // both classes present
};

TaskData task_labels(const std::vector<QuestionAnalysis>& questions,
                     bool ground_truth_task,
                     const std::vector<std::size_t>& included) {
  TaskData out;
  bool any_error = false, any_correct = false;
  for (std::size_t i : included) {
    const auto& label = ground_truth_task ? questions[i].label_ground_truth
                                          : questions[i].label_smt_text;
    const bool is_error = !label.value_or(false);
    out.labels.push_back(is_error);
    (is_error ? any_error : any_correct) = true;
  }
  out.usable = any_error && any_correct;
  return out;
}

EvaluationReport evaluate_task(const FeatureMatrix& minmax,
                               const FeatureMatrix& zscored,
                               const TaskData& task, const RunConfig& config) {
  EvaluationReport report;
  if (!task.usable || task.labels.size() < 2) return report;

  auto add = [&](const std::string& name, const std::vector<double>& scores) {
    ScoredInstances inst{scores, {}};
    inst.correct.reserve(task.labels.size());
    for (bool err : task.labels) inst.correct.push_back(!err);
    try {
      report.rows.push_back(evaluate_signal(name, inst));
    } catch (const Error&) {
      // Degenerate signal on this task (e.g. constant scores): skip the row.
    }
  };

  for (std::size_t c = 0; c < minmax.columns.size(); ++c) {
    std::vector<double> scores;
    scores.reserve(minmax.rows.size());
    for (const auto& row : minmax.rows) scores.push_back(row[c]);
    add(minmax.columns[c], scores);
  }

  std::vector<std::string> subset;
  for (const std::string& name : config.ensemble_subset)
    for (const std::string& col : minmax.columns)
      if (col == name) subset.push_back(name);
  if (!subset.empty()) add("ensemble_simple", ensemble_simple(minmax, subset));
  add("ensemble_average", ensemble_average(minmax));
  try {
    const std::vector<std::size_t> validation =
        validation_split(task.labels, config.validation_fraction, config.seed);
    add("ensemble_weighted", ensemble_weighted(minmax, task.labels, validation));
  } catch (const Error&) {
  }
  try {
    add("ensemble_ml",
        ensemble_ml(zscored, task.labels, config.folds, config.seed));
  } catch (const Error&) {
  }
  return report;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedLine(0, "cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedLine(0, std::string("invalid config JSON: ") + e.what());
  }

  RunConfig c;
  if (j.contains("estimation_method")) {
    const std::string m = j["estimation_method"].get<std::string>();
    if (m == "mle") c.method = EstimationMethod::MLE;
    else if (m == "lidstone") c.method = EstimationMethod::Lidstone;
    else if (m == "dirichlet") c.method = EstimationMethod::Dirichlet;
    else throw MalformedLine(0, "estimation_method must be mle/lidstone/dirichlet");
  }
  if (j.contains("smoothing")) c.smoothing = j["smoothing"].get<double>();
  if (j.contains("pi_mode")) {
    const std::string m = j["pi_mode"].get<std::string>();
    if (m == "empirical") c.pi_mode = PiMode::Empirical;
    else if (m == "fixed_point") c.pi_mode = PiMode::FixedPoint;
    else throw MalformedLine(0, "pi_mode must be empirical/fixed_point");
  }
  if (j.contains("polarity")) {
    const std::string p = j["polarity"].get<std::string>();
    if (p == "direct") c.polarity = Polarity::Direct;
    else if (p == "negated") c.polarity = Polarity::Negated;
    else throw MalformedLine(0, "polarity must be direct/negated");
  }
  if (j.contains("ensemble_subset"))
    c.ensemble_subset = j["ensemble_subset"].get<std::vector<std::string>>();
  if (j.contains("folds")) c.folds = j["folds"].get<int>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("validation_fraction"))
    c.validation_fraction = j["validation_fraction"].get<double>();
  if (j.contains("solver_command"))
    c.solver.command = j["solver_command"].get<std::string>();
  if (j.contains("solver_timeout_seconds"))
    c.solver.timeout_seconds = j["solver_timeout_seconds"].get<double>();
  if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
  return c;
}

AnalysisResult analyze(const std::vector<CorpusRecord>& corpus,
                       const RunConfig& config) {
  // Stable question order independent of corpus file order and job count.
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus[a].question_id < corpus[b].question_id;
  });

  AnalysisResult result;
  result.questions.resize(corpus.size());

  const int jobs = std::max(1, config.jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= order.size()) return;
      result.questions[slot] = analyze_question(corpus[order[slot]], config);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<std::size_t> included;
  std::vector<MetricVector> vectors;
  for (std::size_t i = 0; i < result.questions.size(); ++i) {
    if (result.questions[i].metrics) {
      included.push_back(i);
      vectors.push_back(*result.questions[i].metrics);
    }
  }
  if (!vectors.empty()) {
    const FeatureMatrix minmax =
        build_feature_matrix(vectors, Normalization::MinMax);
    const FeatureMatrix zscored =
        build_feature_matrix(vectors, Normalization::ZScore);
    result.report_ground_truth = evaluate_task(
        minmax, zscored, task_labels(result.questions, true, included), config);
    result.report_smt_text = evaluate_task(
        minmax, zscored, task_labels(result.questions, false, included), config);
  }
  return result;
}

std::string AnalysisResult::metrics_csv() const {
  std::ostringstream out;
  out << "question_id";
  for (const std::string& name : metric_column_names()) out << ',' << name;
  out << '\n';
  for (const QuestionAnalysis& qa : questions) {
    if (!qa.metrics) continue;
    out << qa.question_id;
    for (const std::string& name : metric_column_names())
      out << ',' << opt_fmt(metric_value(*qa.metrics, name));
    out << '\n';
  }
  return out.str();
}

std::string AnalysisResult::labels_csv() const {
  std::ostringstream out;
  out << "question_id,dataset,n_samples,parsed,failed,"
         "smt_matches_ground_truth,smt_text_consistent\n";
  for (const QuestionAnalysis& qa : questions) {
    out << qa.question_id << ',' << qa.dataset << ',' << qa.n_samples << ','
        << qa.parsed << ',' << qa.failed << ',';
    if (qa.label_ground_truth) out << (*qa.label_ground_truth ? 1 : 0);
    out << ',';
    if (qa.label_smt_text) out << (*qa.label_smt_text ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

std::string AnalysisResult::exclusions_csv() const {
  std::ostringstream out;
  out << "question_id,reason\n";
  for (const QuestionAnalysis& qa : questions)
    if (!qa.exclusion_reason.empty())
      out << qa.question_id << ",\"" << qa.exclusion_reason << "\"\n";
  return out.str();
}

void write_reports(const AnalysisResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto dump = [&](const std::string& name, const std::string& content) {
    std::ofstream f(fs::path(out_dir) / name);
    f << content;
  };
  dump("metrics.csv", result.metrics_csv());
  dump("labels.csv", result.labels_csv());
  dump("exclusions.csv", result.exclusions_csv());
  dump("evaluation_ground_truth.csv", result.report_ground_truth.to_csv());
  dump("evaluation_ground_truth.json", result.report_ground_truth.to_json());
  dump("evaluation_smt_text.csv", result.report_smt_text.to_csv());
  dump("evaluation_smt_text.json", result.report_smt_text.to_json());
}

std::string group_by_temperature_csv(const std::vector<CorpusRecord>& corpus,
                                     const RunConfig& config) {
  std::ostringstream out;
  out << "question_id,temperature,n_samples";
  for (const std::string& name : metric_column_names()) out << ',' << name;
  out << '\n';

  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus[a].question_id < corpus[b].question_id;
  });

  const MetricOptions options{config.method, config.smoothing, config.pi_mode};
  for (std::size_t i : order) {
    const CorpusRecord& record = corpus[i];
    std::map<double, std::vector<const SampleRecord*>> groups;
    for (const SampleRecord& sample : record.samples) {
      if (!sample.temperature) throw MissingTemperatures();
      groups[*sample.temperature].push_back(&sample);
    }
    for (const auto& [temperature, samples] : groups) {
      CorpusRecord sub;
      sub.question_id = record.question_id;
      sub.ground_truth = record.ground_truth;
      for (const SampleRecord* s : samples) sub.samples.push_back(*s);
      const ParsedQuestion parsed = parse_question(sub, config.polarity);
      out << record.question_id << ',' << fmt(temperature) << ','
          << samples.size();
      try {
        const MetricVector mv = compute_metric_vector(parsed.context, options);
        for (const std::string& name : metric_column_names())
          out << ',' << opt_fmt(metric_value(mv, name));
      } catch (const Error&) {
        for (std::size_t c = 0; c < metric_column_names().size(); ++c) out << ',';
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string benchmark_csv(const std::vector<CorpusRecord>& corpus,
                          const RunConfig& config) {
  std::map<std::string, ConfusionMatrix> by_dataset;
  for (const CorpusRecord& record : corpus) {
    const ParsedQuestion parsed = parse_question(record, config.polarity);
    std::optional<AnswerLabel> prediction;
    try {
      prediction = majority_vote(parsed.context.smt_answers).winner;
    } catch (const AllMissing&) {
    }
    ConfusionMatrix& m = by_dataset[record.dataset];
    const bool truth_positive = record.ground_truth == AnswerLabel::True;
    const bool pred_positive = prediction == AnswerLabel::True;
    if (truth_positive)
      pred_positive ? ++m.tp : ++m.fn;
    else
      pred_positive ? ++m.fp : ++m.tn;
  }

  std::ostringstream out;
  out << "dataset,tp,tn,fp,fn,accuracy,precision,recall,f1\n";
  char buf[32];
  for (const auto& [dataset, m] : by_dataset) {
    const ConfusionStats s = confusion_stats(m);
    out << dataset << ',' << m.tp << ',' << m.tn << ',' << m.fp << ',' << m.fn;
    for (double v : {s.accuracy, s.precision, s.recall, s.f1}) {
      std::snprintf(buf, sizeof(buf), "%.4f", v);
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::string parse_report_csv(const std::vector<CorpusRecord>& corpus) {
  std::ostringstream out;
  out << "question_id,n_samples,parsed,failed\n";
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus[a].question_id < corpus[b].question_id;
  });
  for (std::size_t i : order) {
    const ParsedQuestion parsed = parse_question(corpus[i], Polarity::Direct);
    out << corpus[i].question_id << ',' << corpus[i].samples.size() << ','
        << parsed.context.parsed_programs.size() << ','
        << parsed.context.failed_count << '\n';
  }
  return out.str();
}

void fill_solver_verdicts(std::vector<CorpusRecord>& corpus,
                          const RunConfig& config) {
  for (CorpusRecord& record : corpus)
    for (SampleRecord& sample : record.samples)
      if (!sample.solver_verdict)
        sample.solver_verdict = run_solver(sample.smt_program, config.solver);
}

}  // namespace smtuq
