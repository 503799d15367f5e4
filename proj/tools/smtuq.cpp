// Command-line front end for the SMT ensemble uncertainty toolkit.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "smtuq/corpus.hpp"
#include "smtuq/coverage.hpp"
#include "smtuq/errors.hpp"
#include "smtuq/grammar.hpp"
#include "smtuq/pipeline.hpp"
#include "smtuq/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON run configuration file");
  cmd->add_option("--out", opts.out_path, "Output file or directory");
  cmd->add_option("--seed", opts.seed, "Random seed override")
      ->each([&](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--jobs", opts.jobs, "Worker thread count");
}

smtuq::RunConfig make_config(const CommonOpts& opts) {
  smtuq::RunConfig config;
  if (!opts.config_path.empty())
    config = smtuq::load_run_config(opts.config_path);
  if (opts.seed_set) config.seed = opts.seed;
  if (opts.jobs > 0) config.jobs = opts.jobs;
  return config;
}

void emit(const CommonOpts& opts, const std::string& content) {
  if (opts.out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(opts.out_path);
  if (!f) throw smtuq::Error("cannot open output file " + opts.out_path);
  f << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uncertainty quantification for ensembles of SMT-LIB programs"};
  app.require_subcommand(1);

  CommonOpts opts;

  std::string corpus_path;
  auto* parse_cmd =
      app.add_subcommand("parse", "Parse a corpus and report per-question "
                                  "parse success counts");
  parse_cmd->add_option("corpus", corpus_path, "Corpus JSONL file");
  add_common(parse_cmd, opts);
  bool dump_grammar = false;
  parse_cmd->add_flag("--grammar", dump_grammar,
                      "Print the concrete grammar in BNF and exit");

  auto* metrics_cmd = app.add_subcommand(
      "metrics", "Compute per-question uncertainty metrics as CSV");
  metrics_cmd->add_option("corpus", corpus_path, "Corpus JSONL file")
      ->required();
  add_common(metrics_cmd, opts);
  bool by_temperature = false;
  metrics_cmd->add_flag("--by-temperature", by_temperature,
                        "Group samples by temperature before computing metrics");

  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "Run the full analysis and write metric, label, and "
                  "signal evaluation reports");
  evaluate_cmd->alias("analyze");
  evaluate_cmd->add_option("corpus", corpus_path, "Corpus JSONL file")
      ->required();
  add_common(evaluate_cmd, opts);

  auto* fuse_cmd = app.add_subcommand(
      "fuse", "Train the logistic fusion model and print its weights");
  fuse_cmd->add_option("corpus", corpus_path, "Corpus JSONL file")->required();
  add_common(fuse_cmd, opts);

  auto* solve_cmd = app.add_subcommand(
      "solve", "Run the configured solver on every sample lacking a verdict "
               "and write the updated corpus");
  solve_cmd->add_option("corpus", corpus_path, "Corpus JSONL file")->required();
  add_common(solve_cmd, opts);
  std::string solver_command;
  solve_cmd->add_option("--solver", solver_command,
                        "Solver command reading SMT-LIB from stdin");

  auto* benchmark_cmd = app.add_subcommand(
      "benchmark", "Score majority-vote answers against ground truth per "
                   "dataset");
  benchmark_cmd->add_option("corpus", corpus_path, "Corpus JSONL file")
      ->required();
  add_common(benchmark_cmd, opts);

  auto* coverage_cmd = app.add_subcommand(
      "coverage", "Report the support-coverage miss bound for a sample "
                  "budget and grammar entropy");
  double cov_n = 0, cov_h = 0;
  coverage_cmd->add_option("--samples", cov_n, "Number of samples N")
      ->required();
  coverage_cmd->add_option("--entropy", cov_h, "Grammar entropy in bits")
      ->required();
  add_common(coverage_cmd, opts);

  auto* schedule_cmd = app.add_subcommand(
      "schedule", "Emit a sampling temperature schedule as CSV");
  int sched_n = 0;
  std::string sched_kind = "gaussian";
  double tau_min = 0.1, tau_max = 1.5, sched_shape = -1.0;
  schedule_cmd->add_option("--samples", sched_n, "Schedule length")->required();
  schedule_cmd->add_option("--kind", sched_kind,
                           "Schedule kind: gaussian, exponential, uniform");
  schedule_cmd->add_option("--tau-min", tau_min, "Minimum temperature");
  schedule_cmd->add_option("--tau-max", tau_max, "Maximum temperature");
  schedule_cmd->add_option("--shape", sched_shape,
                           "Width parameter (defaults per kind)");
  add_common(schedule_cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (parse_cmd->parsed() && dump_grammar) {
      emit(opts, smtuq::ConcreteGrammar::smtlib().to_bnf());
      return kExitOk;
    }
    if (parse_cmd->parsed() && corpus_path.empty())
      throw CLI::RequiredError("corpus");

    if (coverage_cmd->parsed()) {
      const smtuq::CriticalEpsilon eps =
          smtuq::critical_epsilon(cov_n, cov_h);
      const double bound = smtuq::miss_probability_bound(
          smtuq::CoverageQuery{cov_n, cov_h, eps.exact});
      std::ostringstream out;
      char buf[64];
      out << "N,H,epsilon_exact,epsilon_asymptotic,bound_at_epsilon\n";
      std::snprintf(buf, sizeof(buf), "%.6f,%.6f,", cov_n, cov_h);
      out << buf;
      std::snprintf(buf, sizeof(buf), "%.9g,", eps.exact);
      out << buf;
      if (eps.asymptotic) {
        std::snprintf(buf, sizeof(buf), "%.9g", *eps.asymptotic);
        out << buf;
      }
      std::snprintf(buf, sizeof(buf), ",%.9g\n", bound);
      out << buf;
      emit(opts, out.str());
      return kExitOk;
    }

    if (schedule_cmd->parsed()) {
      smtuq::TemperatureSchedule schedule;
      if (sched_kind == "gaussian")
        schedule = smtuq::gaussian_schedule(sched_n, tau_min, tau_max,
                                            sched_shape);
      else if (sched_kind == "exponential")
        schedule = smtuq::exponential_schedule(
            sched_n, sched_shape > 0 ? sched_shape : 1.0, tau_min, tau_max);
      else if (sched_kind == "uniform")
        schedule = smtuq::uniform_schedule(sched_n, tau_max);
      else
        throw CLI::ValidationError("--kind",
                                   "must be gaussian, exponential, or uniform");
      emit(opts, schedule.to_csv());
      return kExitOk;
    }

    smtuq::RunConfig config = make_config(opts);
    std::vector<smtuq::CorpusRecord> corpus = smtuq::load_corpus(corpus_path);

    if (parse_cmd->parsed()) {
      emit(opts, smtuq::parse_report_csv(corpus));
    } else if (metrics_cmd->parsed()) {
      if (by_temperature) {
        emit(opts, smtuq::group_by_temperature_csv(corpus, config));
      } else {
        const smtuq::AnalysisResult result = smtuq::analyze(corpus, config);
        emit(opts, result.metrics_csv());
      }
    } else if (evaluate_cmd->parsed()) {
      const smtuq::AnalysisResult result = smtuq::analyze(corpus, config);
      if (opts.out_path.empty()) {
        std::cout << result.metrics_csv() << result.labels_csv()
                  << result.report_ground_truth.to_csv()
                  << result.report_smt_text.to_csv();
      } else {
        smtuq::write_reports(result, opts.out_path);
      }
    } else if (fuse_cmd->parsed()) {
      const smtuq::AnalysisResult result = smtuq::analyze(corpus, config);
      std::vector<smtuq::MetricVector> vectors;
      std::vector<bool> errors;
      for (const smtuq::QuestionAnalysis& qa : result.questions) {
        if (!qa.metrics) continue;
        vectors.push_back(*qa.metrics);
        errors.push_back(!qa.label_ground_truth.value_or(false));
      }
      const smtuq::FeatureMatrix features = smtuq::build_feature_matrix(
          vectors, smtuq::Normalization::ZScore);
      const smtuq::LogisticModel model =
          smtuq::train_logistic(features, errors);
      emit(opts, model.export_text(features.columns));
    } else if (solve_cmd->parsed()) {
      if (!solver_command.empty()) config.solver.command = solver_command;
      if (config.solver.command.empty())
        throw CLI::ValidationError("--solver", "no solver command configured");
      smtuq::fill_solver_verdicts(corpus, config);
      std::ostringstream out;
      for (const smtuq::CorpusRecord& record : corpus)
        out << smtuq::serialize_record(record) << '\n';
      emit(opts, out.str());
    } else if (benchmark_cmd->parsed()) {
      emit(opts, smtuq::benchmark_csv(corpus, config));
    }
    return kExitOk;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const smtuq::MalformedLine& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const smtuq::DuplicateQuestionId& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const smtuq::EmptyCorpus& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const smtuq::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}
