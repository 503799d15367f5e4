// Deterministically regenerates data/synthetic_corpus.jsonl. The corpus mixes
// question templates, sampling temperatures, parse failures, and solver
// verdicts so that every pipeline stage has something to chew on.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "smtuq/corpus.hpp"

namespace {

using smtuq::CorpusRecord;
using smtuq::SampleRecord;

std::string arith_program(std::mt19937_64& rng, bool satisfiable) {
  std::uniform_int_distribution<int> coef(1, 9);
  std::uniform_int_distribution<int> pick(0, 2);
  const char* rel = satisfiable ? ">" : "<";
  std::string out = "(set-logic QF_LIA)\n(declare-const x Int)\n";
  if (pick(rng) == 0) out += "(declare-const y Int)\n";
  out += "(assert (" + std::string(rel) + " x " + std::to_string(coef(rng)) +
         "))\n";
  if (!satisfiable) out += "(assert (> x 100))\n";
  for (int i = pick(rng); i > 0; --i)
    out += "(assert (>= x " + std::to_string(-coef(rng)) + "))\n";
  out += "(check-sat)\n";
  return out;
}

std::string boolean_program(std::mt19937_64& rng, bool satisfiable) {
  std::uniform_int_distribution<int> pick(0, 1);
  std::string out = "(declare-const p Bool)\n(declare-const q Bool)\n";
  if (satisfiable) {
    out += pick(rng) ? "(assert (or p q))\n" : "(assert (=> p q))\n";
  } else {
    out += "(assert p)\n(assert (not p))\n";
  }
  if (pick(rng)) out += "(assert (! (or p (not q)) :named clause0))\n";
  out += "(check-sat)\n(get-model)\n";
  return out;
}

std::string quantified_program(std::mt19937_64& rng, bool satisfiable) {
  std::uniform_int_distribution<int> pick(0, 1);
  std::string out = "(set-logic LIA)\n(declare-fun f (Int) Int)\n";
  out += satisfiable
             ? "(assert (forall ((a Int)) (>= (f a) 0)))\n"
             : "(assert (exists ((a Int)) (and (> (f a) 0) (< (f a) 0))))\n";
  if (pick(rng))
    out += "(assert (let ((t (f 3))) (= t t)))\n";
  out += "(check-sat)\n";
  return out;
}

std::string datatype_program(std::mt19937_64&, bool satisfiable) {
  std::string out =
      "(declare-datatype Pair ((mk-pair (first Int) (second Int))))\n"
      "(declare-const p Pair)\n";
  out += satisfiable ? "(assert (= (first p) 1))\n"
                     : "(assert (distinct p p))\n";
  out += "(check-sat)\n";
  return out;
}

std::string pushpop_program(std::mt19937_64& rng, bool satisfiable) {
  std::uniform_int_distribution<int> pick(0, 1);
  std::string out = "(declare-const n Int)\n(push 1)\n";
  out += satisfiable ? "(assert (= n 4))\n" : "(assert (distinct n n))\n";
  if (pick(rng)) out += "(set-info :status unknown)\n";
  out += "(check-sat)\n(pop 1)\n(exit)\n";
  return out;
}

std::string broken_program(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 3);
  switch (pick(rng)) {
    case 0: return "(assert (> x 1)\n(check-sat)\n";            // lost paren
    case 1: return "(declare-const x)\n(check-sat)\n";          // missing sort
    case 2: return "(assert \"unterminated)\n";                 // bad string
    default: return "( )\n(check-sat)\n";                       // empty form
  }
}

using TemplateFn = std::string (*)(std::mt19937_64&, bool);

int main_impl() {
  std::mt19937_64 rng(20260826);
  const std::vector<TemplateFn> templates = {
      arith_program, boolean_program, quantified_program, datatype_program,
      pushpop_program};
  const std::vector<std::string> datasets = {"arith", "logic", "mixed"};

  std::vector<CorpusRecord> corpus;
  for (int q = 0; q < 32; ++q) {
    CorpusRecord record;
    char qid[16];
    std::snprintf(qid, sizeof(qid), "q%03d", q);
    record.question_id = qid;
    record.dataset = datasets[static_cast<std::size_t>(q) % datasets.size()];

    const bool truth_sat = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    record.ground_truth =
        truth_sat ? smtuq::AnswerLabel::True : smtuq::AnswerLabel::False;
    // Some ensembles lean the wrong way so error labels carry both classes.
    const bool ensemble_wrong =
        std::uniform_real_distribution<double>(0, 1)(rng) < 0.3;
    const double flip_rate = ensemble_wrong ? 0.7 : 0.15;

    const TemplateFn fn = templates[static_cast<std::size_t>(q) %
                                    templates.size()];
    const int n_samples = std::uniform_int_distribution<int>(6, 12)(rng);
    for (int s = 0; s < n_samples; ++s) {
      SampleRecord sample;
      char sid[16];
      std::snprintf(sid, sizeof(sid), "s%02d", s);
      sample.sample_id = sid;
      sample.temperature =
          std::vector<double>{0.2, 0.5, 0.8, 1.1}[static_cast<std::size_t>(s) %
                                                  4];

      const bool flipped =
          std::uniform_real_distribution<double>(0, 1)(rng) < flip_rate;
      const bool says_sat = flipped ? !truth_sat : truth_sat;
      const bool malformed =
          std::uniform_real_distribution<double>(0, 1)(rng) < 0.08;
      sample.smt_program =
          malformed ? broken_program(rng) : fn(rng, says_sat);

      const double stumble = std::uniform_real_distribution<double>(0, 1)(rng);
      if (stumble < 0.05) {
        sample.solver_verdict = smtuq::SolverVerdict::Unknown;
      } else if (stumble < 0.08) {
        sample.solver_verdict = smtuq::SolverVerdict::Error;
      } else {
        sample.solver_verdict = says_sat ? smtuq::SolverVerdict::Sat
                                         : smtuq::SolverVerdict::Unsat;
      }
      if (stumble > 0.95)
        sample.text_answer = std::nullopt;  // the model refused to answer
      else
        sample.text_answer = says_sat ? smtuq::AnswerLabel::True
                                      : smtuq::AnswerLabel::False;

      const int n_tokens = std::uniform_int_distribution<int>(12, 40)(rng);
      std::vector<double> logprobs;
      std::vector<std::vector<double>> topk;
      for (int t = 0; t < n_tokens; ++t) {
        const double lp =
            -std::exponential_distribution<double>(1.0 / 0.4)(rng);
        logprobs.push_back(lp);
        const double top = std::exp(lp);
        std::vector<double> row{top};
        double rest = 1.0 - top;
        for (int k = 0; k < 4 && rest > 1e-9; ++k) {
          const double share =
              rest * std::uniform_real_distribution<double>(0.2, 0.7)(rng);
          row.push_back(share);
          rest -= share;
        }
        topk.push_back(std::move(row));
      }
      if (q % 5 != 4) {  // a few questions ship without token data
        sample.token_logprobs = std::move(logprobs);
        sample.token_topk = std::move(topk);
      }
      record.samples.push_back(std::move(sample));
    }
    corpus.push_back(std::move(record));
  }

  for (const CorpusRecord& record : corpus)
    std::cout << smtuq::serialize_record(record) << '\n';
  return 0;
}

}  // namespace

int main() { return main_impl(); }
