#pragma once

#include <optional>
#include <string>
#include <vector>

namespace smtuq {

enum class AnswerLabel { True, False, Unknown };

enum class SolverVerdict { Sat, Unsat, Unknown, Error, Timeout };

enum class Polarity { Direct, Negated };

const char* answer_label_name(AnswerLabel label);
std::optional<AnswerLabel> parse_answer_label(const std::string& text);
const char* solver_verdict_name(SolverVerdict verdict);
std::optional<SolverVerdict> parse_solver_verdict(const std::string& text);

struct SampleAnswers {
  std::string question_id;
  std::vector<std::optional<AnswerLabel>> text_answers;
  std::vector<std::optional<AnswerLabel>> smt_answers;
  AnswerLabel ground_truth = AnswerLabel::Unknown;
};

struct VoteResult {
  AnswerLabel winner;
  double agreement;  // winner share of the non-missing answers
  int valid_count;
};

// sat/unsat map to True/False (swapped under Negated); unknown stays
// Unknown; error and timeout are missing data.
std::optional<AnswerLabel> map_verdict(SolverVerdict verdict, Polarity polarity);

// Most frequent non-missing label; ties resolve to Unknown with the tied
// share as agreement. Throws AllMissing.
VoteResult majority_vote(const std::vector<std::optional<AnswerLabel>>& answers);

double self_consistency(const std::vector<std::optional<AnswerLabel>>& answers);

struct CorrectnessLabels {
  bool smt_matches_ground_truth;
  bool smt_text_consistent;
};

CorrectnessLabels correctness_labels(const SampleAnswers& answers);

}  // namespace smtuq
