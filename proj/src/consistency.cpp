#include "smtuq/consistency.hpp"

#include <array>

#include "smtuq/errors.hpp"

namespace smtuq {

const char* answer_label_name(AnswerLabel label) {
  switch (label) {
    case AnswerLabel::True: return "true";
    case AnswerLabel::False: return "false";
    case AnswerLabel::Unknown: return "unknown";
  }
  return "?";
}

std::optional<AnswerLabel> parse_answer_label(const std::string& text) {
  if (text == "true") return AnswerLabel::True;
  if (text == "false") return AnswerLabel::False;
  if (text == "unknown") return AnswerLabel::Unknown;
  return std::nullopt;
}

const char* solver_verdict_name(SolverVerdict verdict) {
  switch (verdict) {
    case SolverVerdict::Sat: return "sat";
    case SolverVerdict::Unsat: return "unsat";
    case SolverVerdict::Unknown: return "unknown";
    case SolverVerdict::Error: return "error";
    case SolverVerdict::Timeout: return "timeout";
  }
  return "?";
}

std::optional<SolverVerdict> parse_solver_verdict(const std::string& text) {
  if (text == "sat") return SolverVerdict::Sat;
  if (text == "unsat") return SolverVerdict::Unsat;
  if (text == "unknown") return SolverVerdict::Unknown;
  if (text == "error") return SolverVerdict::Error;
  if (text == "timeout") return SolverVerdict::Timeout;
  return std::nullopt;
}

std::optional<AnswerLabel> map_verdict(SolverVerdict verdict, Polarity polarity) {
  switch (verdict) {
    case SolverVerdict::Sat:
      return polarity == Polarity::Direct ? AnswerLabel::True : AnswerLabel::False;
    case SolverVerdict::Unsat:
      return polarity == Polarity::Direct ? AnswerLabel::False : AnswerLabel::True;
    case SolverVerdict::Unknown:
      return AnswerLabel::Unknown;
    case SolverVerdict::Error:
    case SolverVerdict::Timeout:
      return std::nullopt;
  }
  return std::nullopt;
}

VoteResult majority_vote(const std::vector<std::optional<AnswerLabel>>& answers) {
  std::array<int, 3> counts = {0, 0, 0};
  int valid = 0;
  for (const auto& a : answers) {
    if (!a) continue;
    ++counts[static_cast<std::size_t>(*a)];
    ++valid;
  }
  if (valid == 0) throw AllMissing();
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (counts[static_cast<std::size_t>(i)] > counts[static_cast<std::size_t>(best)])
      best = i;
  int tied = 0;
  for (int i = 0; i < 3; ++i)
    if (counts[static_cast<std::size_t>(i)] ==
        counts[static_cast<std::size_t>(best)])
      ++tied;
  const double share = static_cast<double>(counts[static_cast<std::size_t>(best)]) /
                       static_cast<double>(valid);
  if (tied > 1) return {AnswerLabel::Unknown, share, valid};
  return {static_cast<AnswerLabel>(best), share, valid};
}

double self_consistency(const std::vector<std::optional<AnswerLabel>>& answers) {
  return majority_vote(answers).agreement;
}

CorrectnessLabels correctness_labels(const SampleAnswers& answers) {
  const VoteResult smt = majority_vote(answers.smt_answers);
  const VoteResult text = majority_vote(answers.text_answers);
  return {smt.winner == answers.ground_truth, smt.winner == text.winner};
}

}  // namespace smtuq
