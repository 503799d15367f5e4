#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "smtuq/consistency.hpp"
#include "smtuq/metrics.hpp"

namespace smtuq {

struct SampleRecord {
  std::string sample_id;
  std::optional<double> temperature;
  std::string smt_program;
  std::optional<AnswerLabel> text_answer;
  std::optional<SolverVerdict> solver_verdict;
  std::optional<std::vector<double>> token_logprobs;
  std::optional<std::vector<std::vector<double>>> token_topk;
};

struct CorpusRecord {
  std::string question_id;
  std::string dataset;
  AnswerLabel ground_truth = AnswerLabel::Unknown;
  std::vector<SampleRecord> samples;
  // Unknown fields from the source line, preserved on re-serialization.
  std::string extra_json;  // serialized object; empty when none
};

// One JSON object per line; strict validation with line-numbered
// diagnostics. Throws MalformedLine and DuplicateQuestionId.
std::vector<CorpusRecord> load_corpus(const std::string& path);

// Canonical form: alphabetical keys, shortest round-trip numbers.
std::string serialize_record(const CorpusRecord& record);
void write_corpus(const std::vector<CorpusRecord>& corpus, const std::string& path);

}  // namespace smtuq
