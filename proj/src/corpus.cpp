#include "smtuq/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "smtuq/errors.hpp"

namespace smtuq {

namespace {

using nlohmann::json;

const std::set<std::string>& known_record_keys() {
  static const std::set<std::string> keys = {"question_id", "dataset",
                                             "ground_truth", "samples"};
  return keys;
}

const std::set<std::string>& known_sample_keys() {
  static const std::set<std::string> keys = {
      "sample_id", "temperature", "smt_program", "text_answer",
      "solver_verdict", "token_logprobs", "token_topk"};
  return keys;
}

SampleRecord parse_sample(const json& j, std::size_t line, std::size_t index) {
  const std::string where = "samples[" + std::to_string(index) + "]";
  if (!j.is_object()) throw MalformedLine(line, where + " is not an object");

  SampleRecord s;
  if (!j.contains("sample_id") || !j["sample_id"].is_string())
    throw MalformedLine(line, where + ".sample_id must be a string");
  s.sample_id = j["sample_id"].get<std::string>();

  if (!j.contains("smt_program") || !j["smt_program"].is_string())
    throw MalformedLine(line, where + ".smt_program must be a string");
  s.smt_program = j["smt_program"].get<std::string>();

  if (j.contains("temperature") && !j["temperature"].is_null()) {
    if (!j["temperature"].is_number())
      throw MalformedLine(line, where + ".temperature must be a number");
    s.temperature = j["temperature"].get<double>();
    if (*s.temperature < 0.0)
      throw MalformedLine(line, where + ".temperature must be >= 0");
  }
  if (j.contains("text_answer") && !j["text_answer"].is_null()) {
    if (!j["text_answer"].is_string())
      throw MalformedLine(line, where + ".text_answer must be a string");
    s.text_answer = parse_answer_label(j["text_answer"].get<std::string>());
    if (!s.text_answer)
      throw MalformedLine(line, where + ".text_answer must be true/false/unknown");
  }
  if (j.contains("solver_verdict") && !j["solver_verdict"].is_null()) {
    if (!j["solver_verdict"].is_string())
      throw MalformedLine(line, where + ".solver_verdict must be a string");
    s.solver_verdict = parse_solver_verdict(j["solver_verdict"].get<std::string>());
    if (!s.solver_verdict)
      throw MalformedLine(line,
                          where + ".solver_verdict must be sat/unsat/unknown/error/timeout");
  }
  if (j.contains("token_logprobs") && !j["token_logprobs"].is_null()) {
    if (!j["token_logprobs"].is_array())
      throw MalformedLine(line, where + ".token_logprobs must be an array");
    std::vector<double> lps;
    for (const json& v : j["token_logprobs"]) {
      if (!v.is_number())
        throw MalformedLine(line, where + ".token_logprobs entries must be numbers");
      const double lp = v.get<double>();
      if (lp > 1e-12)
        throw MalformedLine(line, where + ".token_logprobs entries must be <= 0");
      lps.push_back(lp);
    }
    s.token_logprobs = std::move(lps);
  }
  if (j.contains("token_topk") && !j["token_topk"].is_null()) {
    if (!j["token_topk"].is_array())
      throw MalformedLine(line, where + ".token_topk must be an array of arrays");
    std::vector<std::vector<double>> topk;
    for (const json& row : j["token_topk"]) {
      if (!row.is_array())
        throw MalformedLine(line, where + ".token_topk must be an array of arrays");
      std::vector<double> probs;
      double total = 0.0;
      for (const json& v : row) {
        if (!v.is_number() || v.get<double>() < 0.0)
          throw MalformedLine(line, where + ".token_topk entries must be probabilities");
        probs.push_back(v.get<double>());
        total += probs.back();
      }
      if (total > 1.0 + 1e-6)
        throw MalformedLine(line, where + ".token_topk row sums to " +
                                      std::to_string(total) + " > 1");
      topk.push_back(std::move(probs));
    }
    s.token_topk = std::move(topk);
  }
  return s;
}

json sample_to_json(const SampleRecord& s) {
  json j = json::object();
  j["sample_id"] = s.sample_id;
  j["smt_program"] = s.smt_program;
  if (s.temperature) j["temperature"] = *s.temperature;
  if (s.text_answer) j["text_answer"] = answer_label_name(*s.text_answer);
  if (s.solver_verdict) j["solver_verdict"] = solver_verdict_name(*s.solver_verdict);
  if (s.token_logprobs) j["token_logprobs"] = *s.token_logprobs;
  if (s.token_topk) j["token_topk"] = *s.token_topk;
  return j;
}

}  // namespace

std::vector<CorpusRecord> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedLine(0, "cannot open corpus file " + path);

  std::vector<CorpusRecord> corpus;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedLine(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw MalformedLine(line_no, "record is not an object");

    CorpusRecord rec;
    if (!j.contains("question_id") || !j["question_id"].is_string())
      throw MalformedLine(line_no, "question_id must be a string");
    rec.question_id = j["question_id"].get<std::string>();
    if (!seen_ids.insert(rec.question_id).second)
      throw DuplicateQuestionId(line_no, rec.question_id);

    if (j.contains("dataset")) {
      if (!j["dataset"].is_string())
        throw MalformedLine(line_no, "dataset must be a string");
      rec.dataset = j["dataset"].get<std::string>();
    }

    if (!j.contains("ground_truth") || !j["ground_truth"].is_string())
      throw MalformedLine(line_no, "ground_truth must be a string");
    const auto gt = parse_answer_label(j["ground_truth"].get<std::string>());
    if (!gt) throw MalformedLine(line_no, "ground_truth must be true/false/unknown");
    rec.ground_truth = *gt;

    if (!j.contains("samples") || !j["samples"].is_array() || j["samples"].empty())
      throw MalformedLine(line_no, "samples must be a nonempty array");
    std::size_t idx = 0;
    for (const json& sj : j["samples"])
      rec.samples.push_back(parse_sample(sj, line_no, idx++));

    json extra = json::object();
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!known_record_keys().count(it.key())) extra[it.key()] = it.value();
    if (!extra.empty()) rec.extra_json = extra.dump();

    corpus.push_back(std::move(rec));
  }
  return corpus;
}

std::string serialize_record(const CorpusRecord& record) {
  json j = record.extra_json.empty() ? json::object()
                                     : json::parse(record.extra_json);
  j["question_id"] = record.question_id;
  j["dataset"] = record.dataset;
  j["ground_truth"] = answer_label_name(record.ground_truth);
  json samples = json::array();
  for (const SampleRecord& s : record.samples) samples.push_back(sample_to_json(s));
  j["samples"] = std::move(samples);
  return j.dump();
}

void write_corpus(const std::vector<CorpusRecord>& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SpawnFailure("cannot open output file " + path);
  for (const CorpusRecord& rec : corpus) out << serialize_record(rec) << '\n';
}

}  // namespace smtuq
