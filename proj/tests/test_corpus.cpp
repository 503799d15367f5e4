#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "smtuq/corpus.hpp"
#include "smtuq/errors.hpp"
#include "smtuq/solver.hpp"

using namespace smtuq;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = "corpus_test_" + std::to_string(counter++) + ".jsonl";
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("loading a small corpus") {
  TempFile file(
      R"js({"question_id":"q1","dataset":"toy","ground_truth":"true","samples":[)js"
      R"js({"sample_id":"s0","smt_program":"(check-sat)","solver_verdict":"sat",)js"
      R"js("text_answer":"true","temperature":0.5,"token_logprobs":[-0.1,-0.2]},)js"
      R"js({"sample_id":"s1","smt_program":"(exit)"}]})js"
      "\n\n");  // trailing blank line is ignored
  const auto corpus = load_corpus(file.path);
  REQUIRE(corpus.size() == 1);
  const CorpusRecord& r = corpus[0];
  CHECK(r.question_id == "q1");
  CHECK(r.ground_truth == AnswerLabel::True);
  REQUIRE(r.samples.size() == 2);
  CHECK(r.samples[0].solver_verdict == SolverVerdict::Sat);
  CHECK(r.samples[0].temperature == 0.5);
  REQUIRE(r.samples[0].token_logprobs.has_value());
  CHECK(r.samples[0].token_logprobs->size() == 2);
  CHECK(!r.samples[1].solver_verdict.has_value());
  CHECK(!r.samples[1].temperature.has_value());
}

TEST_CASE("empty file loads as an empty corpus") {
  TempFile file("");
  CHECK(load_corpus(file.path).empty());
}

TEST_CASE("malformed lines are rejected with their line number") {
  SUBCASE("invalid JSON") {
    TempFile file("{\"question_id\": \"q1\"\n");
    CHECK_THROWS_AS(load_corpus(file.path), MalformedLine);
  }
  SUBCASE("unknown ground truth label") {
    TempFile file(
        R"js({"question_id":"q1","ground_truth":"maybe","samples":[)js"
        R"js({"sample_id":"s0","smt_program":"(exit)"}]})js" "\n");
    try {
      load_corpus(file.path);
      FAIL_CHECK("expected MalformedLine");
    } catch (const MalformedLine& e) {
      CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
  }
  SUBCASE("positive logprob") {
    TempFile file(
        R"js({"question_id":"q1","ground_truth":"true","samples":[)js"
        R"js({"sample_id":"s0","smt_program":"(exit)","token_logprobs":[0.5]}]})js"
        "\n");
    CHECK_THROWS_AS(load_corpus(file.path), MalformedLine);
  }
  SUBCASE("duplicate question ids") {
    const std::string line =
        R"js({"question_id":"q1","ground_truth":"true","samples":[)js"
        R"js({"sample_id":"s0","smt_program":"(exit)"}]})js";
    TempFile file(line + "\n" + line + "\n");
    CHECK_THROWS_AS(load_corpus(file.path), DuplicateQuestionId);
  }
}

TEST_CASE("serialization round-trips and canonicalizes key order") {
  TempFile file(
      R"js({"samples":[{"smt_program":"(exit)","sample_id":"s0"}],)js"
      R"js("ground_truth":"false","question_id":"q9","dataset":"d",)js"
      R"js("custom_field":{"a":1}})js" "\n");
  const auto corpus = load_corpus(file.path);
  REQUIRE(corpus.size() == 1);
  const std::string serialized = serialize_record(corpus[0]);
  // alphabetical keys: custom field preserved, keys sorted
  CHECK(serialized.find("\"custom_field\"") != std::string::npos);
  CHECK(serialized.find("\"dataset\"") < serialized.find("\"ground_truth\""));
  CHECK(serialized.find("\"ground_truth\"") <
        serialized.find("\"question_id\""));

  // writing and reloading reproduces the same canonical form
  TempFile out(serialized + "\n");
  const auto reloaded = load_corpus(out.path);
  REQUIRE(reloaded.size() == 1);
  CHECK(serialize_record(reloaded[0]) == serialized);
}

TEST_CASE("solver subprocess harness") {
  SUBCASE("stub echoing sat") {
    CHECK(run_solver("(check-sat)", {"echo sat", 5.0}) == SolverVerdict::Sat);
    CHECK(run_solver("(check-sat)", {"echo unsat", 5.0}) ==
          SolverVerdict::Unsat);
    CHECK(run_solver("(check-sat)", {"echo unknown", 5.0}) ==
          SolverVerdict::Unknown);
  }
  SUBCASE("stub reading stdin") {
    CHECK(run_solver("sat\n", {"head -n 1", 5.0}) == SolverVerdict::Sat);
  }
  SUBCASE("nonzero exit is an error verdict") {
    CHECK(run_solver("(check-sat)", {"false", 5.0}) == SolverVerdict::Error);
    CHECK(run_solver("(check-sat)", {"echo gibberish", 5.0}) ==
          SolverVerdict::Error);
  }
  SUBCASE("timeout kills the process") {
    CHECK(run_solver("(check-sat)", {"sleep 5", 0.2}) ==
          SolverVerdict::Timeout);
  }
  SUBCASE("missing executable") {
    CHECK_THROWS_AS(run_solver("(check-sat)", {"/no/such/solver-xyz", 5.0}),
                    SolverNotFound);
  }
}
