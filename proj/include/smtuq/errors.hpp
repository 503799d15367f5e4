#pragma once

#include <stdexcept>
#include <string>

namespace smtuq {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- lexing / parsing ---

class UnterminatedString : public Error {
 public:
  UnterminatedString(int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) +
              ": unterminated string literal"),
        line(line),
        column(column) {}
  int line, column;
};

class IllegalCharacter : public Error {
 public:
  IllegalCharacter(char c, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) +
              ": illegal character '" + std::string(1, c) + "'"),
        ch(c),
        line(line),
        column(column) {}
  char ch;
  int line, column;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t token_index, int line, int column)
      : Error(msg), token_index(token_index), line(line), column(column) {}
  std::size_t token_index;
  int line, column;
};

class UnknownRuleId : public Error {
 public:
  explicit UnknownRuleId(int rule_id)
      : Error("unknown rule id " + std::to_string(rule_id)) {}
};

// --- estimation / spectral ---

class InvalidSmoothingParameter : public Error {
 public:
  explicit InvalidSmoothingParameter(double value)
      : Error("smoothing parameter must be > 0, got " + std::to_string(value)) {}
};

class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& what) : Error(what) {}
};

class DivergentGrammar : public Error {
 public:
  explicit DivergentGrammar(double rho)
      : Error("fixed-point frequencies undefined: spectral radius " +
              std::to_string(rho) + " >= 1") {}
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("no observations: all nonterminal counts are zero") {}
};

// --- metrics ---

class UnknownNonterminal : public Error {
 public:
  explicit UnknownNonterminal(const std::string& name)
      : Error("unknown nonterminal '" + name + "'") {}
};

class WeightMismatch : public Error {
 public:
  explicit WeightMismatch(const std::string& what) : Error(what) {}
};

class EmptyGrammar : public Error {
 public:
  EmptyGrammar() : Error("observed sub-grammar is empty") {}
};

class MissingTokenData : public Error {
 public:
  MissingTokenData() : Error("no sample carries token-level records") {}
};

class NoParsedPrograms : public Error {
 public:
  NoParsedPrograms() : Error("every program in the ensemble failed to parse") {}
};

// --- consistency ---

class AllMissing : public Error {
 public:
  AllMissing() : Error("no non-missing answers to vote over") {}
};

// --- fusion ---

class UnknownColumn : public Error {
 public:
  explicit UnknownColumn(const std::string& name)
      : Error("unknown feature column '" + name + "'") {}
};

class EmptyMatrix : public Error {
 public:
  explicit EmptyMatrix(const std::string& what) : Error(what) {}
};

class SingleClass : public Error {
 public:
  SingleClass() : Error("labels contain a single class") {}
};

class SingleClassValidation : public Error {
 public:
  SingleClassValidation()
      : Error("validation rows contain a single class") {}
};

class NonFiniteFeature : public Error {
 public:
  explicit NonFiniteFeature(const std::string& column)
      : Error("non-finite value in feature column '" + column + "'") {}
};

class FoldDegenerate : public Error {
 public:
  explicit FoldDegenerate(int fold)
      : Error("fold " + std::to_string(fold) +
              " training split contains a single class") {}
};

// --- evaluation ---

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& what) : Error(what) {}
};

class InsufficientData : public Error {
 public:
  explicit InsufficientData(const std::string& what) : Error(what) {}
};

// --- coverage theory ---

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

class InvalidParameters : public Error {
 public:
  explicit InvalidParameters(const std::string& what) : Error(what) {}
};

class InvalidDistribution : public Error {
 public:
  explicit InvalidDistribution(const std::string& what) : Error(what) {}
};

// --- corpus / solver ---

class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line(line) {}
  std::size_t line;
};

class DuplicateQuestionId : public Error {
 public:
  DuplicateQuestionId(std::size_t line, const std::string& id)
      : Error("line " + std::to_string(line) + ": duplicate question_id '" + id + "'") {}
};

class SolverNotFound : public Error {
 public:
  explicit SolverNotFound(const std::string& cmd)
      : Error("solver executable not found: " + cmd) {}
};

class SpawnFailure : public Error {
 public:
  explicit SpawnFailure(const std::string& what) : Error(what) {}
};

class MissingTemperatures : public Error {
 public:
  MissingTemperatures()
      : Error("temperature grouping requires every sample to carry a temperature") {}
};

}  // namespace smtuq
