#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "../src/rule_ids.hpp"
#include "helpers.hpp"
#include "parser_corpus.hpp"
#include "smtuq/errors.hpp"
#include "smtuq/grammar.hpp"
#include "smtuq/parser.hpp"
#include "smtuq/token.hpp"

using namespace smtuq;

namespace {

std::vector<RuleApplication> parse_apps(const std::string& source) {
  return extract_rule_applications(parse_program(tokenize(source)));
}

}  // namespace

TEST_CASE("grammar shape matches the named rule ids") {
  const ConcreteGrammar& g = ConcreteGrammar::smtlib();
  CHECK(g.rules().size() == static_cast<std::size_t>(rid::kRuleCount));
  CHECK(g.nonterminals().size() == 28);
  CHECK(g.start() == g.rules()[rid::kScriptCons].lhs);
  CHECK(g.nonterminal_name(g.rules()[rid::kScriptCons].lhs) == "Script");
  CHECK(g.nonterminal_name(g.rules()[rid::kCmdCheckSat].lhs) == "Command");
  CHECK(g.nonterminal_name(g.rules()[rid::kTermLet].lhs) == "Term");
  CHECK(g.nonterminal_name(g.rules()[rid::kGenericForm].lhs) == "GenericForm");
  CHECK(g.rules()[rid::kScriptEmpty].rhs.empty());
  // every nonterminal owns at least one rule
  for (const auto& ids : g.rules_by_lhs()) CHECK(!ids.empty());
}

TEST_CASE("bnf lists one rule per line in id order") {
  const ConcreteGrammar& g = ConcreteGrammar::smtlib();
  std::istringstream bnf(g.to_bnf());
  std::string line;
  int id = 0;
  while (std::getline(bnf, line)) {
    const Rule& rule = g.rules()[static_cast<std::size_t>(id)];
    CHECK(line.rfind(g.nonterminal_name(rule.lhs) + " ::=", 0) == 0);
    ++id;
  }
  CHECK(id == rid::kRuleCount);
}

TEST_CASE("shipped grammar file matches the built-in grammar") {
  std::ifstream shipped("data/grammar.bnf");
  if (!shipped) shipped.open("../data/grammar.bnf");
  REQUIRE(shipped);
  std::ostringstream content;
  content << shipped.rdbuf();
  CHECK(content.str() == ConcreteGrammar::smtlib().to_bnf());
}

TEST_CASE("check-sat derivation: three applications at depths 0,1,1") {
  const auto apps = parse_apps("(check-sat)");
  REQUIRE(apps.size() == 3);
  CHECK(apps[0].rule_id == rid::kScriptCons);
  CHECK(apps[0].depth == 0);
  CHECK(apps[1].rule_id == rid::kCmdCheckSat);
  CHECK(apps[1].depth == 1);
  CHECK(apps[2].rule_id == rid::kScriptEmpty);
  CHECK(apps[2].depth == 1);
}

TEST_CASE("empty program is the empty script") {
  const auto apps = parse_apps("");
  REQUIRE(apps.size() == 1);
  CHECK(apps[0].rule_id == rid::kScriptEmpty);
}

TEST_CASE("unknown commands parse as generic forms") {
  const auto apps = parse_apps("(reset-assertions)");
  std::set<int> ids;
  for (const auto& a : apps) ids.insert(a.rule_id);
  CHECK(ids.count(rid::kCmdGeneric) == 1);
  CHECK(ids.count(rid::kGenericForm) == 1);
}

TEST_CASE("valid corpus parses with token-yield round-trip") {
  for (const std::string& source : testutil::valid_programs()) {
    CAPTURE(source);
    const auto tokens = tokenize(source);
    const ParseTree tree = parse_program(tokens);
    const auto yield = terminal_yield(tree);
    REQUIRE(yield.size() == tokens.size());
    for (std::size_t i = 0; i < yield.size(); ++i) CHECK(yield[i] == i);
  }
}

TEST_CASE("valid corpus covers every grammar rule") {
  std::set<int> seen;
  for (const std::string& source : testutil::valid_programs())
    for (const auto& app : parse_apps(source)) seen.insert(app.rule_id);
  for (int id = 0; id < rid::kRuleCount; ++id) {
    CAPTURE(id);
    CHECK(seen.count(id) == 1);
  }
}

TEST_CASE("malformed programs raise positioned syntax errors") {
  for (const std::string& source : testutil::malformed_programs()) {
    CAPTURE(source);
    try {
      parse_program(tokenize(source));
      FAIL_CHECK("expected a syntax error for: " << source);
    } catch (const SyntaxError& e) {
      CHECK(e.line >= 1);
      CHECK(e.column >= 1);
      CHECK(std::string(e.what()).find("expected") != std::string::npos);
    }
  }
}

TEST_CASE("rule application spans nest properly") {
  const std::string source = "(assert (let ((t 1)) (> t 0)))(check-sat)";
  const auto tokens = tokenize(source);
  const auto apps = extract_rule_applications(parse_program(tokens));
  for (const auto& app : apps) {
    CHECK(app.span_begin <= app.span_end);
    CHECK(app.span_end < tokens.size());
  }
  // root spans the whole token stream (spans are inclusive)
  CHECK(apps.front().span_begin == 0);
  CHECK(apps.front().span_end == tokens.size() - 1);
  // pre-order: depths increase by at most 1 between consecutive entries
  for (std::size_t i = 1; i < apps.size(); ++i)
    CHECK(apps[i].depth <= apps[i - 1].depth + 1);
}

TEST_CASE("program id propagates to applications") {
  const auto tree = parse_program(tokenize("(exit)"), "prog-7");
  for (const auto& app : extract_rule_applications(tree))
    CHECK(app.program_id == "prog-7");
}
