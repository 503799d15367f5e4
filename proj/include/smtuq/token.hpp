#pragma once

#include <string>
#include <vector>

namespace smtuq {

enum class TokenKind {
  LParen,
  RParen,
  Symbol,
  Keyword,
  Numeral,
  Decimal,
  Hexadecimal,
  Binary,
  String,
  Reserved,
};

const char* token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string lexeme;  // significant text; for strings, the raw literal including quotes
  int line = 1;        // 1-based
  int column = 1;      // 1-based

  bool is_reserved(const std::string& word) const {
    return kind == TokenKind::Reserved && lexeme == word;
  }
};

// SMT-LIB v2 lexer. Comments (';' to end of line) and whitespace are dropped.
// Symbols matching a reserved word come back as TokenKind::Reserved.
// Throws UnterminatedString and IllegalCharacter.
std::vector<Token> tokenize(const std::string& source);

bool is_reserved_word(const std::string& word);

}  // namespace smtuq
