#include "smtuq/token.hpp"

#include <cctype>
#include <unordered_set>

#include "smtuq/errors.hpp"

namespace smtuq {

namespace {

const std::unordered_set<std::string>& reserved_words() {
  static const std::unordered_set<std::string> words = {
      // core syntax
      "!", "_", "as", "let", "exists", "forall", "par", "match",
      // commands covered by the grammar
      "set-logic", "set-option", "set-info", "declare-const", "declare-fun",
      "declare-sort", "define-fun", "define-sort", "declare-datatype",
      "declare-datatypes", "assert", "check-sat", "get-model", "get-value",
      "push", "pop", "echo", "exit"};
  return words;
}

bool is_simple_symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '~': case '!': case '@': case '$': case '%': case '^': case '&':
    case '*': case '_': case '-': case '+': case '=': case '<': case '>':
    case '.': case '?': case '/':
      return true;
    default:
      return false;
  }
}

bool is_symbol_start(char c) {
  return is_simple_symbol_char(c) && !std::isdigit(static_cast<unsigned char>(c));
}

}  // namespace

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::LParen: return "(";
    case TokenKind::RParen: return ")";
    case TokenKind::Symbol: return "<symbol>";
    case TokenKind::Keyword: return "<keyword>";
    case TokenKind::Numeral: return "<numeral>";
    case TokenKind::Decimal: return "<decimal>";
    case TokenKind::Hexadecimal: return "<hexadecimal>";
    case TokenKind::Binary: return "<binary>";
    case TokenKind::String: return "<string>";
    case TokenKind::Reserved: return "<reserved>";
  }
  return "?";
}

bool is_reserved_word(const std::string& word) {
  return reserved_words().count(word) > 0;
}

std::vector<Token> tokenize(const std::string& source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = source.size();
  int line = 1, col = 1;

  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };

  while (i < n) {
    char c = source[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      continue;
    }
    if (c == ';') {
      while (i < n && source[i] != '\n') advance(source[i]);
      continue;
    }

    const int tok_line = line, tok_col = col;
    if (c == '(') {
      tokens.push_back({TokenKind::LParen, "(", tok_line, tok_col});
      advance(c);
      continue;
    }
    if (c == ')') {
      tokens.push_back({TokenKind::RParen, ")", tok_line, tok_col});
      advance(c);
      continue;
    }
    if (c == '"') {
      std::string lex(1, c);
      advance(c);
      bool closed = false;
      while (i < n) {
        char d = source[i];
        lex += d;
        advance(d);
        if (d == '"') {
          // "" escapes an embedded quote
          if (i < n && source[i] == '"') {
            lex += source[i];
            advance(source[i]);
          } else {
            closed = true;
            break;
          }
        }
      }
      if (!closed) throw UnterminatedString(tok_line, tok_col);
      tokens.push_back({TokenKind::String, lex, tok_line, tok_col});
      continue;
    }
    if (c == '|') {
      // quoted symbol
      std::string lex(1, c);
      advance(c);
      bool closed = false;
      while (i < n) {
        char d = source[i];
        lex += d;
        advance(d);
        if (d == '|') {
          closed = true;
          break;
        }
      }
      if (!closed) throw UnterminatedString(tok_line, tok_col);
      tokens.push_back({TokenKind::Symbol, lex, tok_line, tok_col});
      continue;
    }
    if (c == ':') {
      std::string lex(1, c);
      advance(c);
      while (i < n && is_simple_symbol_char(source[i])) {
        lex += source[i];
        advance(source[i]);
      }
      if (lex.size() == 1) throw IllegalCharacter(':', tok_line, tok_col);
      tokens.push_back({TokenKind::Keyword, lex, tok_line, tok_col});
      continue;
    }
    if (c == '#') {
      advance(c);
      if (i < n && (source[i] == 'x' || source[i] == 'b')) {
        const bool hex = source[i] == 'x';
        std::string lex = hex ? "#x" : "#b";
        advance(source[i]);
        std::size_t digits = 0;
        while (i < n &&
               (hex ? std::isxdigit(static_cast<unsigned char>(source[i]))
                    : (source[i] == '0' || source[i] == '1'))) {
          lex += source[i];
          advance(source[i]);
          ++digits;
        }
        if (digits == 0) throw IllegalCharacter('#', tok_line, tok_col);
        tokens.push_back({hex ? TokenKind::Hexadecimal : TokenKind::Binary, lex,
                          tok_line, tok_col});
        continue;
      }
      throw IllegalCharacter('#', tok_line, tok_col);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string lex;
      while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) {
        lex += source[i];
        advance(source[i]);
      }
      if (i + 1 < n && source[i] == '.' &&
          std::isdigit(static_cast<unsigned char>(source[i + 1]))) {
        lex += '.';
        advance('.');
        while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) {
          lex += source[i];
          advance(source[i]);
        }
        tokens.push_back({TokenKind::Decimal, lex, tok_line, tok_col});
      } else {
        tokens.push_back({TokenKind::Numeral, lex, tok_line, tok_col});
      }
      continue;
    }
    if (is_symbol_start(c)) {
      std::string lex;
      while (i < n && is_simple_symbol_char(source[i])) {
        lex += source[i];
        advance(source[i]);
      }
      const TokenKind kind =
          is_reserved_word(lex) ? TokenKind::Reserved : TokenKind::Symbol;
      tokens.push_back({kind, lex, tok_line, tok_col});
      continue;
    }
    throw IllegalCharacter(c, tok_line, tok_col);
  }
  return tokens;
}

}  // namespace smtuq
