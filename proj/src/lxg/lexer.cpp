// Copyright 2026 The LXG Compiler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lxg/lexer.hpp"

#include <array>
#include <cctype>

#include <fmt/format.h>

namespace lxg {
namespace {

constexpr std::array<std::string_view, 19> kReservedWords = {
    "AND",   "DO",    "IF",    "OR",      "THEN",    "ARRAY", "ELSE",
    "INTEGER", "PROCEDURE", "VALUE", "BEGIN", "END", "MOD",  "REM",
    "WHILE", "BOOLEAN", "FOR", "NOT",     "STRING"};

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_reserved(std::string_view word) {
  for (auto w : kReservedWords) {
    if (w == word) return true;
  }
  return false;
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    out.push_back(make(TokenKind::kBof, "", 1, 1));
    while (true) {
      skip_blanks_and_comments(out);
      if (at_end()) break;
      scan_one(out);
    }
    out.push_back(make(TokenKind::kEof, "", line_, col_));
    return out;
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < text_.size() ? text_[i_ + ahead] : '\0';
  }
  char advance() {
    char c = text_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  static Token make(TokenKind kind, std::string lexeme, int line, int pos) {
    Token t;
    t.kind = kind;
    t.lexeme = std::move(lexeme);
    t.line = line;
    t.pos = pos;
    return t;
  }
  static Token error(std::string note, std::string lexeme, int line, int pos, int size = 0) {
    Token t = make(TokenKind::kError, std::move(lexeme), line, pos);
    t.error_note = std::move(note);
    t.size = size;
    return t;
  }

  void skip_blanks_and_comments(std::vector<Token>& out) {
    while (!at_end()) {
      char c = peek();
      if (is_space(c)) {
        advance();
      } else if (c == '{') {
        int line = line_, pos = col_;
        std::string body;
        body.push_back(advance());
        while (!at_end() && peek() != '}') body.push_back(advance());
        if (at_end()) {
          out.push_back(error("unterminated comment", body, line, pos));
          return;
        }
        advance();
      } else {
        return;
      }
    }
  }

  void scan_one(std::vector<Token>& out) {
    const int line = line_, pos = col_;
    const char c = peek();

    if (is_upper(c)) {
      std::string word;
      while (is_upper(peek()) || is_digit(peek())) word.push_back(advance());
      if (word.size() > kMaxIdentifierLength) {
        const int size = static_cast<int>(word.size());
        out.push_back(error("identifier size over 50 symbols", std::move(word), line, pos, size));
        return;
      }
      if (word == "TRUE" || word == "FALSE") {
        out.push_back(make(TokenKind::kBoolean, std::move(word), line, pos));
      } else if (is_reserved(word)) {
        Token t = make(TokenKind::kReservedWord, word, line, pos);
        t.reserved_word = std::move(word);
        out.push_back(std::move(t));
      } else {
        out.push_back(make(TokenKind::kId, std::move(word), line, pos));
      }
      return;
    }

    if (is_digit(c)) {
      std::string digits;
      while (is_digit(peek())) digits.push_back(advance());
      const int size = static_cast<int>(digits.size());
      if (digits.size() > kMaxNumberLength) {
        out.push_back(error("number size over 10 digits", std::move(digits), line, pos, size));
        return;
      }
      Token t = make(TokenKind::kNumber, std::move(digits), line, pos);
      t.size = size;
      out.push_back(std::move(t));
      return;
    }

    if (c == '\'' || c == '"') {
      const char delimiter = advance();
      std::string body;
      while (!at_end() && peek() != delimiter) body.push_back(advance());
      if (at_end()) {
        out.push_back(error("unterminated string", std::move(body), line, pos));
        return;
      }
      advance();
      const int size = static_cast<int>(body.size());
      if (body.size() > kMaxStringLength) {
        out.push_back(error("string size over 256 symbols", std::move(body), line, pos, size));
        return;
      }
      Token t = make(TokenKind::kString, std::move(body), line, pos);
      t.size = size;
      out.push_back(std::move(t));
      return;
    }

    switch (c) {
      case ':':
        advance();
        if (peek() != '=') {
          out.push_back(error("incorrect token", ":", line, pos));
          return;
        }
        advance();
        if (peek() == ':') {
          advance();
          out.push_back(make(TokenKind::kSwap, ":=:", line, pos));
        } else {
          out.push_back(make(TokenKind::kAssign, ":=", line, pos));
        }
        return;
      case '<':
      case '>': {
        advance();
        const bool less = c == '<';
        if (peek() == '=') {
          advance();
          out.push_back(make(less ? TokenKind::kLessEq : TokenKind::kBigEq,
                             less ? "<=" : ">=", line, pos));
        } else {
          out.push_back(make(less ? TokenKind::kLess : TokenKind::kBigger, std::string(1, c),
                             line, pos));
        }
        return;
      }
      case ',': {
        advance();
        if (peek() != '.') {
          out.push_back(make(TokenKind::kComma, ",", line, pos));
          return;
        }
        std::string prefix = ",";
        while (prefix.size() < 4 && peek() == '.') prefix.push_back(advance());
        if (prefix.size() == 4 && peek() == ',') {
          advance();
          out.push_back(make(TokenKind::kEllipsis, ",...,", line, pos));
        } else {
          // Rescanning resumes at the character that broke the symbol.
          out.push_back(error("incorrect token", std::move(prefix), line, pos));
        }
        return;
      }
      default:
        break;
    }

    static constexpr std::array<std::pair<char, TokenKind>, 12> kSingles = {{
        {'+', TokenKind::kPlus},     {'-', TokenKind::kMinus},    {'*', TokenKind::kMulti},
        {'/', TokenKind::kOver},     {'^', TokenKind::kPower},    {';', TokenKind::kSemi},
        {'=', TokenKind::kEqual},    {'#', TokenKind::kDiff},     {'(', TokenKind::kLParen},
        {')', TokenKind::kRParen},   {'[', TokenKind::kLSqParen}, {']', TokenKind::kRSqParen},
    }};
    for (const auto& [ch, kind] : kSingles) {
      if (ch == c) {
        advance();
        out.push_back(make(kind, std::string(1, c), line, pos));
        return;
      }
    }

    advance();
    // Lower case letters can never start a token; every other stray
    // character is an illegal symbol.
    out.push_back(error(is_lower(c) ? "incorrect token" : "illegal symbol", std::string(1, c),
                        line, pos));
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kPlus: return "PLUS";
    case TokenKind::kMinus: return "MINUS";
    case TokenKind::kMulti: return "MULTI";
    case TokenKind::kOver: return "OVER";
    case TokenKind::kPower: return "POWER";
    case TokenKind::kComma: return "COMMA";
    case TokenKind::kSemi: return "SEMI";
    case TokenKind::kLess: return "LESS";
    case TokenKind::kBigger: return "BIGGER";
    case TokenKind::kEqual: return "EQUAL";
    case TokenKind::kDiff: return "DIFF";
    case TokenKind::kLParen: return "LPAREN";
    case TokenKind::kRParen: return "RPAREN";
    case TokenKind::kLSqParen: return "LSQPAREN";
    case TokenKind::kRSqParen: return "RSQPAREN";
    case TokenKind::kAssign: return "ASSIGN";
    case TokenKind::kSwap: return "SWAP";
    case TokenKind::kLessEq: return "LESSEQ";
    case TokenKind::kBigEq: return "BIGEQ";
    case TokenKind::kEllipsis: return "ELLIPSIS";
    case TokenKind::kReservedWord: return "reserved word";
    case TokenKind::kId: return "ID";
    case TokenKind::kNumber: return "NUMBER";
    case TokenKind::kString: return "STRING";
    case TokenKind::kBoolean: return "BOOLEAN";
    case TokenKind::kIIdentifier: return "iIdentifier";
    case TokenKind::kBIdentifier: return "bIdentifier";
    case TokenKind::kSIdentifier: return "sIdentifier";
    case TokenKind::kAIdentifier: return "aIdentifier";
    case TokenKind::kUIdentifier: return "uIdentifier";
    case TokenKind::kBof: return "bof";
    case TokenKind::kEof: return "eof";
    case TokenKind::kError: return "error";
  }
  return "?";
}

bool is_symbol_kind(TokenKind kind) {
  return static_cast<int>(kind) <= static_cast<int>(TokenKind::kEllipsis);
}

bool is_typed_identifier(TokenKind kind) {
  return kind >= TokenKind::kIIdentifier && kind <= TokenKind::kUIdentifier;
}

std::string terminal_name(const Token& token) {
  if (is_symbol_kind(token.kind)) return token.lexeme;
  switch (token.kind) {
    case TokenKind::kReservedWord: return token.reserved_word;
    case TokenKind::kNumber: return "number";
    case TokenKind::kString: return "string";
    case TokenKind::kBoolean: return "boolean";
    case TokenKind::kBof: return "bof";
    case TokenKind::kEof: return "eof";
    default:
      if (is_typed_identifier(token.kind)) return std::string(token_kind_name(token.kind));
      return "";
  }
}

std::vector<Token> scan_source(std::string_view text) { return Scanner(text).run(); }

std::string render_token(const Token& t) {
  switch (t.kind) {
    case TokenKind::kBof: return "bof";
    case TokenKind::kEof: return "eof";
    case TokenKind::kReservedWord: return fmt::format("{}: reserved word -> {}", t.line, t.lexeme);
    case TokenKind::kNumber:
    case TokenKind::kString:
      return fmt::format("{}: {}, lexeme -> {}, size = {}", t.line, token_kind_name(t.kind),
                         t.lexeme, t.size);
    case TokenKind::kError:
      if (t.size > 0) {
        return fmt::format("{}: error, {} -> {}, size = {}", t.line, t.error_note, t.lexeme,
                           t.size);
      }
      return fmt::format("{}: error, {} -> {}", t.line, t.error_note, t.lexeme);
    default:
      return fmt::format("{}: {}, lexeme -> {}", t.line, token_kind_name(t.kind), t.lexeme);
  }
}

std::string render_tokens(const std::vector<Token>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    out += render_token(t);
    out += '\n';
  }
  return out;
}

bool has_scan_errors(const std::vector<Token>& tokens) {
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::kError) return true;
  }
  return false;
}

}  // namespace lxg
