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

#ifndef LXG_TOKEN_HPP_
#define LXG_TOKEN_HPP_

#include <string>
#include <string_view>

namespace lxg {

enum class TokenKind {
  // Single-character symbols.
  kPlus, kMinus, kMulti, kOver, kPower, kComma, kSemi, kLess, kBigger, kEqual, kDiff,
  kLParen, kRParen, kLSqParen, kRSqParen,
  // Multi-character symbols.
  kAssign, kSwap, kLessEq, kBigEq, kEllipsis,
  kReservedWord,
  kId,
  kNumber,
  kString,
  kBoolean,
  // Identifiers retyped by the pre-parser.
  kIIdentifier, kBIdentifier, kSIdentifier, kAIdentifier, kUIdentifier,
  kBof,
  kEof,
  kError,
};

struct Token {
  TokenKind kind = TokenKind::kError;
  std::string lexeme;
  int size = 0;
  int line = 0;
  int pos = 0;
  // Set for kReservedWord tokens (equal to the lexeme).
  std::string reserved_word;
  // Set for kError tokens.
  std::string error_note;
  // Symbol-table row of a retyped identifier, -1 otherwise.
  int symbol = -1;
};

// The canonical name used in dumps: "PLUS", "ID", "iIdentifier", ...
std::string_view token_kind_name(TokenKind kind);

// Terminal name of the token in the grammar file ("+", "BEGIN", "number",
// "iIdentifier", "bof", ...). Empty for ID and error tokens, which never
// reach the parser.
std::string terminal_name(const Token& token);

bool is_symbol_kind(TokenKind kind);
bool is_typed_identifier(TokenKind kind);

}  // namespace lxg

#endif  // LXG_TOKEN_HPP_
