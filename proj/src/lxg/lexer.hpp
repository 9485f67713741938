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

#ifndef LXG_LEXER_HPP_
#define LXG_LEXER_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "lxg/token.hpp"

namespace lxg {

inline constexpr std::size_t kMaxIdentifierLength = 50;
inline constexpr std::size_t kMaxNumberLength = 10;
inline constexpr std::size_t kMaxStringLength = 256;

// Scans LXG source text. The result always starts with bof and ends with
// eof; lexical errors are reported in-stream as kError tokens and scanning
// resumes after them.
std::vector<Token> scan_source(std::string_view text);

// One line of the scanner dump, e.g. "1: PLUS, lexeme -> +".
std::string render_token(const Token& token);

// All tokens rendered, one per line, each line newline-terminated.
std::string render_tokens(const std::vector<Token>& tokens);

bool has_scan_errors(const std::vector<Token>& tokens);

}  // namespace lxg

#endif  // LXG_LEXER_HPP_
