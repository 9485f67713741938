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

#ifndef LXG_PARSER_HPP_
#define LXG_PARSER_HPP_

#include <span>
#include <string>
#include <vector>

#include "lxg/grammar.hpp"
#include "lxg/preparser.hpp"
#include "lxg/token.hpp"

namespace lxg {

enum class ActionKind { kShift, kReduce, kAccept, kError };

struct ParseAction {
  ActionKind kind = ActionKind::kError;
  int next_state = -1;  // kShift
  int production = -1;  // kReduce
  std::string note;     // kError: what was expected
};

// Shift wins over reduce; a reduce applies only on Follow(lhs).
ParseAction get_parsing_operation(const GrammarTables& tables, int state, SymbolId lookahead);

struct DerivationEvent {
  std::string lookahead_lexeme;
  int production = 0;
};

// Receives the driver's actions in parse order.
class ParseSink {
 public:
  virtual ~ParseSink() = default;
  virtual void on_shift(const Token& token) { (void)token; }
  // Called before the right-hand side is popped. `token` is the token under
  // the cursor (eof once the input is exhausted).
  virtual void on_reduce(int production, const Token& token) {
    (void)production;
    (void)token;
  }
};

// SLR(1) driver over a pre-parsed stream. With a symbol table, every
// procedure call is checked against the callee's parameter types. Throws
// CompileError(kParse) on the first syntax or call error.
std::vector<DerivationEvent> parse(const GrammarTables& tables, const std::vector<Token>& stream,
                                   const SymbolTable* table = nullptr, ParseSink* sink = nullptr);

// Acceptance of a bare terminal string (the end marker is appended).
bool accepts(const GrammarTables& tables, std::span<const SymbolId> terminals);

// "<lexeme> : <lhs> -> <rhs>", one event per line.
std::string render_derivation(const Grammar& grammar, const std::vector<DerivationEvent>& events);

}  // namespace lxg

#endif  // LXG_PARSER_HPP_
