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


#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "lxg/lexer.hpp"
#include "lxg/parser.hpp"
#include "lxg/preparser.hpp"
#include "test_util.hpp"

namespace lxg {
namespace {

using testing::data_file;
using testing::shared_tables;

std::vector<DerivationEvent> derive(std::string_view source) {
  const auto pre = preparse(scan_source(bundled_library()), scan_source(source));
  return parse(shared_tables(), pre.tokens, &pre.table);
}

CompileError parse_error(std::string_view source) {
  try {
    derive(source);
  } catch (const CompileError& e) {
    return e;
  }
  return CompileError(Phase::kIo, "no error");
}

std::vector<std::string> productions_of(const std::vector<DerivationEvent>& events) {
  std::vector<std::string> out;
  for (const auto& e : events) out.push_back(shared_tables().grammar.production_text(e.production));
  return out;
}

TEST(Parser, DerivationMatchesGolden) {
  const auto events = derive(data_file("golden/parser/sum.lxg"));
  EXPECT_EQ(render_derivation(shared_tables().grammar, events),
            data_file("golden/parser/sum.derivation"));
}

TEST(Parser, LastReductionIsTheStartRule) {
  const auto events = derive("INTEGER A;\nA := 1");
  ASSERT_FALSE(events.empty());
  EXPECT_EQ(productions_of(events).back(), "program -> bof prgm-body eof");
}

TEST(Parser, ElseBindsToTheNearestIf) {
  const auto p = productions_of(
      derive("INTEGER A, B;\nIF A > 0 THEN IF B > 0 THEN A := 1 ELSE A := 2"));
  const auto full = std::find(p.begin(), p.end(), "stmt -> IF bool-exp THEN stmt ELSE stmt");
  const auto half = std::find(p.begin(), p.end(), "stmt -> IF bool-exp THEN stmt");
  ASSERT_NE(full, p.end());
  ASSERT_NE(half, p.end());
  EXPECT_LT(full, half);
  EXPECT_EQ(std::count(p.begin(), p.end(), "stmt -> IF bool-exp THEN stmt ELSE stmt"), 1);
}

TEST(Parser, ShiftOnElseInTheConflictState) {
  const GrammarTables& t = shared_tables();
  const auto& c = t.automaton.conflicts.front();
  const ParseAction a = get_parsing_operation(t, c.state, c.terminal);
  EXPECT_EQ(a.kind, ActionKind::kShift);
  EXPECT_EQ(a.next_state, c.shift_target);
}

TEST(Parser, ErrorActionNamesExpectedTerminals) {
  const GrammarTables& t = shared_tables();
  const ParseAction a = get_parsing_operation(t, 0, t.grammar.id("ELSE"));
  EXPECT_EQ(a.kind, ActionKind::kError);
  EXPECT_NE(a.note.find("bof"), std::string::npos);
}

TEST(Parser, SyntaxErrorCarriesLine) {
  const CompileError e = parse_error("INTEGER A;\nA := 1\nA := 2");
  EXPECT_EQ(e.phase(), Phase::kParse);
  EXPECT_EQ(e.line(), 3);
  EXPECT_NE(e.message().find("syntax error"), std::string::npos);
}

TEST(Parser, UndeclaredProcedure) {
  const CompileError e = parse_error("INTEGER A;\nA := 1;\nNOPE(A)");
  EXPECT_EQ(e.phase(), Phase::kParse);
  EXPECT_EQ(e.line(), 3);
  EXPECT_NE(e.message().find("undeclared procedure NOPE"), std::string::npos);
}

TEST(Parser, ArityMismatch) {
  const CompileError e = parse_error("INTEGER A;\nWRITEN(A, 1, 2)");
  EXPECT_EQ(e.line(), 2);
  EXPECT_NE(e.message().find("takes 2 argument(s), 3 given"), std::string::npos);
}

TEST(Parser, ArgumentTypeMismatch) {
  const CompileError e = parse_error("BOOLEAN F;\nWRITES(F)");
  EXPECT_EQ(e.phase(), Phase::kParse);
  EXPECT_EQ(e.line(), 2);
  EXPECT_NE(e.message().find("argument 1"), std::string::npos);
}

TEST(Parser, ArrayArgumentNeedsArrayParameter) {
  const CompileError e = parse_error("ARRAY V[2];\nWRITEN(V, 1)");
  EXPECT_EQ(e.phase(), Phase::kParse);
}

TEST(Parser, AcceptsTerminalStrings) {
  const Grammar& g = shared_tables().grammar;
  auto ids = [&](std::vector<std::string> names) {
    std::vector<SymbolId> out;
    for (const auto& n : names) out.push_back(g.id(n));
    return out;
  };
  EXPECT_TRUE(accepts(shared_tables(), ids({"bof", "iIdentifier", ":=", "number", "eof"})));
  EXPECT_FALSE(accepts(shared_tables(), ids({"bof", "iIdentifier", ":=", "eof"})));
  EXPECT_FALSE(accepts(shared_tables(), ids({"iIdentifier", ":=", "number"})));
}

}  // namespace
}  // namespace lxg
