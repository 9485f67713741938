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

#include <regex>
#include <sstream>
#include <string>

#include "lxg/lexer.hpp"
#include "lxg/preparser.hpp"
#include "test_util.hpp"

namespace lxg {
namespace {

using testing::data_file;

PreparseResult run(std::string_view source) {
  return preparse(scan_source(bundled_library()), scan_source(source));
}

std::vector<Diagnostic> diagnostics_of(std::string_view source) {
  try {
    run(source);
  } catch (const PreparseError& e) {
    return e.diagnostics();
  }
  return {};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Preparser, DeclaredRowsMatchGolden) {
  const auto result = run(data_file("golden/preparser/loops.lxg"));
  std::vector<std::string> declared;
  for (const std::string& row : lines_of(render_symbol_table(result.table))) {
    if (row.find("is_generated: false") != std::string::npos) declared.push_back(row);
  }
  EXPECT_EQ(declared, lines_of(data_file("golden/preparser/loops.declared")));
}

TEST(Preparser, GeneratedConstantsMatchGolden) {
  // Literal constants join the table while code is generated.
  CompileOutput out;
  testing::shared_compiler().compile(data_file("golden/preparser/loops.lxg"), "loops.m", out);
  static const std::regex kRow(R"(^name: ([A-Z])_\d+; .*is_generated: true;.* lines: (\d+))");
  std::vector<std::string> generated;
  for (const std::string& row : lines_of(out.dumps.at(std::string(kSymbolTableDump)))) {
    std::smatch m;
    if (std::regex_search(row, m, kRow)) generated.push_back(m[1].str() + " " + m[2].str());
  }
  EXPECT_EQ(generated, lines_of(data_file("golden/preparser/loops.generated")));
}

TEST(Preparser, NoConstantsBeforeCodegen) {
  const auto result = run(data_file("golden/preparser/loops.lxg"));
  for (const SymbolEntry& e : result.table.entries()) EXPECT_FALSE(e.is_generated) << e.name;
}

TEST(Preparser, DeclarationsLeaveTheStream) {
  const auto result = run("INTEGER A; BOOLEAN F; STRING S; ARRAY V[3];\nA := 1");
  std::vector<TokenKind> kinds;
  for (const Token& t : result.tokens) kinds.push_back(t.kind);
  EXPECT_EQ(kinds, (std::vector<TokenKind>{TokenKind::kBof, TokenKind::kIIdentifier,
                                           TokenKind::kAssign, TokenKind::kNumber,
                                           TokenKind::kEof}));
}

TEST(Preparser, IdentifiersAreRetypedByDeclaration) {
  const auto result = run("INTEGER A; BOOLEAN F; STRING S; ARRAY V[3];\nA := V[1]; F := TRUE; S := S");
  std::map<std::string, TokenKind> seen;
  for (const Token& t : result.tokens) seen[t.lexeme] = t.kind;
  EXPECT_EQ(seen["A"], TokenKind::kIIdentifier);
  EXPECT_EQ(seen["V"], TokenKind::kAIdentifier);
  EXPECT_EQ(seen["F"], TokenKind::kBIdentifier);
  EXPECT_EQ(seen["S"], TokenKind::kSIdentifier);
}

TEST(Preparser, ProcedureScopes) {
  const auto result = run(
      "INTEGER X;\nPROCEDURE P(A, X); INTEGER A; BOOLEAN X; VALUE A;\n X := A > 0\nEND;\nP(X, TRUE)");
  const auto& table = result.table;
  const auto local = table.find("X", "P");
  ASSERT_TRUE(local.has_value());
  EXPECT_EQ(table.at(*local).type, VarType::kBoolean);
  EXPECT_TRUE(table.at(*local).is_param);
  const auto a = table.find("A", "P");
  ASSERT_TRUE(a.has_value());
  EXPECT_TRUE(table.at(*a).is_value);
  const auto global = table.find("X", kMainProgram);
  ASSERT_TRUE(global.has_value());
  EXPECT_EQ(table.at(*global).type, VarType::kInteger);
  EXPECT_EQ(table.params_of("P").size(), 2u);
  // Procedures see globals they do not shadow.
  EXPECT_EQ(table.lookup("WRITEN", "P").has_value(), true);
}

TEST(Preparser, LinesRecordUses) {
  const auto result = run("INTEGER A;\nA := 1;\n\nA := A");
  const auto a = result.table.find("A", kMainProgram);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(result.table.at(*a).lines, (std::vector<int>{2, 4, 4}));
}

TEST(Preparser, ArraySizeIsRecorded) {
  const auto result = run("ARRAY V[17];\nV[1] := 2");
  const auto v = result.table.find("V", kMainProgram);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(result.table.at(*v).array_size, 17);
}

struct ErrorCase {
  const char* source;
  int line;
  const char* fragment;
};

class PreparserErrors : public ::testing::TestWithParam<ErrorCase> {};

TEST_P(PreparserErrors, Reported) {
  const ErrorCase& c = GetParam();
  const auto d = diagnostics_of(c.source);
  ASSERT_FALSE(d.empty()) << c.source;
  EXPECT_EQ(d.front().line, c.line);
  EXPECT_NE(d.front().message.find(c.fragment), std::string::npos) << d.front().message;
}

INSTANTIATE_TEST_SUITE_P(
    Preparser, PreparserErrors,
    ::testing::Values(
        ErrorCase{"INTEGER A;\nBOOLEAN A;\nA := 1", 2, "duplicate declaration of A"},
        ErrorCase{"INTEGER A;\nVALUE A;\nA := 1", 2, "VALUE declaration within the main program"},
        ErrorCase{"PROCEDURE P(X); INTEGER X;\nVALUE Y; X := 1 END;\nP(1)", 2, "not a parameter"},
        ErrorCase{"PROCEDURE P(V); ARRAY V[1];\nVALUE V; V[1] := 1 END;\nP(V)", 2, "array parameter"},
        ErrorCase{"PROCEDURE P;\nPROCEDURE Q; P END;\nP END;\nP", 2, "cannot be nested"},
        ErrorCase{"PROCEDURE P(X, Y); INTEGER X; X := 1 END;\nP(1, 2)", 1, "no type declaration"},
        ErrorCase{"INTEGER ;\nA := 1", 1, "incorrect declaration"}));

TEST(Preparser, AllErrorsAreCollected) {
  const auto d = diagnostics_of("INTEGER A;\nBOOLEAN A;\nSTRING A;\nVALUE A;\nA := 1");
  EXPECT_EQ(d.size(), 3u);
}

}  // namespace
}  // namespace lxg
