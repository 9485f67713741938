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


#include "lxg/lxg.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct CompilerHandle {
  lxg_compiler* ptr = nullptr;
  CompilerHandle() { EXPECT_EQ(lxg_compiler_create(nullptr, nullptr, &ptr), LXG_OK); }
  ~CompilerHandle() { lxg_compiler_destroy(ptr); }
};

std::string take(char* text) {
  std::string out = text ? text : "";
  lxg_string_free(text);
  return out;
}

TEST(CApi, CompileAssembleRun) {
  CompilerHandle c;
  char* assembly = nullptr;
  ASSERT_EQ(lxg_compile_string(c.ptr, "INTEGER A;\nREADN(A); WRITEN(A * 3, 0)", "t.m", &assembly),
            LXG_OK);
  lxg_program* program = nullptr;
  char* error = nullptr;
  ASSERT_EQ(lxg_moon_assemble(assembly, &program, &error), LXG_OK);
  lxg_string_free(assembly);
  EXPECT_EQ(error, nullptr);

  lxg_run_options options{"14", 0, 1};
  lxg_run_result result{};
  ASSERT_EQ(lxg_moon_run(program, &options, &result, &error), LXG_OK);
  EXPECT_EQ(take(result.output), "42");
  EXPECT_FALSE(take(result.trace).empty());
  EXPECT_GT(result.steps, 0);
  lxg_moon_destroy(program);
}

TEST(CApi, CompileErrorsMapToStatus) {
  CompilerHandle c;
  char* assembly = nullptr;
  EXPECT_EQ(lxg_compile_string(c.ptr, "INTEGER A;\nA := 1 !", "t.m", &assembly), LXG_ERR_SCAN);
  EXPECT_EQ(assembly, nullptr);
  EXPECT_EQ(lxg_compiler_last_error_line(c.ptr), 2);
  EXPECT_NE(std::string(lxg_compiler_last_error(c.ptr)).find("illegal symbol"), std::string::npos);

  EXPECT_EQ(lxg_compile_string(c.ptr, "INTEGER A;\nBOOLEAN A;\nA := 1", "t.m", &assembly),
            LXG_ERR_PREPARSE);
  EXPECT_EQ(lxg_compile_string(c.ptr, "INTEGER A;\nA := ", "t.m", &assembly), LXG_ERR_PARSE);
  EXPECT_EQ(lxg_compile_string(c.ptr, "INTEGER A;\nA := 9999999999", "t.m", &assembly),
            LXG_ERR_CODEGEN);

  ASSERT_EQ(lxg_compile_string(c.ptr, "INTEGER A;\nA := 1", "t.m", &assembly), LXG_OK);
  EXPECT_STREQ(lxg_compiler_last_error(c.ptr), "");
  lxg_string_free(assembly);
}

TEST(CApi, RuntimeStatuses) {
  lxg_program* program = nullptr;
  char* error = nullptr;
  ASSERT_EQ(lxg_moon_assemble("      entry\nL     j L\n", &program, &error), LXG_OK);
  lxg_run_options options{nullptr, 100, 0};
  lxg_run_result result{};
  EXPECT_EQ(lxg_moon_run(program, &options, &result, &error), LXG_ERR_FUEL);
  EXPECT_EQ(result.steps, 100);
  take(result.output);
  take(error);
  lxg_moon_destroy(program);

  ASSERT_EQ(lxg_moon_assemble("      entry\n      div R1,R1,R0\n", &program, &error), LXG_OK);
  EXPECT_EQ(lxg_moon_run(program, nullptr, &result, &error), LXG_ERR_RUNTIME);
  EXPECT_EQ(result.error_line, 2);
  EXPECT_NE(take(error).find("division by zero"), std::string::npos);
  take(result.output);
  lxg_moon_destroy(program);

  EXPECT_EQ(lxg_moon_assemble("      frob\n", &program, &error), LXG_ERR_ASSEMBLE);
  EXPECT_EQ(program, nullptr);
  EXPECT_FALSE(take(error).empty());
}

TEST(CApi, WordLookup) {
  lxg_program* program = nullptr;
  ASSERT_EQ(lxg_moon_assemble("      entry\n      hlt\nX     dw -5\n", &program, nullptr), LXG_OK);
  int32_t value = 0;
  EXPECT_EQ(lxg_moon_word(program, "X", &value), LXG_OK);
  EXPECT_EQ(value, -5);
  EXPECT_EQ(lxg_moon_word(program, "Y", &value), LXG_ERR_INVALID_ARGUMENT);
  lxg_moon_destroy(program);
}

TEST(CApi, NullArguments) {
  EXPECT_EQ(lxg_compiler_create(nullptr, nullptr, nullptr), LXG_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(lxg_compile_string(nullptr, "A", "t.m", nullptr), LXG_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(lxg_moon_run(nullptr, nullptr, nullptr, nullptr), LXG_ERR_INVALID_ARGUMENT);
  lxg_compiler_destroy(nullptr);
  lxg_moon_destroy(nullptr);
  lxg_string_free(nullptr);
  EXPECT_STREQ(lxg_status_name(LXG_ERR_PARSE), "parse");
}

TEST(CApi, MissingGrammarFile) {
  lxg_compiler* c = nullptr;
  EXPECT_EQ(lxg_compiler_create("/nonexistent/lxg.grammar", nullptr, &c), LXG_ERR_IO);
  EXPECT_EQ(c, nullptr);
}

TEST(CApi, CompileFileWritesDumps) {
  const auto dir = std::filesystem::temp_directory_path() / "lxg_capi_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "p.lxg") << "INTEGER A;\nA := 2;\nWRITEN(A, 0)\n";
  }
  CompilerHandle c;
  const std::string src = (dir / "p.lxg").string();
  const std::string out = (dir / "p.m").string();
  ASSERT_EQ(lxg_compile_file(c.ptr, src.c_str(), out.c_str(), 1, dir.string().c_str()), LXG_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "p.m"));
  for (const char* dump : {"lxg_grammar.out", "lxg_scan.out", "lxg_preparse.out",
                           "lxg_symbol_table.out", "lxg_parse.out"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / dump)) << dump;
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
