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

#include <cctype>
#include <filesystem>
#include <map>
#include <regex>
#include <string>

#include "lxg/moon.hpp"
#include "support/interpreter.hpp"
#include "test_util.hpp"

namespace lxg {
namespace {

namespace fs = std::filesystem;
using testing::data_path;
using testing::shared_compiler;

std::string input_for(const fs::path& source) {
  fs::path in = source;
  in.replace_extension(".in");
  return fs::exists(in) ? read_text_file(in) : std::string();
}

std::string expected_for(const fs::path& source) {
  fs::path out = source;
  out.replace_extension(".out");
  return read_text_file(out);
}

std::vector<std::string> names_in(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& p : testing::files_with_extension(data_path(dir), ".lxg")) {
    out.push_back(p.stem().string());
  }
  return out;
}

std::string param_name(const ::testing::TestParamInfo<std::string>& info) {
  std::string s = info.param;
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  }
  return s;
}

class EndToEnd : public ::testing::TestWithParam<std::string> {
 protected:
  fs::path source() const { return data_path("programs/e2e/" + GetParam() + ".lxg"); }
};

TEST_P(EndToEnd, MoonOutputMatches) {
  moon::RunOptions options;
  options.input = input_for(source());
  const auto result =
      moon::run(moon::assemble(shared_compiler().compile(read_text_file(source()))), options);
  EXPECT_EQ(result.status, moon::RunStatus::kHalted) << result.error;
  EXPECT_EQ(result.output, expected_for(source()));
}

TEST_P(EndToEnd, InterpreterAgrees) {
  const auto result = testing::interpret(read_text_file(source()), input_for(source()));
  EXPECT_EQ(result.status, testing::InterpretResult::Status::kHalted) << result.fault;
  EXPECT_EQ(result.output, expected_for(source()));
}

INSTANTIATE_TEST_SUITE_P(Programs, EndToEnd, ::testing::ValuesIn(names_in("programs/e2e")),
                         param_name);

class Traps : public ::testing::TestWithParam<std::string> {
 protected:
  fs::path source() const { return data_path("programs/traps/" + GetParam() + ".lxg"); }
};

TEST_P(Traps, MoonReportsTrap) {
  const auto result = moon::run(moon::assemble(shared_compiler().compile(read_text_file(source()))));
  EXPECT_EQ(result.status, moon::RunStatus::kHalted) << result.error;
  EXPECT_EQ(result.output, expected_for(source()));
  EXPECT_NE(result.output.find("LXG run-time error: "), std::string::npos);
}

TEST_P(Traps, InterpreterAgrees) {
  const auto result = testing::interpret(read_text_file(source()));
  EXPECT_EQ(result.output, expected_for(source()));
}

INSTANTIATE_TEST_SUITE_P(Programs, Traps, ::testing::ValuesIn(names_in("programs/traps")),
                         param_name);

class CompileErrors : public ::testing::TestWithParam<std::string> {};

// Each error program starts with "{ expect: <phase> <line> }".
TEST_P(CompileErrors, ReportedAtExpectedLine) {
  const std::string text = read_text_file(data_path("programs/errors/" + GetParam() + ".lxg"));
  static const std::regex kExpect(R"(\{ expect: (\w+) (\d+) \})");
  std::smatch m;
  ASSERT_TRUE(std::regex_search(text, m, kExpect));
  static const std::map<std::string, Phase> kPhases{{"scan", Phase::kScan},
                                                    {"preparse", Phase::kPreparse},
                                                    {"parse", Phase::kParse},
                                                    {"codegen", Phase::kCodegen}};
  try {
    shared_compiler().compile(text);
    FAIL() << "compiled without error";
  } catch (const CompileError& e) {
    EXPECT_EQ(e.phase(), kPhases.at(m[1])) << e.what();
    EXPECT_EQ(e.line(), std::stoi(m[2])) << e.what();
  }
}

INSTANTIATE_TEST_SUITE_P(Programs, CompileErrors,
                         ::testing::ValuesIn(names_in("programs/errors")), param_name);

}  // namespace
}  // namespace lxg
