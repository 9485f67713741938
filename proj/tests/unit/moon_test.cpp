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

#include <sstream>
#include <string>

#include "lxg/moon.hpp"
#include "lxg/errors.hpp"
#include "test_util.hpp"

namespace lxg::moon {
namespace {

using lxg::testing::shared_compiler;

constexpr const char* kSum = R"(
        entry
        lw   R1,A(R0)
        lw   R2,B(R0)
        add  R3,R1,R2
        sw   C(R0),R3
        hlt
A       dw   40
B       dw   2
C       res  4
)";

lxg::CompileError assemble_error(std::string_view text) {
  try {
    assemble(text);
  } catch (const lxg::CompileError& e) {
    return e;
  }
  return lxg::CompileError(lxg::Phase::kIo, "no error");
}

RunResult run_source(std::string_view source, RunOptions options = {}) {
  return run(assemble(shared_compiler().compile(source)), options);
}

TEST(Moon, AssemblesAndRuns) {
  const Program p = assemble(kSum);
  const RunResult r = run(p);
  EXPECT_EQ(r.status, RunStatus::kHalted);
  EXPECT_EQ(r.machine.word_at(p, "C"), 42);
  EXPECT_EQ(r.machine.reg(3), 42);
  EXPECT_EQ(r.steps, 5);
}

TEST(Moon, DataLayoutIsWordAligned) {
  const Program p = assemble("      entry\n      hlt\nS     db 65,66,0\n      align\nW     dw 7\n");
  EXPECT_EQ(p.labels.at("W") % kWordSize, 0u);
  const Machine m(p);
  EXPECT_EQ(m.byte(p.labels.at("S")), 65);
  EXPECT_EQ(m.word_at(p, "W"), 7);
}

TEST(Moon, WordsAreLittleEndian) {
  const Program p = assemble("      entry\n      hlt\nW     dw 258\n");
  const Machine m(p);
  EXPECT_EQ(m.byte(p.labels.at("W")), 2);
  EXPECT_EQ(m.byte(p.labels.at("W") + 1), 1);
}

TEST(Moon, CommentsAndQuotedPercent) {
  const Program p = assemble("% full line\n      entry   % trailing\n      hlt\nS     db \"50%\",0\n");
  const Machine m(p);
  EXPECT_EQ(m.byte(p.labels.at("S") + 2), '%');
}

TEST(Moon, ArithmeticWrapsAndDivisionTruncates) {
  const Program p = assemble(R"(
        entry
        lw   R1,MAX(R0)
        lw   R2,ONE(R0)
        add  R3,R1,R2
        lw   R4,M7(R0)
        lw   R5,TWO(R0)
        div  R6,R4,R5
        cgti R7,R6,-4
        hlt
MAX     dw   2147483647
ONE     dw   1
TWO     dw   2
M7      dw   -7
)");
  const RunResult r = run(p);
  EXPECT_EQ(r.machine.reg(3), INT32_MIN);
  EXPECT_EQ(r.machine.reg(6), -3);
  EXPECT_EQ(r.machine.reg(7), 1);
}

TEST(Moon, FuelExhaustion) {
  const Program p = assemble("      entry\nL     j L\n");
  RunOptions options;
  options.fuel = 1000;
  const RunResult r = run(p, options);
  EXPECT_EQ(r.status, RunStatus::kFuelExhausted);
  EXPECT_EQ(r.steps, 1000);
}

TEST(Moon, DivisionByZeroFaults) {
  const RunResult r = run(assemble("      entry\n      div R1,R2,R0\n      hlt\n"));
  EXPECT_EQ(r.status, RunStatus::kFault);
  EXPECT_EQ(r.error_line, 2);
  EXPECT_NE(r.error.find("division by zero"), std::string::npos);
}

TEST(Moon, JumpOutsideCodeFaults) {
  const RunResult r = run(assemble("      entry\n      lw R1,D(R0)\n      jr R1\nD     dw 4000\n"));
  EXPECT_EQ(r.status, RunStatus::kFault);
}

TEST(Moon, OutOfRangeLoadFaults) {
  const RunResult r = run(assemble("      entry\n      lw R1,70000(R0)\n      hlt\n"));
  EXPECT_EQ(r.status, RunStatus::kFault);
}

TEST(Moon, WriteIntoCodeFaults) {
  const RunResult r = run(assemble("      entry\nL     sw L(R0),R1\n      hlt\n"));
  EXPECT_EQ(r.status, RunStatus::kFault);
}

TEST(Moon, AssemblerErrors) {
  EXPECT_NE(assemble_error("      entry\n      frob R1\n").message().find("unknown mnemonic"),
            std::string::npos);
  EXPECT_NE(assemble_error("      entry\n      j NOWHERE\n").message().find("undefined label"),
            std::string::npos);
  EXPECT_NE(assemble_error("      entry\nL     hlt\nL     hlt\n").message().find("duplicate label"),
            std::string::npos);
  EXPECT_NE(assemble_error("      hlt\n").message().find("entry"), std::string::npos);
  const lxg::CompileError e = assemble_error("      entry\n      hlt\n      add R1,R2\n");
  EXPECT_EQ(e.phase(), lxg::Phase::kAssemble);
  EXPECT_EQ(e.line(), 3);
}

TEST(Moon, TraceHasOneLinePerStep) {
  RunOptions options;
  options.trace = true;
  const RunResult r = run(assemble(kSum), options);
  std::istringstream in(r.trace);
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, r.steps);
  EXPECT_NE(r.trace.find("add"), std::string::npos);
  EXPECT_TRUE(run(assemble(kSum)).trace.empty());
}

TEST(Moon, RunsAreDeterministic) {
  const std::string src = "INTEGER I;\nFOR I := 1,...,50 DO BEGIN WRITEN(I * I, 0); SPACE(1) END";
  RunOptions options;
  options.trace = true;
  const RunResult a = run_source(src, options);
  const RunResult b = run_source(src, options);
  EXPECT_EQ(a.output, b.output);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.steps, b.steps);
}

TEST(Moon, IntrinsicsReadAndWrite) {
  RunOptions options;
  options.input = " -12 x";
  const RunResult r = run_source(
      "INTEGER N, C;\nREADN(N); READC(C); READC(C);\nWRITEN(N * 2, 5); WRITES(\"|\"); WRITEC(C); "
      "LINE(1); SPACE(2); WRITES(\"end\")",
      options);
  EXPECT_EQ(r.status, RunStatus::kHalted);
  EXPECT_EQ(r.output, "-24  |x\n  end");
}

TEST(Moon, ReadnWithoutNumberFaults) {
  RunOptions options;
  options.input = "abc";
  EXPECT_EQ(run_source("INTEGER N;\nREADN(N)", options).status, RunStatus::kFault);
}

TEST(Moon, ReadcAtEndOfInputGivesMinusOne) {
  const RunResult r = run_source("INTEGER C;\nREADC(C); WRITEN(C, 0)");
  EXPECT_EQ(r.output, "-1");
}

}  // namespace
}  // namespace lxg::moon
