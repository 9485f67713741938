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

#ifndef LXG_CODEGEN_HPP_
#define LXG_CODEGEN_HPP_

#include <array>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lxg/grammar.hpp"
#include "lxg/parser.hpp"
#include "lxg/preparser.hpp"

namespace lxg {

// Generated names: LB_00001, I_00001, S_00001, REG_00000_<owner>.
class GenNamePools {
 public:
  std::string label() { return make("LB_", labels_++); }
  std::string integer() { return make("I_", integers_++); }
  std::string string() { return make("S_", strings_++); }
  std::string register_slot(std::string_view owner) {
    return make("REG_", slots_++) + "_" + std::string(owner);
  }

 private:
  static std::string make(std::string_view prefix, int n);

  int labels_ = 1;
  int integers_ = 1;
  int strings_ = 1;
  int slots_ = 0;
};

// R1..R13 are handed out lowest-first. R0 is the zero/base register, R14
// the link register and R15 the stack pointer; none of them is ever
// allocated.
class RegisterFile {
 public:
  static constexpr int kFirst = 1;
  static constexpr int kLast = 13;

  // Throws CompileError(kCodegen) when all thirteen are live.
  int acquire(int line);
  void release(int reg);
  bool in_use(int reg) const { return used_.at(reg); }
  bool all_free() const;

 private:
  std::array<bool, 16> used_{};
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// An assignable location: a variable, or an element of an array variable.
struct Dest {
  int symbol = -1;
  ExprPtr index;
  int line = 0;
};

struct Expr {
  enum class Kind {
    kLoad,        // dest
    kConst,       // label: memory word holding the value
    kBinary,      // op in {add, sub, mul}
    kPower,
    kNegate,
    kCompare,     // op in {clt, cle, ceq, cge, cgt, cne}
    kCongruence,  // lhs = a, rhs = b, mod = m; negated for '#'
    kAnd,
    kOr,
    kNot,
  };
  Kind kind = Kind::kConst;
  Dest dest;
  std::string label;
  std::string op;
  bool negated = false;
  ExprPtr lhs, rhs, mod;
  int line = 0;
};

// Event-driven code generator: plugged into the parser as its sink, it
// emits Moon assembly for each reduction and finally the run-time traps
// and declarations.
class CodeGenerator : public ParseSink {
 public:
  // Throws CompileError(kCodegen) if the grammar has a production without
  // a code template.
  CodeGenerator(const Grammar& grammar, SymbolTable& table, std::string output_name);
  ~CodeGenerator() override;

  // Shift hook: allocates the labels of IF, WHILE and FOR.
  void on_shift(const Token& token) override;
  // Reduce hook: runs the template of `production`.
  void on_reduce(int production, const Token& token) override;

  // The complete assembly file. Valid after the start production was
  // reduced.
  std::string finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// The declarations section and constant pool shared by every program.
inline constexpr std::string_view kErrorStrings[][2] = {
    {"ERR_DIV_ZERO", "LXG run-time error: Division by zero"},
    {"ERR_NEG_EXPONENT", "LXG run-time error: Negative exponent"},
    {"ERR_BOT_BOUNDERY", "LXG run-time error: Array index out of range (index < 0)"},
    {"ERR_TOP_BOUNDERY", "LXG run-time error: Array index out of range (index > top)"},
    {"ERR_ZERO_INDEX", "LXG run-time error: Writing to the zero-index element of an array"},
    {"ERR_ZERO_DENOM", "LXG run-time error: A zero denominator used by FOR-DO loop"},
    {"ERR_RECURS_CALL", "LXG run-time error: Recursive function call"},
};

}  // namespace lxg

#endif  // LXG_CODEGEN_HPP_
