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

#ifndef LXG_MOON_HPP_
#define LXG_MOON_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lxg::moon {

inline constexpr std::uint32_t kWordSize = 4;
inline constexpr std::uint32_t kDefaultMemory = 64 * 1024;
inline constexpr std::int64_t kDefaultFuel = 10'000'000;

enum class Op {
  kLw, kSw,
  kAdd, kSub, kMul, kDiv,
  kCgt, kCge, kCle, kClt, kCeq, kCne, kCgti,
  kBz, kBnz, kJ, kJl, kJr, kHlt,
};

std::string_view op_name(Op op);

// Library routines serviced by the machine itself when called with jl.
enum class Intrinsic {
  kNone,
  kInitSp,  // Sy_Init_SP
  kPush,    // Sy_Push: pushes the word that follows the call
  kPushW,   // Sy_PushW: pushes the word stored at that word's address
  kPop,     // Sy_Pop: pops into the address that follows the call
  kWrites, kWriten, kWritec, kReadn, kReadc, kSpace, kLine,
};

struct Instruction {
  Op op = Op::kHlt;
  int ra = 0;  // destination (or source for sw, tested for bz/bnz, link for jl)
  int rb = 0;  // first source, or base register for lw/sw
  int rc = 0;
  std::int32_t imm = 0;  // offset, immediate or branch target
  Intrinsic intrinsic = Intrinsic::kNone;
  int line = 0;
  std::string text;
};

struct Program {
  std::vector<std::uint8_t> image;  // initial memory; code slots are zero
  std::map<std::uint32_t, Instruction> code;
  std::map<std::string, std::uint32_t, std::less<>> labels;
  std::uint32_t entry = 0;
  std::uint32_t end = 0;  // first byte past code and data
};

// Two-pass assembly. Throws CompileError(Phase::kAssemble).
Program assemble(std::string_view text, std::uint32_t memory_size = kDefaultMemory);

class Machine {
 public:
  explicit Machine(const Program& program);

  std::int32_t reg(int r) const { return regs_.at(r); }
  void set_reg(int r, std::int32_t value);
  // Throw std::out_of_range on unaligned or out-of-bounds access.
  std::int32_t word(std::uint32_t address) const;
  void set_word(std::uint32_t address, std::int32_t value);
  std::uint8_t byte(std::uint32_t address) const { return memory_.at(address); }
  std::uint32_t memory_size() const { return static_cast<std::uint32_t>(memory_.size()); }
  // Value stored under a label (first word).
  std::int32_t word_at(const Program& program, std::string_view label) const;

 private:
  std::array<std::int32_t, 16> regs_{};
  std::vector<std::uint8_t> memory_;
};

enum class RunStatus { kHalted, kFuelExhausted, kFault };

std::string_view run_status_name(RunStatus status);

struct RunOptions {
  std::string input;
  std::int64_t fuel = kDefaultFuel;
  bool trace = false;
};

struct RunResult {
  RunStatus status = RunStatus::kHalted;
  std::string output;
  std::string trace;
  std::string error;
  int error_line = 0;
  std::int64_t steps = 0;
  Machine machine;
};

RunResult run(const Program& program, const RunOptions& options = {});

}  // namespace lxg::moon

#endif  // LXG_MOON_HPP_
