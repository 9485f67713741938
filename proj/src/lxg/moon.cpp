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

#include "lxg/moon.hpp"

#include <fmt/core.h>

#include <cctype>
#include <charconv>
#include <optional>
#include <stdexcept>
#include <tuple>

#include "lxg/errors.hpp"

namespace lxg::moon {

namespace {

struct OpInfo {
  std::string_view name;
  Op op;
};

constexpr OpInfo kOps[] = {
    {"lw", Op::kLw},     {"sw", Op::kSw},     {"add", Op::kAdd}, {"sub", Op::kSub},
    {"mul", Op::kMul},   {"div", Op::kDiv},   {"cgt", Op::kCgt}, {"cge", Op::kCge},
    {"cle", Op::kCle},   {"clt", Op::kClt},   {"ceq", Op::kCeq}, {"cne", Op::kCne},
    {"cgti", Op::kCgti}, {"bz", Op::kBz},     {"bnz", Op::kBnz}, {"j", Op::kJ},
    {"jl", Op::kJl},     {"jr", Op::kJr},     {"hlt", Op::kHlt},
};

struct IntrinsicInfo {
  std::string_view name;
  Intrinsic id;
};

constexpr IntrinsicInfo kIntrinsics[] = {
    {"Sy_Init_SP", Intrinsic::kInitSp}, {"Sy_Push", Intrinsic::kPush},
    {"Sy_PushW", Intrinsic::kPushW},    {"Sy_Pop", Intrinsic::kPop},
    {"WRITES", Intrinsic::kWrites},     {"WRITEN", Intrinsic::kWriten},
    {"WRITEC", Intrinsic::kWritec},     {"READN", Intrinsic::kReadn},
    {"READC", Intrinsic::kReadc},       {"SPACE", Intrinsic::kSpace},
    {"LINE", Intrinsic::kLine},
};

std::optional<Op> find_op(std::string_view name) {
  for (const auto& o : kOps) {
    if (o.name == name) return o.op;
  }
  return std::nullopt;
}

Intrinsic find_intrinsic(std::string_view name) {
  for (const auto& i : kIntrinsics) {
    if (i.name == name) return i.id;
  }
  return Intrinsic::kNone;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Drops a '%' comment that is not inside a string literal.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '%' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::vector<std::string> split_operands(std::string_view s) {
  std::vector<std::string> out;
  s = trim(s);
  if (s.empty()) return out;
  bool quoted = false;
  std::string cur;
  for (char c : s) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      out.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.emplace_back(trim(cur));
  return out;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return v;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

struct Line {
  int number = 0;
  std::string label;
  std::string mnemonic;
  std::vector<std::string> operands;
  std::string text;
  std::uint32_t address = 0;
};

class Assembler {
 public:
  Assembler(std::string_view text, std::uint32_t memory_size) : memory_size_(memory_size) {
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t nl = text.find('\n', start);
      if (nl == std::string_view::npos) nl = text.size();
      ++number;
      parse_line(text.substr(start, nl - start), number);
      start = nl + 1;
    }
  }

  Program run() {
    layout();
    emit();
    return std::move(program_);
  }

 private:
  [[noreturn]] void fail(int line, std::string message) const {
    throw CompileError(Phase::kAssemble, std::move(message), line, 0);
  }

  void parse_line(std::string_view raw, int number) {
    std::string_view body = strip_comment(raw);
    if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
    if (trim(body).empty()) return;
    Line line;
    line.number = number;
    std::string_view rest = body;
    if (!std::isspace(static_cast<unsigned char>(body.front()))) {
      std::size_t end = 0;
      while (end < body.size() && !std::isspace(static_cast<unsigned char>(body[end]))) ++end;
      line.label = std::string(body.substr(0, end));
      if (!is_identifier(line.label)) fail(number, fmt::format("invalid label '{}'", line.label));
      rest = body.substr(end);
    }
    rest = trim(rest);
    if (!rest.empty()) {
      std::size_t end = 0;
      while (end < rest.size() && !std::isspace(static_cast<unsigned char>(rest[end]))) ++end;
      line.mnemonic = std::string(rest.substr(0, end));
      line.operands = split_operands(rest.substr(end));
      line.text = fmt::format("{} {}", line.mnemonic, trim(rest.substr(end)));
      if (line.operands.empty()) line.text = line.mnemonic;
    }
    lines_.push_back(std::move(line));
  }

  std::uint32_t size_of(const Line& line, std::uint32_t address) const {
    const std::string& m = line.mnemonic;
    if (m.empty() || m == "entry") return 0;
    if (find_op(m)) return kWordSize;
    if (m == "dw") return kWordSize * static_cast<std::uint32_t>(line.operands.size());
    if (m == "db") {
      std::uint32_t n = 0;
      for (const auto& op : line.operands) {
        if (op.size() >= 2 && op.front() == '"' && op.back() == '"') {
          n += static_cast<std::uint32_t>(op.size() - 2);
        } else {
          ++n;
        }
      }
      return n;
    }
    if (m == "res") {
      if (line.operands.size() != 1) fail(line.number, "res takes one operand");
      auto n = parse_int(line.operands[0]);
      if (!n || *n < 0) fail(line.number, fmt::format("invalid res size '{}'", line.operands[0]));
      return static_cast<std::uint32_t>(*n);
    }
    if (m == "align") return (kWordSize - address % kWordSize) % kWordSize;
    fail(line.number, fmt::format("unknown mnemonic '{}'", m));
  }

  void layout() {
    std::uint32_t address = 0;
    for (auto& line : lines_) {
      if (find_op(line.mnemonic) && address % kWordSize != 0) {
        fail(line.number, "instruction is not word aligned");
      }
      if (line.mnemonic == "dw" && address % kWordSize != 0) {
        fail(line.number, "misaligned dw directive");
      }
      line.address = address;
      if (!line.label.empty()) {
        if (!program_.labels.emplace(line.label, address).second) {
          fail(line.number, fmt::format("duplicate label '{}'", line.label));
        }
      }
      address += size_of(line, address);
      if (address > memory_size_) fail(line.number, "program does not fit in memory");
    }
    program_.end = address;
    program_.image.assign(memory_size_, 0);
  }

  std::int32_t value(const std::string& operand, int line) const {
    if (auto n = parse_int(operand)) {
      if (*n < INT32_MIN || *n > UINT32_MAX) fail(line, fmt::format("value {} out of range", operand));
      return static_cast<std::int32_t>(static_cast<std::uint32_t>(*n));
    }
    auto it = program_.labels.find(operand);
    if (it == program_.labels.end()) fail(line, fmt::format("undefined label '{}'", operand));
    return static_cast<std::int32_t>(it->second);
  }

  int reg(const std::string& operand, int line) const {
    if (operand.size() >= 2 && (operand[0] == 'R' || operand[0] == 'r')) {
      if (auto n = parse_int(std::string_view(operand).substr(1)); n && *n >= 0 && *n <= 15) {
        return static_cast<int>(*n);
      }
    }
    fail(line, fmt::format("expected a register, found '{}'", operand));
  }

  // "K(Rj)"
  std::pair<std::int32_t, int> address(const std::string& operand, int line) const {
    const auto open = operand.find('(');
    if (open == std::string::npos || operand.back() != ')') {
      fail(line, fmt::format("expected K(Rj), found '{}'", operand));
    }
    const std::string k(trim(std::string_view(operand).substr(0, open)));
    const std::string r(trim(std::string_view(operand).substr(open + 1, operand.size() - open - 2)));
    return {value(k, line), reg(r, line)};
  }

  void expect(const Line& line, std::size_t n) const {
    if (line.operands.size() != n) {
      fail(line.number, fmt::format("'{}' takes {} operand(s), found {}", line.mnemonic, n,
                                    line.operands.size()));
    }
  }

  void put_word(std::uint32_t at, std::int32_t v) {
    const auto u = static_cast<std::uint32_t>(v);
    for (std::uint32_t i = 0; i < kWordSize; ++i) program_.image[at + i] = (u >> (8 * i)) & 0xff;
  }

  void emit() {
    bool have_entry = false;
    bool pending_entry = false;
    for (const auto& line : lines_) {
      const std::string& m = line.mnemonic;
      if (m == "entry") {
        if (have_entry || pending_entry) fail(line.number, "more than one entry directive");
        pending_entry = true;
        continue;
      }
      if (m == "dw") {
        std::uint32_t at = line.address;
        for (const auto& op : line.operands) {
          put_word(at, value(op, line.number));
          at += kWordSize;
        }
        continue;
      }
      if (m == "db") {
        std::uint32_t at = line.address;
        for (const auto& op : line.operands) {
          if (op.size() >= 2 && op.front() == '"' && op.back() == '"') {
            for (std::size_t i = 1; i + 1 < op.size(); ++i) {
              program_.image[at++] = static_cast<std::uint8_t>(op[i]);
            }
          } else {
            const std::int32_t b = value(op, line.number);
            if (b < 0 || b > 255) fail(line.number, fmt::format("byte value {} out of range", op));
            program_.image[at++] = static_cast<std::uint8_t>(b);
          }
        }
        continue;
      }
      auto op = find_op(m);
      if (!op) continue;
      Instruction ins;
      ins.op = *op;
      ins.line = line.number;
      ins.text = line.text;
      const auto& o = line.operands;
      switch (*op) {
        case Op::kLw: {
          expect(line, 2);
          ins.ra = reg(o[0], line.number);
          std::tie(ins.imm, ins.rb) = address(o[1], line.number);
          break;
        }
        case Op::kSw: {
          expect(line, 2);
          std::tie(ins.imm, ins.rb) = address(o[0], line.number);
          ins.ra = reg(o[1], line.number);
          break;
        }
        case Op::kCgti:
          expect(line, 3);
          ins.ra = reg(o[0], line.number);
          ins.rb = reg(o[1], line.number);
          ins.imm = value(o[2], line.number);
          break;
        case Op::kBz:
        case Op::kBnz:
          expect(line, 2);
          ins.ra = reg(o[0], line.number);
          ins.imm = value(o[1], line.number);
          break;
        case Op::kJ:
          expect(line, 1);
          ins.imm = value(o[0], line.number);
          break;
        case Op::kJl: {
          expect(line, 2);
          ins.ra = reg(o[0], line.number);
          if (!program_.labels.count(o[1]) && find_intrinsic(o[1]) != Intrinsic::kNone) {
            ins.intrinsic = find_intrinsic(o[1]);
          } else {
            ins.imm = value(o[1], line.number);
          }
          break;
        }
        case Op::kJr:
          expect(line, 1);
          ins.ra = reg(o[0], line.number);
          break;
        case Op::kHlt:
          expect(line, 0);
          break;
        default:
          expect(line, 3);
          ins.ra = reg(o[0], line.number);
          ins.rb = reg(o[1], line.number);
          ins.rc = reg(o[2], line.number);
          break;
      }
      if (pending_entry) {
        program_.entry = line.address;
        pending_entry = false;
        have_entry = true;
      }
      program_.code.emplace(line.address, std::move(ins));
    }
    if (!have_entry) fail(0, "no entry directive before an instruction");
  }

  std::uint32_t memory_size_;
  std::vector<Line> lines_;
  Program program_;
};

struct Fault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::int32_t wrap(std::int64_t v) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(static_cast<std::uint64_t>(v)));
}

class Executor {
 public:
  Executor(const Program& p, const RunOptions& o, RunResult& r)
      : program_(p), options_(o), result_(r), m_(r.machine) {}

  void run() {
    std::uint32_t pc = program_.entry;
    const Instruction* current = nullptr;
    try {
      while (true) {
        if (result_.steps >= options_.fuel) {
          result_.status = RunStatus::kFuelExhausted;
          result_.error = fmt::format("fuel exhausted after {} instructions", result_.steps);
          result_.error_line = current ? current->line : 0;
          return;
        }
        auto it = program_.code.find(pc);
        if (it == program_.code.end()) throw Fault(fmt::format("jump outside code to address {}", pc));
        current = &it->second;
        ++result_.steps;
        change_.clear();
        const std::uint32_t at = pc;
        const bool halted = step(*current, pc);
        if (options_.trace) {
          result_.trace += fmt::format("{:>8} {:>6} {:<28} {}\n", result_.steps, at, current->text,
                                       change_);
        }
        if (halted) {
          result_.status = RunStatus::kHalted;
          return;
        }
      }
    } catch (const std::exception& e) {
      result_.status = RunStatus::kFault;
      result_.error = e.what();
      result_.error_line = current ? current->line : 0;
    }
  }

 private:
  std::int32_t r(int i) const { return m_.reg(i); }

  void set(int i, std::int32_t v) {
    m_.set_reg(i, v);
    if (i != 0) change_ += fmt::format("R{}={} ", i, v);
  }

  std::uint32_t checked(std::int64_t address) const {
    if (address < 0 || address + kWordSize > m_.memory_size() || address % kWordSize != 0) {
      throw Fault(fmt::format("invalid memory access at address {}", address));
    }
    return static_cast<std::uint32_t>(address);
  }

  std::int32_t load(std::int64_t address) const { return m_.word(checked(address)); }

  void store(std::int64_t address, std::int32_t v) {
    const std::uint32_t a = checked(address);
    if (program_.code.count(a)) throw Fault(fmt::format("write into code at address {}", a));
    m_.set_word(a, v);
    change_ += fmt::format("M[{}]={} ", a, v);
  }

  void push(std::int32_t v) {
    const std::int64_t sp = static_cast<std::int64_t>(r(15)) - kWordSize;
    if (sp < program_.end) throw Fault("stack overflow");
    set(15, wrap(sp));
    store(sp, v);
  }

  std::int32_t pop() {
    const std::int64_t sp = static_cast<std::uint32_t>(r(15));
    if (sp + kWordSize > m_.memory_size()) throw Fault("stack underflow");
    const std::int32_t v = load(sp);
    set(15, wrap(sp + kWordSize));
    return v;
  }

  void write_string(std::uint32_t address) {
    while (true) {
      if (address >= m_.memory_size()) throw Fault("unterminated string");
      const std::uint8_t c = m_.byte(address++);
      if (c == 0) return;
      result_.output.push_back(static_cast<char>(c));
    }
  }

  std::int32_t read_number() {
    const std::string& in = options_.input;
    while (input_pos_ < in.size() && std::isspace(static_cast<unsigned char>(in[input_pos_]))) {
      ++input_pos_;
    }
    std::size_t end = input_pos_;
    if (end < in.size() && (in[end] == '-' || in[end] == '+')) ++end;
    const std::size_t digits = end;
    while (end < in.size() && std::isdigit(static_cast<unsigned char>(in[end]))) ++end;
    if (end == digits) throw Fault("READN: no integer on input");
    auto v = parse_int(std::string_view(in).substr(input_pos_, end - input_pos_));
    input_pos_ = end;
    if (!v) throw Fault("READN: integer out of range");
    return wrap(*v);
  }

  void intrinsic(Intrinsic id, std::uint32_t& pc) {
    const std::uint32_t ret = static_cast<std::uint32_t>(r(14));
    switch (id) {
      case Intrinsic::kInitSp:
        set(15, static_cast<std::int32_t>(m_.memory_size()));
        pc = ret;
        return;
      case Intrinsic::kPush:
        push(load(ret));
        pc = ret + kWordSize;
        return;
      case Intrinsic::kPushW:
        push(load(static_cast<std::uint32_t>(load(ret))));
        pc = ret + kWordSize;
        return;
      case Intrinsic::kPop:
        store(static_cast<std::uint32_t>(load(ret)), pop());
        pc = ret + kWordSize;
        return;
      case Intrinsic::kWrites:
        write_string(static_cast<std::uint32_t>(load(static_cast<std::uint32_t>(pop()))));
        break;
      case Intrinsic::kWriten: {
        const std::int32_t width = load(static_cast<std::uint32_t>(pop()));
        const std::int32_t x = load(static_cast<std::uint32_t>(pop()));
        std::string s = std::to_string(x);
        if (width > 0 && s.size() < static_cast<std::size_t>(width)) s.resize(width, ' ');
        result_.output += s;
        break;
      }
      case Intrinsic::kWritec:
        result_.output.push_back(static_cast<char>(load(static_cast<std::uint32_t>(pop())) & 0xff));
        break;
      case Intrinsic::kReadn: {
        const auto addr = static_cast<std::uint32_t>(pop());
        store(addr, read_number());
        break;
      }
      case Intrinsic::kReadc: {
        const auto addr = static_cast<std::uint32_t>(pop());
        const std::string& in = options_.input;
        store(addr, input_pos_ < in.size() ? static_cast<unsigned char>(in[input_pos_++]) : -1);
        break;
      }
      case Intrinsic::kSpace:
      case Intrinsic::kLine: {
        const std::int32_t n = load(static_cast<std::uint32_t>(pop()));
        if (n > 0) result_.output.append(n, id == Intrinsic::kSpace ? ' ' : '\n');
        break;
      }
      case Intrinsic::kNone:
        break;
    }
    pc = ret;
  }

  // Returns true on hlt.
  bool step(const Instruction& i, std::uint32_t& pc) {
    std::uint32_t next = pc + kWordSize;
    const std::int64_t b = r(i.rb);
    const std::int64_t c = r(i.rc);
    switch (i.op) {
      case Op::kLw: set(i.ra, load(b + i.imm)); break;
      case Op::kSw: store(b + i.imm, r(i.ra)); break;
      case Op::kAdd: set(i.ra, wrap(b + c)); break;
      case Op::kSub: set(i.ra, wrap(b - c)); break;
      case Op::kMul: set(i.ra, wrap(b * c)); break;
      case Op::kDiv:
        if (c == 0) throw Fault("division by zero");
        set(i.ra, wrap(b / c));
        break;
      case Op::kCgt: set(i.ra, b > c); break;
      case Op::kCge: set(i.ra, b >= c); break;
      case Op::kCle: set(i.ra, b <= c); break;
      case Op::kClt: set(i.ra, b < c); break;
      case Op::kCeq: set(i.ra, b == c); break;
      case Op::kCne: set(i.ra, b != c); break;
      case Op::kCgti: set(i.ra, b > i.imm); break;
      case Op::kBz:
        if (r(i.ra) == 0) next = static_cast<std::uint32_t>(i.imm);
        break;
      case Op::kBnz:
        if (r(i.ra) != 0) next = static_cast<std::uint32_t>(i.imm);
        break;
      case Op::kJ: next = static_cast<std::uint32_t>(i.imm); break;
      case Op::kJl:
        set(i.ra, static_cast<std::int32_t>(next));
        if (i.intrinsic != Intrinsic::kNone) {
          intrinsic(i.intrinsic, next);
        } else {
          next = static_cast<std::uint32_t>(i.imm);
        }
        break;
      case Op::kJr: next = static_cast<std::uint32_t>(r(i.ra)); break;
      case Op::kHlt: return true;
    }
    pc = next;
    return false;
  }

  const Program& program_;
  const RunOptions& options_;
  RunResult& result_;
  Machine& m_;
  std::string change_;
  std::size_t input_pos_ = 0;
};

}  // namespace

std::string_view op_name(Op op) {
  for (const auto& o : kOps) {
    if (o.op == op) return o.name;
  }
  return "?";
}

std::string_view run_status_name(RunStatus status) {
  switch (status) {
    case RunStatus::kHalted: return "halted";
    case RunStatus::kFuelExhausted: return "fuel-exhausted";
    case RunStatus::kFault: return "fault";
  }
  return "?";
}

Program assemble(std::string_view text, std::uint32_t memory_size) {
  if (memory_size % kWordSize != 0) {
    throw CompileError(Phase::kAssemble, "memory size must be a multiple of the word size");
  }
  return Assembler(text, memory_size).run();
}

Machine::Machine(const Program& program) : memory_(program.image) {}

void Machine::set_reg(int r, std::int32_t value) {
  if (r != 0) regs_.at(r) = value;
}

std::int32_t Machine::word(std::uint32_t address) const {
  if (address % kWordSize != 0 || address + kWordSize > memory_.size()) {
    throw std::out_of_range(fmt::format("invalid word address {}", address));
  }
  std::uint32_t u = 0;
  for (std::uint32_t i = 0; i < kWordSize; ++i) u |= std::uint32_t{memory_[address + i]} << (8 * i);
  return static_cast<std::int32_t>(u);
}

void Machine::set_word(std::uint32_t address, std::int32_t value) {
  if (address % kWordSize != 0 || address + kWordSize > memory_.size()) {
    throw std::out_of_range(fmt::format("invalid word address {}", address));
  }
  const auto u = static_cast<std::uint32_t>(value);
  for (std::uint32_t i = 0; i < kWordSize; ++i) memory_[address + i] = (u >> (8 * i)) & 0xff;
}

std::int32_t Machine::word_at(const Program& program, std::string_view label) const {
  auto it = program.labels.find(label);
  if (it == program.labels.end()) throw std::out_of_range(fmt::format("no label '{}'", label));
  return word(it->second);
}

RunResult run(const Program& program, const RunOptions& options) {
  RunResult result{RunStatus::kHalted, {}, {}, {}, 0, 0, Machine(program)};
  Executor(program, options, result).run();
  return result;
}

}  // namespace lxg::moon
