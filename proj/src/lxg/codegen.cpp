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

#include "lxg/codegen.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "lxg/errors.hpp"

namespace lxg {

std::string GenNamePools::make(std::string_view prefix, int n) {
  return fmt::format("{}{:05d}", prefix, n);
}

int RegisterFile::acquire(int line) {
  for (int r = kFirst; r <= kLast; ++r) {
    if (!used_[r]) {
      used_[r] = true;
      return r;
    }
  }
  throw CompileError(Phase::kCodegen,
                     "expression needs more than 13 registers; simplify it", line, 0);
}

void RegisterFile::release(int reg) {
  if (reg < kFirst || reg > kLast || !used_[reg]) {
    throw std::logic_error(fmt::format("release of free register R{}", reg));
  }
  used_[reg] = false;
}

bool RegisterFile::all_free() const {
  return std::none_of(used_.begin(), used_.end(), [](bool b) { return b; });
}

namespace {

using Code = std::vector<std::string>;

enum class Rule {
  kProgram,
  kBodyWithProc,
  kBodyMain,
  kListFirst,
  kListNext,
  kBlock,
  kFor,
  kWhile,
  kIfThen,
  kIfThenElse,
  kAssign,
  kDivide,
  kRemainder,
  kDivideRemainder,
  kBoolAssign,
  kStrAssign,
  kIntSwap,
  kBoolSwap,
  kStrSwap,
  kCallStmt,
  kForListFirst,
  kForListNext,
  kForScalar,
  kForRange,
  kCallBare,
  kCallArgs,
  kArgsFirst,
  kArgsNext,
  kArgExpr,
  kArgArray,
  kPass,
  kAdd,
  kSub,
  kMul,
  kPower,
  kPlus,
  kNegate,
  kParen,
  kLoad,
  kNumber,
  kElement,
  kVariable,
  kOr,
  kAnd,
  kNot,
  kBoolLiteral,
  kCompare,
  kCongruence,
  kString,
  kArray,
  kProcDecl,
  kProcHead,
  kNoCode,
};

struct RuleSpec {
  std::string_view text;
  Rule rule;
  std::string_view op = {};
};

constexpr RuleSpec kRules[] = {
    {"program -> bof prgm-body eof", Rule::kProgram},
    {"prgm-body -> proc-decl ; prgm-body", Rule::kBodyWithProc},
    {"prgm-body -> stmt-list", Rule::kBodyMain},
    {"stmt-list -> stmt", Rule::kListFirst},
    {"stmt-list -> stmt-list ; stmt", Rule::kListNext},
    {"stmt -> BEGIN stmt-list END", Rule::kBlock},
    {"stmt -> FOR int-dest := for-list DO stmt", Rule::kFor},
    {"stmt -> WHILE bool-exp DO stmt", Rule::kWhile},
    {"stmt -> IF bool-exp THEN stmt", Rule::kIfThen},
    {"stmt -> IF bool-exp THEN stmt ELSE stmt", Rule::kIfThenElse},
    {"stmt -> int-dest := int-exp", Rule::kAssign},
    {"stmt -> int-dest := int-exp / int-exp", Rule::kDivide},
    {"stmt -> REM int-dest := int-exp / int-exp", Rule::kRemainder},
    {"stmt -> int-dest REM int-dest := int-exp / int-exp", Rule::kDivideRemainder},
    {"stmt -> bool-ident := bool-exp", Rule::kBoolAssign},
    {"stmt -> str-ident := str-exp", Rule::kStrAssign},
    {"stmt -> int-dest :=: int-dest", Rule::kIntSwap},
    {"stmt -> bool-ident :=: bool-ident", Rule::kBoolSwap},
    {"stmt -> str-ident :=: str-ident", Rule::kStrSwap},
    {"stmt -> proc-call", Rule::kCallStmt},
    {"for-list -> for-item", Rule::kForListFirst},
    {"for-list -> for-list , for-item", Rule::kForListNext},
    {"for-item -> int-exp", Rule::kForScalar},
    {"for-item -> int-exp ,..., int-exp", Rule::kForRange},
    {"proc-call -> proc-ident", Rule::kCallBare},
    {"proc-call -> proc-ident ( exp-list )", Rule::kCallArgs},
    {"exp-list -> exp-item", Rule::kArgsFirst},
    {"exp-list -> exp-list , exp-item", Rule::kArgsNext},
    {"exp-item -> int-exp", Rule::kArgExpr},
    {"exp-item -> bool-exp", Rule::kArgExpr},
    {"exp-item -> str-exp", Rule::kArgExpr},
    {"exp-item -> arr-ident", Rule::kArgArray},
    {"int-exp -> int-term", Rule::kPass},
    {"int-exp -> int-exp + int-term", Rule::kAdd},
    {"int-exp -> int-exp - int-term", Rule::kSub},
    {"int-term -> int-fact", Rule::kPass},
    {"int-term -> int-term * int-fact", Rule::kMul},
    {"int-fact -> int-prim", Rule::kPass},
    {"int-fact -> int-prim ^ int-fact", Rule::kPower},
    {"int-fact -> + int-fact", Rule::kPlus},
    {"int-fact -> - int-fact", Rule::kNegate},
    {"int-prim -> int-dest", Rule::kLoad},
    {"int-prim -> ( int-exp )", Rule::kParen},
    {"int-prim -> number", Rule::kNumber},
    {"int-dest -> arr-ident [ int-exp ]", Rule::kElement},
    {"int-dest -> int-ident", Rule::kPass},
    {"int-ident -> iIdentifier", Rule::kVariable},
    {"bool-exp -> bool-term", Rule::kPass},
    {"bool-exp -> bool-exp OR bool-term", Rule::kOr},
    {"bool-term -> bool-fact", Rule::kPass},
    {"bool-term -> bool-term AND bool-fact", Rule::kAnd},
    {"bool-fact -> bool-prim", Rule::kPass},
    {"bool-fact -> NOT bool-fact", Rule::kNot},
    {"bool-prim -> bool-ident", Rule::kLoad},
    {"bool-prim -> bool-reln", Rule::kPass},
    {"bool-prim -> ( bool-exp )", Rule::kParen},
    {"bool-prim -> boolean", Rule::kBoolLiteral},
    {"bool-reln -> int-exp < int-exp", Rule::kCompare, "clt"},
    {"bool-reln -> int-exp <= int-exp", Rule::kCompare, "cle"},
    {"bool-reln -> int-exp = int-exp", Rule::kCompare, "ceq"},
    {"bool-reln -> int-exp >= int-exp", Rule::kCompare, "cge"},
    {"bool-reln -> int-exp > int-exp", Rule::kCompare, "cgt"},
    {"bool-reln -> int-exp # int-exp", Rule::kCompare, "cne"},
    {"bool-reln -> int-exp = int-exp MOD int-exp", Rule::kCongruence, "ceq"},
    {"bool-reln -> int-exp # int-exp MOD int-exp", Rule::kCongruence, "cne"},
    {"bool-ident -> bIdentifier", Rule::kVariable},
    {"str-exp -> str-ident", Rule::kLoad},
    {"str-exp -> string", Rule::kString},
    {"str-ident -> sIdentifier", Rule::kVariable},
    {"arr-ident -> aIdentifier", Rule::kArray},
    {"ident-list -> ident-item", Rule::kNoCode},
    {"ident-list -> ident-item , ident-list", Rule::kNoCode},
    {"ident-item -> int-ident", Rule::kNoCode},
    {"ident-item -> bool-ident", Rule::kNoCode},
    {"ident-item -> str-ident", Rule::kNoCode},
    {"ident-item -> arr-ident", Rule::kNoCode},
    {"proc-decl -> PROCEDURE proc-head ; stmt-list END", Rule::kProcDecl},
    {"proc-head -> proc-ident", Rule::kProcHead},
    {"proc-head -> proc-ident ( ident-list )", Rule::kProcHead},
    {"proc-ident -> uIdentifier", Rule::kProcHead},
};

constexpr std::string_view kTrapRecursive = "LB_RECURSIVE_CALL";
constexpr std::string_view kTrapZeroDenominator = "LB_FOR_DO_ZERO_DEN";
constexpr std::string_view kTrapZeroIndex = "LB_ARRAY_ZERO_INDEX";
constexpr std::string_view kTrapLowBound = "LB_ARRAY_LOW_BOUND";
constexpr std::string_view kTrapUpBound = "LB_ARRAY_UP_BOUND";
constexpr std::string_view kTrapDivZero = "LB_DIV_ZERO";
constexpr std::string_view kTrapNegExponent = "LB_NEG_EXPONENT";
constexpr std::string_view kExit = "LB_EXIT";

struct Trap {
  std::string_view title;
  std::string_view label;
  std::string_view message;
};

constexpr Trap kTraps[] = {
    {"Recursive function call", kTrapRecursive, "ERR_RECURS_CALL"},
    {"FOR-DO zero denominator", kTrapZeroDenominator, "ERR_ZERO_DENOM"},
    {"array zero-index writing", kTrapZeroIndex, "ERR_ZERO_INDEX"},
    {"array low boundery", kTrapLowBound, "ERR_BOT_BOUNDERY"},
    {"array up boundery", kTrapUpBound, "ERR_TOP_BOUNDERY"},
    {"division by zero", kTrapDivZero, "ERR_DIV_ZERO"},
    {"negative exponent", kTrapNegExponent, "ERR_NEG_EXPONENT"},
};

std::string ins(std::string_view mnemonic, std::string_view operands = {}) {
  if (operands.empty()) return fmt::format("    {}", mnemonic);
  return fmt::format("    {:<3} {}", mnemonic, operands);
}

std::string reg(int r) { return fmt::format("R{}", r); }

std::string mem(std::string_view base, int r) { return fmt::format("{}(R{})", base, r); }

void append(Code& to, Code&& from) {
  to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

// `db` operand list for a string: printable runs quoted, anything else as
// a byte value, terminated by 0.
std::string db_operands(std::string_view text) {
  std::string out;
  std::string run;
  auto flush = [&] {
    if (run.empty()) return;
    out += fmt::format("\"{}\",", run);
    run.clear();
  };
  for (unsigned char c : text) {
    if (c >= 0x20 && c < 0x7f && c != '"') {
      run.push_back(static_cast<char>(c));
    } else {
      flush();
      out += fmt::format("{},", static_cast<int>(c));
    }
  }
  flush();
  return out + "0";
}

std::string decl(std::string_view label, std::string_view directive, std::string_view operand) {
  return fmt::format("{:<12} {:<4} {}", label, directive, operand);
}

// Address of a memory word: base label plus the contents of a register.
struct Loc {
  std::string base;
  int reg = 0;
  std::vector<int> held;
  std::string text() const { return mem(base, reg); }
};

struct ForItem {
  ExprPtr start;
  ExprPtr end;
  std::string step;
  std::string up;
  std::string down;
  std::string exit;
  int line = 0;
};

struct Arg {
  ExprPtr expr;
  int array = -1;
};

struct Value {
  Token token;
  ExprPtr expr;
  Dest dest;
  Code code;
  std::vector<ForItem> items;
  std::vector<Arg> args;
  int symbol = -1;
  int line = 0;
};

struct IfLabels {
  std::string then_label, dispatch, else_label, join;
};

struct WhileLabels {
  std::string top, dispatch, body;
};

struct ForLabels {
  std::string calc, body, slot;
};

}  // namespace

struct CodeGenerator::Impl {
  Impl(const Grammar& g, SymbolTable& t, std::string name)
      : grammar(g), table(t), output_name(std::move(name)) {
    std::map<std::string, const RuleSpec*, std::less<>> by_text;
    for (const auto& spec : kRules) by_text.emplace(std::string(spec.text), &spec);
    for (const auto& p : grammar.productions()) {
      if (p.lhs == grammar.augmented_start()) {
        rules.push_back(nullptr);
        continue;
      }
      const std::string text = grammar.production_text(p.index);
      auto it = by_text.find(text);
      if (it == by_text.end()) {
        throw CompileError(Phase::kCodegen, fmt::format("no code template for production '{}'", text));
      }
      rules.push_back(it->second);
    }
  }

  const Grammar& grammar;
  SymbolTable& table;
  std::string output_name;
  std::vector<const RuleSpec*> rules;

  GenNamePools names;
  RegisterFile regs;
  std::vector<Value> values;
  std::vector<IfLabels> ifs;
  std::vector<WhileLabels> whiles;
  std::vector<ForLabels> fors;

  bool finished = false;
  Code program;
  std::vector<std::string> procedure_slots;
  std::vector<std::string> for_slots;
  std::vector<std::string> steps;
  std::vector<std::string> arg_temps;

  // ---- symbols ----

  const SymbolEntry& entry(int symbol, int line) const {
    if (symbol < 0 || symbol >= table.size()) {
      throw CompileError(Phase::kCodegen, "reference to an unresolved identifier", line, 0);
    }
    return table.at(symbol);
  }

  // Reference parameters and array parameters hold an address.
  static bool indirect(const SymbolEntry& e) {
    return e.is_param && (!e.is_value || e.type == VarType::kArray);
  }

  // ---- expressions ----

  int target(int into, int line) { return into != 0 ? into : regs.acquire(line); }

  void drop(int r, int keep) {
    if (r != keep) regs.release(r);
  }

  void release(Loc& loc) {
    for (int r : loc.held) regs.release(r);
    loc.held.clear();
  }

  void load_size(const SymbolEntry& a, int into, Code& out) {
    out.push_back(ins("lw", fmt::format("{},{}", reg(into), mem(a.label(), 0))));
    if (indirect(a)) out.push_back(ins("lw", fmt::format("{},{}", reg(into), mem("0", into))));
  }

  Loc locate(const Dest& d, bool write, Code& out) {
    const SymbolEntry& e = entry(d.symbol, d.line);
    if (!d.index) {
      if (!indirect(e)) return {e.label(), 0, {}};
      const int t = regs.acquire(d.line);
      out.push_back(ins("lw", fmt::format("{},{}", reg(t), mem(e.label(), 0))));
      return {"0", t, {t}};
    }
    const int ri = eval(*d.index, out);
    const int rt = regs.acquire(d.line);
    out.push_back(ins("clt", fmt::format("{},{},R0", reg(rt), reg(ri))));
    out.push_back(ins("bnz", fmt::format("{},{}", reg(rt), kTrapLowBound)));
    if (write) out.push_back(ins("bz", fmt::format("{},{}", reg(ri), kTrapZeroIndex)));
    load_size(e, rt, out);
    out.push_back(ins("cgt", fmt::format("{},{},{}", reg(rt), reg(ri), reg(rt))));
    out.push_back(ins("bnz", fmt::format("{},{}", reg(rt), kTrapUpBound)));
    out.push_back(ins("add", fmt::format("{},{},{}", reg(ri), reg(ri), reg(ri))));
    out.push_back(ins("add", fmt::format("{},{},{}", reg(ri), reg(ri), reg(ri))));
    Loc loc{e.label(), ri, {ri}};
    if (indirect(e)) {
      out.push_back(ins("lw", fmt::format("{},{}", reg(rt), mem(e.label(), 0))));
      out.push_back(ins("add", fmt::format("{},{},{}", reg(ri), reg(ri), reg(rt))));
      loc.base = "0";
    }
    regs.release(rt);
    return loc;
  }

  int load(const Dest& d, Code& out, int into = 0) {
    const SymbolEntry& e = entry(d.symbol, d.line);
    if (!d.index) {
      const int r = target(into, d.line);
      out.push_back(ins("lw", fmt::format("{},{}", reg(r), mem(e.label(), 0))));
      if (indirect(e)) out.push_back(ins("lw", fmt::format("{},{}", reg(r), mem("0", r))));
      return r;
    }
    Loc loc = locate(d, false, out);
    const int r = into != 0 ? into : loc.reg;
    out.push_back(ins("lw", fmt::format("{},{}", reg(r), loc.text())));
    if (r == loc.reg) loc.held.clear();
    release(loc);
    return r;
  }

  void store(const Loc& loc, int value, Code& out) {
    out.push_back(ins("sw", fmt::format("{},{}", loc.text(), reg(value))));
  }

  int eval(const Expr& e, Code& out, int into = 0) {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::kLoad:
        return load(e.dest, out, into);
      case K::kConst: {
        const int r = target(into, e.line);
        out.push_back(ins("lw", fmt::format("{},{}", reg(r), mem(e.label, 0))));
        return r;
      }
      case K::kBinary:
      case K::kCompare: {
        const int l = eval(*e.lhs, out);
        const int r = eval(*e.rhs, out);
        const int res = into != 0 ? into : r;
        out.push_back(ins(e.op, fmt::format("{},{},{}", reg(res), reg(l), reg(r))));
        regs.release(l);
        drop(r, res);
        return res;
      }
      case K::kNegate:
      case K::kNot: {
        const int x = eval(*e.lhs, out);
        const int res = into != 0 ? into : x;
        if (e.kind == K::kNegate) {
          out.push_back(ins("sub", fmt::format("{},R0,{}", reg(res), reg(x))));
        } else {
          out.push_back(ins("ceq", fmt::format("{},{},R0", reg(res), reg(x))));
        }
        drop(x, res);
        return res;
      }
      case K::kAnd:
      case K::kOr: {
        const int l = eval(*e.lhs, out);
        const int r = eval(*e.rhs, out);
        const int res = into != 0 ? into : r;
        out.push_back(ins("cne", fmt::format("{},{},R0", reg(l), reg(l))));
        out.push_back(ins("cne", fmt::format("{},{},R0", reg(r), reg(r))));
        if (e.kind == K::kAnd) {
          out.push_back(ins("mul", fmt::format("{},{},{}", reg(res), reg(l), reg(r))));
        } else {
          out.push_back(ins("add", fmt::format("{},{},{}", reg(r), reg(l), reg(r))));
          out.push_back(ins("cne", fmt::format("{},{},R0", reg(res), reg(r))));
        }
        regs.release(l);
        drop(r, res);
        return res;
      }
      case K::kPower: {
        const int b = eval(*e.lhs, out);
        const int x = eval(*e.rhs, out);
        const int t = target(into, e.line);
        const int one = regs.acquire(e.line);
        const std::string loop = names.label();
        const std::string done = names.label();
        out.push_back(ins("clt", fmt::format("{},{},R0", reg(t), reg(x))));
        out.push_back(ins("bnz", fmt::format("{},{}", reg(t), kTrapNegExponent)));
        out.push_back(ins("lw", fmt::format("{},{}", reg(t), mem("INT_VAL_ONE", 0))));
        out.push_back(ins("lw", fmt::format("{},{}", reg(one), mem("INT_VAL_ONE", 0))));
        out.push_back(loop);
        out.push_back(ins("bz", fmt::format("{},{}", reg(x), done)));
        out.push_back(ins("mul", fmt::format("{},{},{}", reg(t), reg(t), reg(b))));
        out.push_back(ins("sub", fmt::format("{},{},{}", reg(x), reg(x), reg(one))));
        out.push_back(ins("j", loop));
        out.push_back(done);
        regs.release(b);
        regs.release(x);
        regs.release(one);
        return t;
      }
      case K::kCongruence: {
        const int a = eval(*e.lhs, out);
        const int b = eval(*e.rhs, out);
        const int m = eval(*e.mod, out);
        const int res = into != 0 ? into : b;
        out.push_back(ins("bz", fmt::format("{},{}", reg(m), kTrapDivZero)));
        out.push_back(ins("sub", fmt::format("{},{},{}", reg(b), reg(a), reg(b))));
        out.push_back(ins("div", fmt::format("{},{},{}", reg(a), reg(b), reg(m))));
        out.push_back(ins("mul", fmt::format("{},{},{}", reg(a), reg(a), reg(m))));
        out.push_back(ins("sub", fmt::format("{},{},{}", reg(b), reg(b), reg(a))));
        out.push_back(ins(e.negated ? "cne" : "ceq", fmt::format("{},{},R0", reg(res), reg(b))));
        regs.release(a);
        regs.release(m);
        drop(b, res);
        return res;
      }
    }
    throw std::logic_error("unhandled expression kind");
  }

  // ---- statements ----

  void check_clean(int line) const {
    if (!regs.all_free()) {
      throw std::logic_error(fmt::format("registers still live after the statement at line {}", line));
    }
  }

  Code assign(const Dest& d, const Expr& value) {
    Code out;
    Loc loc = locate(d, true, out);
    const int v = eval(value, out);
    store(loc, v, out);
    regs.release(v);
    release(loc);
    return out;
  }

  Code divide(const Dest* quotient, const Dest* remainder, const Expr& n, const Expr& d, int line) {
    Code out;
    std::optional<Loc> q_loc, r_loc;
    if (quotient) q_loc = locate(*quotient, true, out);
    if (remainder) r_loc = locate(*remainder, true, out);
    const int a = eval(n, out);
    const int b = eval(d, out);
    out.push_back(ins("bz", fmt::format("{},{}", reg(b), kTrapDivZero)));
    const int q = regs.acquire(line);
    out.push_back(ins("div", fmt::format("{},{},{}", reg(q), reg(a), reg(b))));
    if (q_loc) store(*q_loc, q, out);
    if (r_loc) {
      out.push_back(ins("mul", fmt::format("{},{},{}", reg(q), reg(q), reg(b))));
      out.push_back(ins("sub", fmt::format("{},{},{}", reg(a), reg(a), reg(q))));
      store(*r_loc, a, out);
    }
    regs.release(a);
    regs.release(b);
    regs.release(q);
    if (q_loc) release(*q_loc);
    if (r_loc) release(*r_loc);
    return out;
  }

  Code swap(const Dest& x, const Dest& y) {
    Code out;
    Loc lx = locate(x, true, out);
    Loc ly = locate(y, true, out);
    const int vx = regs.acquire(x.line);
    const int vy = regs.acquire(y.line);
    out.push_back(ins("lw", fmt::format("{},{}", reg(vx), lx.text())));
    out.push_back(ins("lw", fmt::format("{},{}", reg(vy), ly.text())));
    store(lx, vy, out);
    store(ly, vx, out);
    regs.release(vx);
    regs.release(vy);
    release(lx);
    release(ly);
    return out;
  }

  void push_address(const SymbolEntry& e, Code& out) {
    out.push_back(ins("jl", indirect(e) ? "R14,Sy_PushW" : "R14,Sy_Push"));
    out.push_back(ins("dw", e.label()));
  }

  Code call(const Token& proc, const std::vector<Arg>& args) {
    Code out;
    const SymbolEntry& p = entry(proc.symbol, proc.line);
    for (const Arg& a : args) {
      if (a.array >= 0) {
        push_address(entry(a.array, proc.line), out);
        continue;
      }
      const Expr& e = *a.expr;
      if (e.kind == Expr::Kind::kLoad && !e.dest.index) {
        push_address(entry(e.dest.symbol, e.line), out);
      } else if (e.kind == Expr::Kind::kConst && e.label.rfind("S_", 0) == 0) {
        out.push_back(ins("jl", "R14,Sy_Push"));
        out.push_back(ins("dw", e.label));
      } else {
        const std::string temp = names.integer();
        arg_temps.push_back(temp);
        const int r = eval(e, out);
        out.push_back(ins("sw", fmt::format("{},{}", mem(temp, 0), reg(r))));
        regs.release(r);
        out.push_back(ins("jl", "R14,Sy_Push"));
        out.push_back(ins("dw", temp));
      }
    }
    out.push_back(ins("jl", fmt::format("R14,{}", p.name)));
    return out;
  }

  Code if_stmt(const Expr& cond, Code&& then_code, Code* else_code, int line) {
    const IfLabels l = ifs.back();
    ifs.pop_back();
    Code out;
    const int rc = regs.acquire(line);
    eval(cond, out, rc);
    out.push_back(ins("j", l.dispatch));
    out.push_back(l.then_label);
    append(out, std::move(then_code));
    out.push_back(ins("j", l.join));
    if (else_code) {
      out.push_back(l.else_label);
      append(out, std::move(*else_code));
      out.push_back(ins("j", l.join));
    }
    out.push_back(l.dispatch);
    out.push_back("%----- IF BOOL_EXP THEN ... -----%");
    out.push_back(ins("bnz", fmt::format("{},{}", reg(rc), l.then_label)));
    if (else_code) {
      out.push_back("%----- ELSE ... -----%");
      out.push_back(ins("j", l.else_label));
    }
    out.push_back(l.join);
    regs.release(rc);
    return out;
  }

  Code while_stmt(const Expr& cond, Code&& body, int line) {
    const WhileLabels l = whiles.back();
    whiles.pop_back();
    Code out;
    out.push_back("%----- WHILE-DO: WHILE -----%");
    out.push_back(l.top);
    const int rc = regs.acquire(line);
    eval(cond, out, rc);
    out.push_back(ins("j", l.dispatch));
    out.push_back("%----- WHILE-DO: DO -----%");
    out.push_back(l.body);
    append(out, std::move(body));
    out.push_back(ins("j", l.top));
    out.push_back(l.dispatch);
    out.push_back("%----- WHILE BOOL_EXP ... -----%");
    out.push_back(ins("bnz", fmt::format("{},{}", reg(rc), l.body)));
    regs.release(rc);
    return out;
  }

  // var := var + step; the step word is loaded first.
  void advance(const Dest& var, const std::string& step, Code& out) {
    const int s = regs.acquire(var.line);
    out.push_back(ins("lw", fmt::format("{},{}", reg(s), mem(step, 0))));
    const int v = load(var, out);
    out.push_back(ins("add", fmt::format("{},{},{}", reg(s), reg(v), reg(s))));
    regs.release(v);
    Loc loc = locate(var, true, out);
    store(loc, s, out);
    release(loc);
    regs.release(s);
  }

  void range_loop(const Dest& var, const ForItem& item, const std::string& head,
                  std::string_view compare, const std::string& body, Code& out) {
    out.push_back(head);
    const int e = eval(*item.end, out);
    const int v = load(var, out);
    out.push_back(ins(compare, fmt::format("{},{},{}", reg(v), reg(v), reg(e))));
    out.push_back(ins("bz", fmt::format("{},{}", reg(v), item.exit)));
    regs.release(v);
    out.push_back(ins("jl", fmt::format("R14,{}", body)));
    advance(var, item.step, out);
    out.push_back(ins("j", head));
    regs.release(e);
  }

  Code for_stmt(const Dest& var, const std::vector<ForItem>& items, Code&& body) {
    const ForLabels l = fors.back();
    fors.pop_back();
    for_slots.push_back(l.slot);
    Code out;
    out.push_back("%-----BEGIN: FOR ... DO ... -----%");
    out.push_back(ins("j", l.calc));
    out.push_back("%-----FOR-DO: DO -----%");
    out.push_back(l.body);
    out.push_back(ins("sw", fmt::format("{},R14", mem(l.slot, 0))));
    append(out, std::move(body));
    out.push_back(ins("lw", fmt::format("R14,{}", mem(l.slot, 0))));
    out.push_back(ins("jr", "R14"));
    out.push_back("%-----FOR-DO: calculation ... -----%");
    out.push_back(l.calc);
    const Expr* previous = nullptr;
    for (const ForItem& item : items) {
      if (!item.end) {
        Loc loc = locate(var, true, out);
        const int r = eval(*item.start, out);
        store(loc, r, out);
        regs.release(r);
        release(loc);
        out.push_back(ins("jl", fmt::format("R14,{}", l.body)));
        previous = item.start.get();
        continue;
      }
      if (previous) {
        out.push_back("%---- denominator ---%");
        const int a = eval(*item.start, out);
        const int b = eval(*previous, out);
        const int d = regs.acquire(item.line);
        out.push_back(ins("sub", fmt::format("{},{},{}", reg(d), reg(a), reg(b))));
        out.push_back(ins("sw", fmt::format("{},{}", mem(item.step, 0), reg(d))));
        out.push_back("%----- zero denominator check -----%");
        out.push_back(ins("bz", fmt::format("{},{}", reg(d), kTrapZeroDenominator)));
        regs.release(a);
        regs.release(b);
        regs.release(d);
      } else {
        const int one = regs.acquire(item.line);
        out.push_back(ins("lw", fmt::format("{},{}", reg(one), mem("INT_VAL_ONE", 0))));
        out.push_back(ins("sw", fmt::format("{},{}", mem(item.step, 0), reg(one))));
        regs.release(one);
      }
      {
        Loc loc = locate(var, true, out);
        const int r = eval(*item.start, out);
        store(loc, r, out);
        regs.release(r);
        release(loc);
      }
      const int s = regs.acquire(item.line);
      out.push_back(ins("lw", fmt::format("{},{}", reg(s), mem(item.step, 0))));
      out.push_back(ins("cgti", fmt::format("{},{},0", reg(s), reg(s))));
      out.push_back(ins("bz", fmt::format("{},{}", reg(s), item.down)));
      regs.release(s);
      range_loop(var, item, item.up, "cle", l.body, out);
      range_loop(var, item, item.down, "cge", l.body, out);
      out.push_back(item.exit);
      previous = item.end.get();
    }
    out.push_back("%----- END: FOR ... DO ... -----%");
    return out;
  }

  Code procedure(const Token& proc, Code&& body) {
    const SymbolEntry& p = entry(proc.symbol, proc.line);
    const std::string ret = names.register_slot(p.name);
    const std::string busy = names.register_slot(p.name);
    std::vector<std::string> saved;
    for (int r = RegisterFile::kFirst; r <= RegisterFile::kLast; ++r) {
      saved.push_back(names.register_slot(p.name));
    }
    procedure_slots.push_back(ret);
    procedure_slots.push_back(busy);
    procedure_slots.insert(procedure_slots.end(), saved.begin(), saved.end());

    Code out;
    out.push_back(fmt::format("%----- procedure {} -----%", p.name));
    out.push_back(p.name);
    out.push_back(ins("sw", fmt::format("{},R14", mem(ret, 0))));
    out.push_back(ins("lw", fmt::format("R14,{}", mem(busy, 0))));
    out.push_back(ins("bnz", fmt::format("R14,{}", kTrapRecursive)));
    out.push_back(ins("lw", fmt::format("R14,{}", mem("INT_VAL_ONE", 0))));
    out.push_back(ins("sw", fmt::format("{},R14", mem(busy, 0))));
    for (int r = RegisterFile::kFirst; r <= RegisterFile::kLast; ++r) {
      out.push_back(ins("sw", fmt::format("{},{}", mem(saved[r - 1], 0), reg(r))));
    }
    const std::vector<int> params = table.params_of(p.name);
    for (auto it = params.rbegin(); it != params.rend(); ++it) {
      out.push_back(ins("jl", "R14,Sy_Pop"));
      out.push_back(ins("dw", table.at(*it).label()));
    }
    for (int idx : params) {
      const SymbolEntry& e = table.at(idx);
      if (!e.is_value || e.type == VarType::kArray) continue;
      out.push_back(ins("lw", fmt::format("R1,{}", mem(e.label(), 0))));
      out.push_back(ins("lw", "R1,0(R1)"));
      out.push_back(ins("sw", fmt::format("{},R1", mem(e.label(), 0))));
    }
    append(out, std::move(body));
    for (int r = RegisterFile::kFirst; r <= RegisterFile::kLast; ++r) {
      out.push_back(ins("lw", fmt::format("{},{}", reg(r), mem(saved[r - 1], 0))));
    }
    out.push_back(ins("sw", fmt::format("{},R0", mem(busy, 0))));
    out.push_back(ins("lw", fmt::format("R14,{}", mem(ret, 0))));
    out.push_back(ins("jr", "R14"));
    return out;
  }

  // ---- reductions ----

  ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  ExprPtr binary(Expr::Kind kind, std::string_view op, const Value& l, const Value& r) {
    Expr e;
    e.kind = kind;
    e.op = std::string(op);
    e.lhs = l.expr;
    e.rhs = r.expr;
    e.line = l.line;
    return make(std::move(e));
  }

  ExprPtr constant(std::string label, int line) {
    Expr e;
    e.kind = Expr::Kind::kConst;
    e.label = std::move(label);
    e.line = line;
    return make(std::move(e));
  }

  Value reduce(const RuleSpec& spec, std::vector<Value>& rhs) {
    Value v;
    v.line = rhs.empty() ? 0 : rhs.front().line;
    switch (spec.rule) {
      case Rule::kProgram:
        program = std::move(rhs[1].code);
        finished = true;
        break;
      case Rule::kBodyWithProc:
        v.code = std::move(rhs[0].code);
        append(v.code, std::move(rhs[2].code));
        break;
      case Rule::kBodyMain:
        v.code = {"%----- program's entry point -----%", ins("entry"), ins("jl", "R14,Sy_Init_SP")};
        append(v.code, std::move(rhs[0].code));
        break;
      case Rule::kListFirst:
      case Rule::kBlock:
      case Rule::kCallStmt:
        v.code = std::move(rhs[spec.rule == Rule::kBlock ? 1 : 0].code);
        break;
      case Rule::kListNext:
        v.code = std::move(rhs[0].code);
        append(v.code, std::move(rhs[2].code));
        break;
      case Rule::kFor:
        v.code = for_stmt(rhs[1].dest, rhs[3].items, std::move(rhs[5].code));
        break;
      case Rule::kWhile:
        v.code = while_stmt(*rhs[1].expr, std::move(rhs[3].code), rhs[0].line);
        break;
      case Rule::kIfThen:
        v.code = if_stmt(*rhs[1].expr, std::move(rhs[3].code), nullptr, rhs[0].line);
        break;
      case Rule::kIfThenElse:
        v.code = if_stmt(*rhs[1].expr, std::move(rhs[3].code), &rhs[5].code, rhs[0].line);
        break;
      case Rule::kAssign:
      case Rule::kBoolAssign:
      case Rule::kStrAssign:
        v.code = assign(rhs[0].dest, *rhs[2].expr);
        break;
      case Rule::kDivide:
        v.code = divide(&rhs[0].dest, nullptr, *rhs[2].expr, *rhs[4].expr, v.line);
        break;
      case Rule::kRemainder:
        v.code = divide(nullptr, &rhs[1].dest, *rhs[3].expr, *rhs[5].expr, v.line);
        break;
      case Rule::kDivideRemainder:
        v.code = divide(&rhs[0].dest, &rhs[2].dest, *rhs[4].expr, *rhs[6].expr, v.line);
        break;
      case Rule::kIntSwap:
      case Rule::kBoolSwap:
      case Rule::kStrSwap:
        v.code = swap(rhs[0].dest, rhs[2].dest);
        break;
      case Rule::kForListFirst:
        v.items = std::move(rhs[0].items);
        break;
      case Rule::kForListNext:
        v.items = std::move(rhs[0].items);
        v.items.push_back(std::move(rhs[2].items.front()));
        break;
      case Rule::kForScalar:
        v.items.push_back({rhs[0].expr, nullptr, {}, {}, {}, {}, v.line});
        break;
      case Rule::kForRange: {
        ForItem item{rhs[0].expr, rhs[2].expr, names.integer(), {}, {}, {}, v.line};
        item.up = names.label();
        item.down = names.label();
        item.exit = names.label();
        steps.push_back(item.step);
        v.items.push_back(std::move(item));
        break;
      }
      case Rule::kCallBare:
        v.code = call(rhs[0].token, {});
        break;
      case Rule::kCallArgs:
        v.code = call(rhs[0].token, rhs[2].args);
        break;
      case Rule::kArgsFirst:
        v.args = std::move(rhs[0].args);
        break;
      case Rule::kArgsNext:
        v.args = std::move(rhs[0].args);
        v.args.push_back(rhs[2].args.front());
        break;
      case Rule::kArgExpr:
        v.args.push_back({rhs[0].expr, -1});
        break;
      case Rule::kArgArray:
        v.args.push_back({nullptr, rhs[0].symbol});
        break;
      case Rule::kPass:
      case Rule::kPlus:
        v = std::move(rhs.back());
        break;
      case Rule::kParen:
        v.expr = rhs[1].expr;
        break;
      case Rule::kAdd:
        v.expr = binary(Expr::Kind::kBinary, "add", rhs[0], rhs[2]);
        break;
      case Rule::kSub:
        v.expr = binary(Expr::Kind::kBinary, "sub", rhs[0], rhs[2]);
        break;
      case Rule::kMul:
        v.expr = binary(Expr::Kind::kBinary, "mul", rhs[0], rhs[2]);
        break;
      case Rule::kPower:
        v.expr = binary(Expr::Kind::kPower, {}, rhs[0], rhs[2]);
        break;
      case Rule::kOr:
        v.expr = binary(Expr::Kind::kOr, {}, rhs[0], rhs[2]);
        break;
      case Rule::kAnd:
        v.expr = binary(Expr::Kind::kAnd, {}, rhs[0], rhs[2]);
        break;
      case Rule::kCompare:
        v.expr = binary(Expr::Kind::kCompare, spec.op, rhs[0], rhs[2]);
        break;
      case Rule::kNegate:
      case Rule::kNot: {
        Expr e;
        e.kind = spec.rule == Rule::kNegate ? Expr::Kind::kNegate : Expr::Kind::kNot;
        e.lhs = rhs[1].expr;
        e.line = v.line;
        v.expr = make(std::move(e));
        break;
      }
      case Rule::kCongruence: {
        Expr e;
        e.kind = Expr::Kind::kCongruence;
        e.negated = spec.op == "cne";
        e.lhs = rhs[0].expr;
        e.rhs = rhs[2].expr;
        e.mod = rhs[4].expr;
        e.line = v.line;
        v.expr = make(std::move(e));
        break;
      }
      case Rule::kLoad: {
        Expr e;
        e.kind = Expr::Kind::kLoad;
        e.dest = rhs[0].dest;
        e.line = v.line;
        v.expr = make(std::move(e));
        break;
      }
      case Rule::kNumber: {
        const Token& t = rhs[0].token;
        const long long n = std::stoll(t.lexeme);
        if (n > 2147483647LL) {
          throw CompileError(Phase::kCodegen,
                             fmt::format("number {} does not fit in a 32-bit word", t.lexeme),
                             t.line, t.pos);
        }
        const std::string name = names.integer();
        table.add_generated(name, VarType::kInteger, std::to_string(n), t.line);
        v.expr = constant(name, t.line);
        break;
      }
      case Rule::kString: {
        const Token& t = rhs[0].token;
        const std::string name = names.string();
        table.add_generated(name, VarType::kString, t.lexeme, t.line);
        v.expr = constant(name, t.line);
        break;
      }
      case Rule::kBoolLiteral: {
        const Token& t = rhs[0].token;
        v.expr = constant(t.lexeme == "TRUE" ? "INT_VAL_ONE" : "INT_VAL_ZERO", t.line);
        break;
      }
      case Rule::kElement:
        v.dest = {rhs[0].symbol, rhs[2].expr, v.line};
        break;
      case Rule::kVariable:
        v.dest = {rhs[0].token.symbol, nullptr, v.line};
        break;
      case Rule::kArray:
        v.symbol = rhs[0].token.symbol;
        break;
      case Rule::kProcDecl:
        v.code = procedure(rhs[1].token, std::move(rhs[3].code));
        break;
      case Rule::kProcHead:
        v.token = rhs[0].token;
        break;
      case Rule::kNoCode:
        break;
    }
    return v;
  }

  void on_reduce(int production, const Token& lookahead) {
    const RuleSpec* spec = rules.at(production);
    if (!spec) return;
    const std::size_t n = grammar.production(production).rhs.size();
    if (values.size() < n) throw std::logic_error("code stack underflow");
    std::vector<Value> rhs(std::make_move_iterator(values.end() - static_cast<std::ptrdiff_t>(n)),
                           std::make_move_iterator(values.end()));
    values.resize(values.size() - n);
    const int line = rhs.empty() ? lookahead.line : rhs.front().line;
    const Rule r = spec->rule;
    Value v = reduce(*spec, rhs);
    if (v.line == 0) v.line = line;
    if (grammar.name(grammar.production(production).lhs) == "stmt" || r == Rule::kProcDecl) {
      check_clean(line);
    }
    values.push_back(std::move(v));
  }

  void on_shift(const Token& t) {
    if (t.kind == TokenKind::kReservedWord) {
      if (t.lexeme == "IF") {
        IfLabels l;
        l.then_label = names.label();
        l.dispatch = names.label();
        l.else_label = names.label();
        l.join = names.label();
        ifs.push_back(std::move(l));
      } else if (t.lexeme == "WHILE") {
        WhileLabels l;
        l.top = names.label();
        l.dispatch = names.label();
        l.body = names.label();
        whiles.push_back(std::move(l));
      } else if (t.lexeme == "FOR") {
        ForLabels l;
        l.calc = names.label();
        l.body = names.label();
        l.slot = names.register_slot(l.body);
        fors.push_back(std::move(l));
      }
    }
    Value v;
    v.token = t;
    v.line = t.line;
    values.push_back(std::move(v));
  }

  std::string finish() {
    if (!finished) throw std::logic_error("code generation finished before the program was reduced");
    Code out;
    out.push_back("%%% =====%");
    out.push_back(fmt::format("%%% {}", output_name));
    out.push_back("%%%");
    out.push_back("%%% Compiled with lxgc, the LXG compiler");
    out.push_back("%%% =====%");
    out.push_back("");
    append(out, std::move(program));
    out.push_back("");
    out.push_back(ins("j", kExit));
    out.push_back("");
    out.push_back("%===== RUN-TIME ERROR TRAPS =====%");
    for (const Trap& t : kTraps) {
      out.push_back(fmt::format("%---- run-time error trap: {} -----%", t.title));
      out.push_back(std::string(t.label));
      out.push_back(ins("jl", "R14,Sy_Push"));
      out.push_back(ins("dw", t.message));
      out.push_back(ins("jl", "R14,WRITES"));
      out.push_back(ins("j", kExit));
    }
    out.push_back("");
    out.push_back(std::string(kExit));
    out.push_back(ins("hlt"));
    out.push_back("");
    out.push_back("%===== var declarations =====%");
    out.push_back(ins("align"));
    for (const SymbolEntry& e : table.entries()) declare(e, out);
    out.push_back("");
    out.push_back("%===== registry save variables =====%");
    out.push_back("%---- procedures ----%");
    for (const auto& s : procedure_slots) out.push_back(decl(s, "res", "4"));
    out.push_back("%---- FOR ... DO ----%");
    for (const auto& s : for_slots) out.push_back(decl(s, "res", "4"));
    for (const auto& s : steps) out.push_back(decl(s, "res", "4"));
    if (!arg_temps.empty()) {
      out.push_back("%---- call arguments ----%");
      for (const auto& s : arg_temps) out.push_back(decl(s, "res", "4"));
    }
    out.push_back("");
    out.push_back("%===== run-time errors definition =====%");
    out.push_back(decl("INT_VAL_ZERO", "dw", "0"));
    out.push_back(decl("INT_VAL_ONE", "dw", "1"));
    out.push_back(decl("INT_VAL_ANY", "dw", "1"));
    for (const auto& [label, text] : kErrorStrings) {
      out.push_back(decl(label, "dw", fmt::format("{}_A", label)));
      out.push_back(decl(fmt::format("{}_A", label), "db", db_operands(text)));
      out.push_back(ins("align"));
    }
    out.push_back("%===== %");
    std::string text;
    for (const auto& line : out) {
      text += line;
      text += '\n';
    }
    return text;
  }

  void declare(const SymbolEntry& e, Code& out) const {
    if (e.type == VarType::kProcedure || e.type == VarType::kUnknown) return;
    const std::string label = e.label();
    if (e.is_generated) {
      if (e.type == VarType::kString) {
        out.push_back(decl(label, "dw", label + "_A"));
        out.push_back(decl(label + "_A", "db", db_operands(e.gen_value)));
        out.push_back(ins("align"));
      } else {
        out.push_back(decl(label, "dw", e.gen_value));
      }
      return;
    }
    if (e.type == VarType::kArray && !e.is_param) {
      out.push_back(decl(label, "dw", std::to_string(e.array_size)));
      out.push_back(decl("", "res", std::to_string(4 * e.array_size)));
      return;
    }
    out.push_back(decl(label, "res", "4"));
  }
};

CodeGenerator::CodeGenerator(const Grammar& grammar, SymbolTable& table, std::string output_name)
    : impl_(std::make_unique<Impl>(grammar, table, std::move(output_name))) {}

CodeGenerator::~CodeGenerator() = default;

void CodeGenerator::on_shift(const Token& token) { impl_->on_shift(token); }

void CodeGenerator::on_reduce(int production, const Token& token) {
  impl_->on_reduce(production, token);
}

std::string CodeGenerator::finish() { return impl_->finish(); }

}  // namespace lxg
