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

#include "lxg/parser.hpp"

#include <fmt/format.h>

#include "lxg/errors.hpp"

namespace lxg {

ParseAction get_parsing_operation(const GrammarTables& tables, int state, SymbolId lookahead) {
  const auto& g = tables.grammar;
  const auto& s = tables.automaton.states.at(state);
  ParseAction action;
  if (auto it = s.shift.find(lookahead); it != s.shift.end()) {
    action.kind = ActionKind::kShift;
    action.next_state = it->second;
    return action;
  }
  if (auto it = s.reduce.find(lookahead); it != s.reduce.end()) {
    action.kind = ActionKind::kReduce;
    action.production = it->second;
    return action;
  }
  if (s.accepts && lookahead == g.end_marker()) {
    action.kind = ActionKind::kAccept;
    return action;
  }
  std::set<SymbolId> expected;
  for (const auto& [t, target] : s.shift) expected.insert(t);
  for (const auto& [t, prod] : s.reduce) expected.insert(t);
  std::vector<std::string> names;
  for (SymbolId t : expected) names.push_back(g.name(t));
  action.note = fmt::format("state {}: expected one of {{ {} }}", state, fmt::join(names, " , "));
  return action;
}

namespace {

// Value carried next to each parser state for the call type check.
struct CallInfo {
  int symbol = -1;
  int line = 0;
  int pos = 0;
  std::vector<VarType> args;
};

class Driver {
 public:
  Driver(const GrammarTables& tables, const SymbolTable* table, ParseSink* sink)
      : tables_(tables), g_(tables.grammar), table_(table), sink_(sink) {
    auto find = [&](std::string_view n) { return g_.find(n).value_or(-1); };
    exp_item_ = find("exp-item");
    exp_list_ = find("exp-list");
    proc_ident_ = find("proc-ident");
    proc_call_ = find("proc-call");
    for (auto [name, type] : {std::pair{"int-exp", VarType::kInteger},
                              std::pair{"bool-exp", VarType::kBoolean},
                              std::pair{"str-exp", VarType::kString},
                              std::pair{"arr-ident", VarType::kArray}}) {
      if (auto id = g_.find(name)) arg_kinds_.emplace(*id, type);
    }
  }

  std::vector<DerivationEvent> run(std::span<const SymbolId> terminals,
                                   std::span<const Token> tokens) {
    std::vector<int> states{0};
    std::vector<CallInfo> values{{}};
    std::vector<DerivationEvent> events;
    std::size_t cursor = 0;
    std::string last_lexeme;
    Token end_token;
    end_token.kind = TokenKind::kEof;
    if (!tokens.empty()) {
      end_token.line = tokens.back().line;
      end_token.pos = tokens.back().pos;
    }

    while (true) {
      const bool at_end = cursor >= terminals.size();
      const SymbolId lookahead = at_end ? g_.end_marker() : terminals[cursor];
      const Token& token = at_end ? end_token : tokens[cursor];
      const ParseAction action = get_parsing_operation(tables_, states.back(), lookahead);
      switch (action.kind) {
        case ActionKind::kShift: {
          states.push_back(action.next_state);
          values.push_back({token.symbol, token.line, token.pos, {}});
          if (sink_) sink_->on_shift(token);
          if (!token.lexeme.empty()) last_lexeme = token.lexeme;
          ++cursor;
          break;
        }
        case ActionKind::kReduce: {
          const auto& p = g_.production(action.production);
          events.push_back({last_lexeme, p.index});
          const std::size_t n = p.rhs.size();
          CallInfo value = reduce_value(p, std::span(values).last(n));
          if (sink_) sink_->on_reduce(p.index, token);
          states.resize(states.size() - n);
          values.resize(values.size() - n);
          if (p.lhs == g_.start() && states.size() == 1) return events;
          states.push_back(tables_.automaton.states[states.back()].go_to.at(p.lhs));
          values.push_back(std::move(value));
          break;
        }
        case ActionKind::kAccept:
          return events;
        case ActionKind::kError: {
          const std::string seen = at_end ? std::string("end of input")
                                          : fmt::format("'{}'", g_.name(lookahead));
          throw CompileError(Phase::kParse,
                             fmt::format("syntax error at {} ({})", seen, action.note), token.line,
                             token.pos);
        }
      }
    }
  }

 private:
  CallInfo reduce_value(const Production& p, std::span<const CallInfo> rhs) {
    CallInfo out;
    if (!rhs.empty()) {
      out.line = rhs.front().line;
      out.pos = rhs.front().pos;
    }
    if (p.lhs == exp_item_ && rhs.size() == 1) {
      if (auto it = arg_kinds_.find(p.rhs[0]); it != arg_kinds_.end()) out.args = {it->second};
    } else if (p.lhs == exp_list_) {
      for (const auto& v : rhs) out.args.insert(out.args.end(), v.args.begin(), v.args.end());
    } else if (p.lhs == proc_ident_ && rhs.size() == 1) {
      out.symbol = rhs[0].symbol;
    } else if (p.lhs == proc_call_ && table_) {
      std::vector<VarType> args;
      for (const auto& v : rhs.subspan(1)) args.insert(args.end(), v.args.begin(), v.args.end());
      check_call(rhs[0], args);
    }
    return out;
  }

  void check_call(const CallInfo& callee, const std::vector<VarType>& args) {
    if (callee.symbol < 0 || table_->at(callee.symbol).type != VarType::kProcedure) {
      const std::string name = callee.symbol < 0 ? std::string("?") : table_->at(callee.symbol).name;
      throw CompileError(Phase::kParse, fmt::format("call of undeclared procedure {}", name),
                         callee.line, callee.pos);
    }
    const auto& proc = table_->at(callee.symbol);
    const auto params = table_->params_of(proc.name);
    if (params.size() != args.size()) {
      throw CompileError(Phase::kParse,
                         fmt::format("procedure {} takes {} argument(s), {} given", proc.name,
                                     params.size(), args.size()),
                         callee.line, callee.pos);
    }
    for (std::size_t k = 0; k < params.size(); ++k) {
      const VarType expected = table_->at(params[k]).type;
      if (expected != args[k]) {
        throw CompileError(
            Phase::kParse,
            fmt::format("argument {} of the call to {} is {}, but parameter {} is {}", k + 1,
                        proc.name, var_type_name(args[k]), table_->at(params[k]).name,
                        var_type_name(expected)),
            callee.line, callee.pos);
      }
    }
  }

  const GrammarTables& tables_;
  const Grammar& g_;
  const SymbolTable* table_;
  ParseSink* sink_;
  SymbolId exp_item_ = -1, exp_list_ = -1, proc_ident_ = -1, proc_call_ = -1;
  std::map<SymbolId, VarType> arg_kinds_;
};

}  // namespace

std::vector<DerivationEvent> parse(const GrammarTables& tables, const std::vector<Token>& stream,
                                   const SymbolTable* table, ParseSink* sink) {
  std::vector<SymbolId> terminals;
  terminals.reserve(stream.size());
  for (const auto& t : stream) {
    const std::string name = terminal_name(t);
    auto id = name.empty() ? std::nullopt : tables.grammar.find(name);
    if (!id || !tables.grammar.is_terminal(*id)) {
      throw CompileError(Phase::kParse,
                         fmt::format("unexpected token '{}' ({})", t.lexeme, token_kind_name(t.kind)),
                         t.line, t.pos);
    }
    terminals.push_back(*id);
  }
  return Driver(tables, table, sink).run(terminals, stream);
}

bool accepts(const GrammarTables& tables, std::span<const SymbolId> terminals) {
  std::vector<Token> tokens(terminals.size());
  for (std::size_t i = 0; i < terminals.size(); ++i) tokens[i].lexeme = tables.grammar.name(terminals[i]);
  try {
    Driver(tables, nullptr, nullptr).run(terminals, tokens);
    return true;
  } catch (const CompileError&) {
    return false;
  }
}

std::string render_derivation(const Grammar& g, const std::vector<DerivationEvent>& events) {
  std::string out;
  for (const auto& e : events) {
    out += fmt::format("{} : {}\n", e.lookahead_lexeme, g.production_text(e.production));
  }
  return out;
}

}  // namespace lxg
