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

#include "lxg/grammar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "lxg/errors.hpp"

namespace lxg {
namespace {

struct RawRule {
  std::string lhs;
  std::string body;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

std::vector<RawRule> read_rules(std::string_view text) {
  std::vector<RawRule> rules;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;

    std::size_t arrow_len = 2;
    auto arrow = line.find("->");
    if (arrow == std::string_view::npos) {
      arrow = line.find("→");
      arrow_len = std::string_view("→").size();
    }
    if (arrow == std::string_view::npos) {
      if (rules.empty()) {
        throw CompileError(Phase::kGrammar, "continuation line before the first rule", line_no);
      }
      rules.back().body += ' ';
      rules.back().body += line;
      continue;
    }
    const auto lhs = split_ws(line.substr(0, arrow));
    if (lhs.size() != 1) {
      throw CompileError(Phase::kGrammar, "a rule needs exactly one left-hand symbol", line_no);
    }
    rules.push_back({lhs.front(), std::string(line.substr(arrow + arrow_len)), line_no});
  }
  return rules;
}

}  // namespace

SymbolId Grammar::intern(std::string_view name) {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  const SymbolId id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back({std::string(name), true});
  ids_.emplace(std::string(name), id);
  return id;
}

Grammar Grammar::load(std::string_view text) {
  Grammar g;
  g.intern(kAugmentedStartName);
  g.intern(kEndMarkerName);

  const auto rules = read_rules(text);
  if (rules.empty()) throw CompileError(Phase::kGrammar, "grammar has no rules");

  g.productions_.push_back({0, g.augmented_start(), {}});
  for (const auto& rule : rules) {
    if (rule.lhs == kAugmentedStartName || rule.lhs == kEndMarkerName) {
      throw CompileError(Phase::kGrammar, "reserved symbol name '" + rule.lhs + "'", rule.line);
    }
    const SymbolId lhs = g.intern(rule.lhs);
    std::vector<SymbolId> rhs;
    auto flush = [&] {
      if (rhs.empty()) {
        throw CompileError(Phase::kGrammar, "empty right-hand side for " + rule.lhs, rule.line);
      }
      for (const auto& p : g.productions_) {
        if (p.lhs == lhs && p.rhs == rhs) {
          throw CompileError(Phase::kGrammar, "duplicate production for " + rule.lhs, rule.line);
        }
      }
      g.productions_.push_back({static_cast<int>(g.productions_.size()), lhs, std::move(rhs)});
      rhs.clear();
    };
    for (const auto& word : split_ws(rule.body)) {
      if (word == "|") {
        flush();
      } else {
        if (word == kAugmentedStartName || word == kEndMarkerName) {
          throw CompileError(Phase::kGrammar, "reserved symbol name '" + word + "'", rule.line);
        }
        rhs.push_back(g.intern(word));
      }
    }
    flush();
  }

  g.start_ = g.id(rules.front().lhs);
  g.productions_[0].rhs = {g.start_};
  g.symbols_[g.augmented_start()].is_terminal = false;
  for (const auto& p : g.productions_) g.symbols_[p.lhs].is_terminal = false;

  g.by_lhs_.assign(g.symbols_.size(), {});
  for (const auto& p : g.productions_) g.by_lhs_[p.lhs].push_back(p.index);
  return g;
}

std::optional<SymbolId> Grammar::find(std::string_view name) const {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  return std::nullopt;
}

SymbolId Grammar::id(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw std::out_of_range("unknown grammar symbol '" + std::string(name) + "'");
}

std::vector<SymbolId> Grammar::nonterminals() const {
  std::vector<SymbolId> out;
  for (SymbolId s = 0; s < static_cast<SymbolId>(symbols_.size()); ++s) {
    if (!symbols_[s].is_terminal) out.push_back(s);
  }
  return out;
}

std::vector<SymbolId> Grammar::terminals() const {
  std::vector<SymbolId> out;
  for (SymbolId s = 0; s < static_cast<SymbolId>(symbols_.size()); ++s) {
    if (symbols_[s].is_terminal) out.push_back(s);
  }
  return out;
}

std::string Grammar::production_text(int index) const {
  const auto& p = production(index);
  std::string out = name(p.lhs) + " ->";
  for (SymbolId s : p.rhs) out += " " + name(s);
  return out;
}

SymbolSets compute_first(const Grammar& g) {
  SymbolSets first(g.symbols().size());
  // No production derives the empty string, so only the leading symbol of
  // each right-hand side contributes.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      const SymbolId lead = p.rhs.front();
      auto& target = first[p.lhs];
      const auto before = target.size();
      if (g.is_terminal(lead)) {
        target.insert(lead);
      } else {
        target.insert(first[lead].begin(), first[lead].end());
      }
      changed |= target.size() != before;
    }
  }
  return first;
}

SymbolSets compute_follow(const Grammar& g, const SymbolSets& first) {
  SymbolSets follow(g.symbols().size());
  follow[g.augmented_start()].insert(g.end_marker());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      for (std::size_t i = 0; i < p.rhs.size(); ++i) {
        const SymbolId b = p.rhs[i];
        if (g.is_terminal(b)) continue;
        auto& target = follow[b];
        const auto before = target.size();
        if (i + 1 == p.rhs.size()) {
          target.insert(follow[p.lhs].begin(), follow[p.lhs].end());
        } else if (const SymbolId next = p.rhs[i + 1]; g.is_terminal(next)) {
          target.insert(next);
        } else {
          target.insert(first[next].begin(), first[next].end());
        }
        changed |= target.size() != before;
      }
    }
  }
  return follow;
}

std::vector<Item> closure(const Grammar& g, std::vector<Item> items) {
  std::set<Item> seen(items.begin(), items.end());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& rhs = g.production(items[i].production).rhs;
    if (items[i].dot >= static_cast<int>(rhs.size())) continue;
    const SymbolId next = rhs[items[i].dot];
    if (g.is_terminal(next)) continue;
    for (int q : g.productions_of(next)) {
      if (seen.insert({q, 0}).second) items.push_back({q, 0});
    }
  }
  return items;
}

std::vector<int> Automaton::conflicted_states() const {
  std::vector<int> out;
  for (const auto& c : conflicts) {
    if (out.empty() || out.back() != c.state) out.push_back(c.state);
  }
  return out;
}

Automaton build_dfa(const Grammar& g, const SymbolSets& follow, DfaOptions options) {
  Automaton a;
  std::map<std::vector<Item>, int> index;  // sorted item set -> state id
  auto add_state = [&](std::vector<Item> kernel) {
    auto items = closure(g, std::move(kernel));
    auto key = items;
    std::sort(key.begin(), key.end());
    if (auto it = index.find(key); it != index.end()) return it->second;
    const int id = static_cast<int>(a.states.size());
    index.emplace(std::move(key), id);
    DfaState state;
    state.id = id;
    state.items = std::move(items);
    a.states.push_back(std::move(state));
    return id;
  };

  add_state({{0, 0}});
  for (std::size_t s = 0; s < a.states.size(); ++s) {
    // Symbols after the dot, in first-appearance order within the item list.
    std::vector<SymbolId> order;
    for (const auto& item : a.states[s].items) {
      const auto& rhs = g.production(item.production).rhs;
      if (item.dot < static_cast<int>(rhs.size()) &&
          std::find(order.begin(), order.end(), rhs[item.dot]) == order.end()) {
        order.push_back(rhs[item.dot]);
      }
    }
    for (SymbolId x : order) {
      std::vector<Item> kernel;
      bool only_augmented = true;
      for (const auto& item : a.states[s].items) {
        const auto& rhs = g.production(item.production).rhs;
        if (item.dot < static_cast<int>(rhs.size()) && rhs[item.dot] == x) {
          kernel.push_back({item.production, item.dot + 1});
          only_augmented &= item.production == 0;
        }
      }
      if (only_augmented && !options.materialize_accept_state) continue;
      const int target = add_state(std::move(kernel));
      (g.is_terminal(x) ? a.states[s].shift : a.states[s].go_to)[x] = target;
    }
  }

  for (auto& state : a.states) {
    for (const auto& item : state.items) {
      const auto& p = g.production(item.production);
      if (item.dot != static_cast<int>(p.rhs.size())) continue;
      if (p.index == 0) {
        state.accepts = true;
        continue;
      }
      for (SymbolId t : follow[p.lhs]) {
        auto [it, inserted] = state.reduce.emplace(t, p.index);
        if (!inserted && it->second != p.index) {
          throw CompileError(Phase::kGrammar,
                             fmt::format("reduce-reduce conflict in state {} on '{}': {} / {}",
                                         state.id, g.name(t), g.production_text(it->second),
                                         g.production_text(p.index)));
        }
      }
    }
    for (const auto& [t, prod] : state.reduce) {
      if (auto sh = state.shift.find(t); sh != state.shift.end()) {
        a.conflicts.push_back({state.id, t, prod, sh->second});
      }
    }
  }
  return a;
}

std::string render_item(const Grammar& g, const Item& item) {
  const auto& p = g.production(item.production);
  std::string out = g.name(p.lhs) + " ->";
  for (std::size_t i = 0; i < p.rhs.size(); ++i) {
    if (static_cast<int>(i) == item.dot) out += " .";
    out += " " + g.name(p.rhs[i]);
  }
  if (item.dot == static_cast<int>(p.rhs.size())) out += " .";
  return out;
}

std::string render_sets(const Grammar& g, const SymbolSets& sets, std::string_view label) {
  std::string out;
  for (SymbolId n : g.nonterminals()) {
    if (n == g.augmented_start()) continue;
    std::vector<std::string> names;
    for (SymbolId t : sets[n]) names.push_back(g.name(t));
    out += fmt::format("{}({}) = {{ {} }}\n", label, g.name(n), fmt::join(names, " , "));
  }
  return out;
}

namespace {

void render_state(std::string& out, const Grammar& g, const DfaState& state, bool conflicted) {
  out += fmt::format("DFA state {}{}:\n", state.id, conflicted ? " (shift-reduce conflict)" : "");
  for (const auto& item : state.items) out += "  " + render_item(g, item) + "\n";

  // Reduce entries are grouped per production: "Follow(stmt) : 8,".
  out += "  Reduce transitions:";
  std::set<int> reduced;
  for (const auto& [t, prod] : state.reduce) reduced.insert(prod);
  for (int prod : reduced) out += fmt::format(" Follow({}) : {},", g.name(g.production(prod).lhs), prod);
  if (state.accepts) out += " $ : accept,";
  out += "\n  Shift transitions:";
  for (const auto& [t, target] : state.shift) out += fmt::format(" {} : {},", g.name(t), target);
  out += "\n  Goto transitions:";
  for (const auto& [n, target] : state.go_to) out += fmt::format(" {} : {},", g.name(n), target);
  out += "\n";
}

}  // namespace

std::string render_grammar_report(const Grammar& g, const SymbolSets& first,
                                  const SymbolSets& follow, const Automaton& automaton) {
  std::string out;
  out += "%% Productions\n";
  for (const auto& p : g.productions()) out += fmt::format("{}: {}\n", p.index, g.production_text(p.index));
  out += "\n%% First sets\n";
  out += render_sets(g, first, "First");
  out += "\n%% Follow sets\n";
  out += render_sets(g, follow, "Follow");
  out += fmt::format("\n%% DFA states\n{} DFA states\n\n", automaton.states.size());
  const auto conflicted = automaton.conflicted_states();
  for (const auto& state : automaton.states) {
    render_state(out, g, state,
                 std::find(conflicted.begin(), conflicted.end(), state.id) != conflicted.end());
  }
  out += fmt::format("\n%% Shift-reduce conflicts (resolved by shifting)\n{} DFA states with a "
                     "shift-reduce conflict\n",
                     conflicted.size());
  for (int id : conflicted) render_state(out, g, automaton.states[id], true);
  return out;
}

GrammarTables GrammarTables::build(std::string_view grammar_text, DfaOptions options) {
  GrammarTables t{Grammar::load(grammar_text), {}, {}, {}};
  t.first = compute_first(t.grammar);
  t.follow = compute_follow(t.grammar, t.first);
  t.automaton = build_dfa(t.grammar, t.follow, options);
  return t;
}

}  // namespace lxg
