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

#ifndef LXG_GRAMMAR_HPP_
#define LXG_GRAMMAR_HPP_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lxg {

using SymbolId = int;

struct GrammarSymbol {
  std::string name;
  bool is_terminal = true;
};

struct Production {
  int index = 0;
  SymbolId lhs = 0;
  std::vector<SymbolId> rhs;
};

// A context-free grammar read from the textual grammar file, augmented with
// S' -> <start> as production 0 and the end marker "$".
class Grammar {
 public:
  static constexpr std::string_view kAugmentedStartName = "S'";
  static constexpr std::string_view kEndMarkerName = "$";

  // Throws CompileError(kGrammar) on malformed input.
  static Grammar load(std::string_view text);

  const std::vector<GrammarSymbol>& symbols() const { return symbols_; }
  const std::vector<Production>& productions() const { return productions_; }
  const Production& production(int index) const { return productions_.at(index); }

  SymbolId augmented_start() const { return 0; }
  SymbolId end_marker() const { return 1; }
  // Left-hand side of the first rule in the file.
  SymbolId start() const { return start_; }

  const std::string& name(SymbolId id) const { return symbols_.at(id).name; }
  bool is_terminal(SymbolId id) const { return symbols_.at(id).is_terminal; }
  std::optional<SymbolId> find(std::string_view name) const;
  // Like find() but throws std::out_of_range for unknown names.
  SymbolId id(std::string_view name) const;

  std::vector<SymbolId> nonterminals() const;
  std::vector<SymbolId> terminals() const;
  // Indices of the productions whose left-hand side is `lhs`.
  const std::vector<int>& productions_of(SymbolId lhs) const { return by_lhs_.at(lhs); }

  // "lhs -> a b c"
  std::string production_text(int index) const;

 private:
  SymbolId intern(std::string_view name);

  std::vector<GrammarSymbol> symbols_;
  std::map<std::string, SymbolId, std::less<>> ids_;
  std::vector<Production> productions_;
  std::vector<std::vector<int>> by_lhs_;
  SymbolId start_ = 0;
};

// Indexed by SymbolId; entries for terminals are empty.
using SymbolSets = std::vector<std::set<SymbolId>>;

SymbolSets compute_first(const Grammar& grammar);
SymbolSets compute_follow(const Grammar& grammar, const SymbolSets& first);

struct Item {
  int production = 0;
  int dot = 0;
  auto operator<=>(const Item&) const = default;
};

struct DfaState {
  int id = 0;
  // Kernel items first, then closure items in the order they were added.
  std::vector<Item> items;
  std::map<SymbolId, int> shift;
  std::map<SymbolId, int> go_to;
  // Terminal -> production, installed for every terminal in Follow(lhs) of
  // a complete item. May overlap `shift`; shift wins.
  std::map<SymbolId, int> reduce;
  // Contains S' -> start . (only when the accept state is materialized).
  bool accepts = false;
};

struct ShiftReduceConflict {
  int state = 0;
  SymbolId terminal = 0;
  int reduce_production = 0;
  int shift_target = 0;
};

struct DfaOptions {
  // The driver accepts when it reduces by a production of the start
  // symbol, so the item set {S' -> start .} is never entered. Set this to
  // build the textbook collection that includes it anyway.
  bool materialize_accept_state = false;
};

struct Automaton {
  std::vector<DfaState> states;
  std::vector<ShiftReduceConflict> conflicts;

  std::vector<int> conflicted_states() const;
};

std::vector<Item> closure(const Grammar& grammar, std::vector<Item> items);

// Throws CompileError(kGrammar) on a reduce-reduce conflict.
Automaton build_dfa(const Grammar& grammar, const SymbolSets& follow, DfaOptions options = {});

std::string render_item(const Grammar& grammar, const Item& item);

// "First(program) = { bof }" lines.
std::string render_sets(const Grammar& grammar, const SymbolSets& sets, std::string_view label);

// The grammar dump: First and Follow listings, every state with its
// transitions, and the conflict summary.
std::string render_grammar_report(const Grammar& grammar, const SymbolSets& first,
                                  const SymbolSets& follow, const Automaton& automaton);

// A loaded grammar with its derived sets and tables; immutable once built.
struct GrammarTables {
  Grammar grammar;
  SymbolSets first;
  SymbolSets follow;
  Automaton automaton;

  static GrammarTables build(std::string_view grammar_text, DfaOptions options = {});
};

}  // namespace lxg

#endif  // LXG_GRAMMAR_HPP_
