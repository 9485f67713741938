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

#ifndef LXG_TESTS_SUPPORT_DERIVATION_ORACLE_HPP_
#define LXG_TESTS_SUPPORT_DERIVATION_ORACLE_HPP_

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "support/sets_oracle.hpp"

namespace lxg::testing {

// Decides membership by trying every way of splitting the input among the
// right-hand-side symbols of every production (the grammar has no empty
// alternatives, so each symbol covers at least one terminal). Memoized on
// (symbol, begin, end).
class DerivationOracle {
 public:
  explicit DerivationOracle(const RawGrammar& grammar);

  bool derives(const std::vector<std::string>& terminals);

  // Random sentence of the start symbol using only productions whose
  // derivations stay within `budget` terminals; empty if none was found.
  template <typename Rng>
  std::vector<std::string> sample(Rng& rng, std::size_t budget);

 private:
  bool derives(const std::string& symbol, std::size_t begin, std::size_t end);
  bool split(const std::vector<std::string>& rhs, std::size_t k, std::size_t begin, std::size_t end);

  const RawGrammar& g_;
  std::map<std::string, std::vector<const std::vector<std::string>*>> by_lhs_;
  const std::vector<std::string>* input_ = nullptr;
  // 0 unknown, 1 in progress, 2 false, 3 true
  std::map<std::tuple<std::string, std::size_t, std::size_t>, int> memo_;
};

template <typename Rng>
std::vector<std::string> DerivationOracle::sample(Rng& rng, std::size_t budget) {
  std::vector<std::string> form{g_.start};
  for (int steps = 0; steps < 200; ++steps) {
    std::size_t pos = form.size();
    for (std::size_t i = 0; i < form.size(); ++i) {
      if (g_.is_nonterminal(form[i])) {
        pos = i;
        break;
      }
    }
    if (pos == form.size()) return form;
    const auto& alts = by_lhs_.at(form[pos]);
    const auto& rhs = *alts[rng() % alts.size()];
    if (form.size() - 1 + rhs.size() > budget) {
      // Prefer the shortest alternative once the budget is tight.
      const std::vector<std::string>* best = alts.front();
      for (auto* a : alts) {
        if (a->size() < best->size()) best = a;
      }
      if (form.size() - 1 + best->size() > budget) return {};
      form.erase(form.begin() + static_cast<std::ptrdiff_t>(pos));
      form.insert(form.begin() + static_cast<std::ptrdiff_t>(pos), best->begin(), best->end());
      continue;
    }
    form.erase(form.begin() + static_cast<std::ptrdiff_t>(pos));
    form.insert(form.begin() + static_cast<std::ptrdiff_t>(pos), rhs.begin(), rhs.end());
  }
  return {};
}

}  // namespace lxg::testing

#endif  // LXG_TESTS_SUPPORT_DERIVATION_ORACLE_HPP_
