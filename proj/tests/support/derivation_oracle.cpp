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

#include "support/derivation_oracle.hpp"

#include <stdexcept>

namespace lxg::testing {

DerivationOracle::DerivationOracle(const RawGrammar& grammar) : g_(grammar) {
  for (const auto& [lhs, rhs] : g_.rules) {
    if (rhs.empty()) throw std::invalid_argument("empty alternative for " + lhs);
    by_lhs_[lhs].push_back(&rhs);
  }
}

bool DerivationOracle::derives(const std::vector<std::string>& terminals) {
  input_ = &terminals;
  memo_.clear();
  return !terminals.empty() && derives(g_.start, 0, terminals.size());
}

bool DerivationOracle::derives(const std::string& symbol, std::size_t begin, std::size_t end) {
  if (!g_.is_nonterminal(symbol)) return end == begin + 1 && (*input_)[begin] == symbol;
  auto key = std::make_tuple(symbol, begin, end);
  int& state = memo_[key];
  if (state == 1) return false;  // a unit cycle; never productive
  if (state != 0) return state == 3;
  state = 1;
  bool ok = false;
  for (const auto* rhs : by_lhs_.at(symbol)) {
    if (rhs->size() <= end - begin && split(*rhs, 0, begin, end)) {
      ok = true;
      break;
    }
  }
  memo_[key] = ok ? 3 : 2;
  return ok;
}

bool DerivationOracle::split(const std::vector<std::string>& rhs, std::size_t k, std::size_t begin,
                             std::size_t end) {
  const std::size_t rest = rhs.size() - k - 1;
  if (rest == 0) return derives(rhs[k], begin, end);
  for (std::size_t mid = begin + 1; mid + rest <= end; ++mid) {
    if (derives(rhs[k], begin, mid) && split(rhs, k + 1, mid, end)) return true;
  }
  return false;
}

}  // namespace lxg::testing
