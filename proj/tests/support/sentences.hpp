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


#ifndef LXG_TESTS_SUPPORT_SENTENCES_HPP_
#define LXG_TESTS_SUPPORT_SENTENCES_HPP_

#include <set>
#include <string>
#include <vector>

#include "support/sets_oracle.hpp"

namespace lxg::testing {

using Sentence = std::vector<std::string>;

// Every terminal string of the start symbol with at most `max_length`
// terminals, using only terminals in `alphabet`. Built bottom-up by length,
// so it shares nothing with the LR construction.
std::set<Sentence> enumerate_sentences(const RawGrammar& g, const std::set<std::string>& alphabet,
                                       std::size_t max_length);

}  // namespace lxg::testing

#endif  // LXG_TESTS_SUPPORT_SENTENCES_HPP_
