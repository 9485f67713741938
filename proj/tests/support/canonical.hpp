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

#ifndef LXG_TESTS_SUPPORT_CANONICAL_HPP_
#define LXG_TESTS_SUPPORT_CANONICAL_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace lxg::testing {

// Assembly listing reduced to a comparable form: blank lines and "%%%"
// header lines dropped, whitespace collapsed, no blanks after commas, and
// generated names (LB_nnnnn, I_nnnnn, S_nnnnn, REG_nnnnn) renumbered per
// prefix in order of first appearance.
std::vector<std::string> canonical_listing(std::string_view text);

// From the first line containing `from` through the next line containing
// `to`, both included. Empty if either is missing.
std::string slice(std::string_view text, std::string_view from, std::string_view to);

std::string join_lines(const std::vector<std::string>& lines);

// True when the canonical form of `block` appears as a contiguous run in
// `listing`, with generated names renumbered from the start of the run.
bool contains_listing(std::string_view listing, std::string_view block);

}  // namespace lxg::testing

#endif  // LXG_TESTS_SUPPORT_CANONICAL_HPP_
