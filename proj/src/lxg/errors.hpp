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

#ifndef LXG_ERRORS_HPP_
#define LXG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lxg {

enum class Phase { kIo, kGrammar, kScan, kPreparse, kParse, kCodegen, kAssemble, kRun };

const char* phase_name(Phase phase);

// Every compiler diagnostic carries the phase that raised it and, when it
// can be attributed to source text, a 1-based line and column.
class CompileError : public std::runtime_error {
 public:
  CompileError(Phase phase, std::string message, int line = 0, int pos = 0);

  Phase phase() const { return phase_; }
  int line() const { return line_; }
  int pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  Phase phase_;
  std::string message_;
  int line_;
  int pos_;
};

}  // namespace lxg

#endif  // LXG_ERRORS_HPP_
