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

#include "lxg/errors.hpp"

#include <fmt/format.h>

namespace lxg {

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::kIo: return "io";
    case Phase::kGrammar: return "grammar";
    case Phase::kScan: return "scanner";
    case Phase::kPreparse: return "pre-parser";
    case Phase::kParse: return "parser";
    case Phase::kCodegen: return "code generator";
    case Phase::kAssemble: return "assembler";
    case Phase::kRun: return "moon";
  }
  return "?";
}

namespace {

std::string format_what(Phase phase, const std::string& message, int line, int pos) {
  if (line > 0 && pos > 0) {
    return fmt::format("{} error at line {}, position {}: {}", phase_name(phase), line, pos,
                       message);
  }
  if (line > 0) return fmt::format("{} error at line {}: {}", phase_name(phase), line, message);
  return fmt::format("{} error: {}", phase_name(phase), message);
}

}  // namespace

CompileError::CompileError(Phase phase, std::string message, int line, int pos)
    : std::runtime_error(format_what(phase, message, line, pos)),
      phase_(phase),
      message_(std::move(message)),
      line_(line),
      pos_(pos) {}

}  // namespace lxg
