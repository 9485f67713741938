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

#ifndef LXG_PREPARSER_HPP_
#define LXG_PREPARSER_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lxg/errors.hpp"
#include "lxg/token.hpp"

namespace lxg {

enum class VarType { kInteger, kBoolean, kString, kArray, kProcedure, kUnknown };

std::string_view var_type_name(VarType type);

inline constexpr std::string_view kMainProgram = "MAIN_PROGRAM";

struct SymbolEntry {
  std::string name;
  VarType type = VarType::kUnknown;
  int array_size = 0;
  bool is_generated = false;
  // kMainProgram or the owning procedure's name.
  std::string location{kMainProgram};
  bool is_param = false;
  bool is_value = false;
  // Declared by the run-time library file; kept out of the table dump.
  bool is_library = false;
  std::vector<int> lines;
  std::string gen_value;
  int decl_line = 0;
  int decl_pos = 0;

  bool is_global() const { return location == kMainProgram; }
  // Name of the memory word (or block) that stores the variable.
  std::string label() const;
};

class SymbolTable {
 public:
  int add(SymbolEntry entry);
  // Registers a code-generator temporary; `line` is the source line that
  // caused it.
  int add_generated(std::string name, VarType type, std::string value, int line);

  std::optional<int> find(std::string_view name, std::string_view location) const;
  // Innermost declaration visible from `location`: the procedure's own
  // names first, then the main program's.
  std::optional<int> lookup(std::string_view name, std::string_view location) const;
  // Parameters of `procedure` in declaration order.
  std::vector<int> params_of(std::string_view procedure) const;

  const SymbolEntry& at(int index) const { return entries_.at(index); }
  SymbolEntry& at(int index) { return entries_.at(index); }
  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<SymbolEntry>& entries() const { return entries_; }

 private:
  std::vector<SymbolEntry> entries_;
};

struct PreparseResult {
  std::vector<Token> tokens;
  SymbolTable table;
};

struct Diagnostic {
  std::string message;
  int line = 0;
  int pos = 0;
};

// Raised once the whole pre-parse pass has finished, carrying every
// declaration error found (the first one is the headline message).
class PreparseError : public CompileError {
 public:
  explicit PreparseError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Runs the declaration parser over the library stream and then the source
// stream. Returns the rewritten source stream (declarations removed,
// identifiers retyped) and the symbol table covering both.
PreparseResult preparse(const std::vector<Token>& library_tokens,
                        const std::vector<Token>& source_tokens);

// Declared entries in declaration order, then generated entries; library
// entries are omitted. One entry per line.
std::string render_symbol_table(const SymbolTable& table);

}  // namespace lxg

#endif  // LXG_PREPARSER_HPP_
