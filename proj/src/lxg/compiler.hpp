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

#ifndef LXG_COMPILER_HPP_
#define LXG_COMPILER_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "lxg/grammar.hpp"

namespace lxg {

// Dump file names, in pipeline order.
inline constexpr std::string_view kGrammarDump = "lxg_grammar.out";
inline constexpr std::string_view kScanDump = "lxg_scan.out";
inline constexpr std::string_view kPreparseDump = "lxg_preparse.out";
inline constexpr std::string_view kSymbolTableDump = "lxg_symbol_table.out";
inline constexpr std::string_view kParseDump = "lxg_parse.out";

struct CompileConfig {
  std::filesystem::path source;
  bool dump = false;
  // Directory for the dump files; the working directory when empty.
  std::filesystem::path dump_dir;
  // Bundled grammar / library when empty.
  std::filesystem::path grammar;
  std::filesystem::path library;
  // Source stem + ".m" when empty.
  std::filesystem::path output;
};

struct CompileOutput {
  std::string assembly;
  // Dump file name -> contents, one entry per completed phase.
  std::map<std::string, std::string, std::less<>> dumps;
};

// Grammar tables are built once; compile() may then run any number of times.
class Compiler {
 public:
  // Throws CompileError(kGrammar).
  explicit Compiler(std::optional<std::string> grammar_text = std::nullopt,
                    std::optional<std::string> library_text = std::nullopt);

  const GrammarTables& tables() const { return tables_; }

  // Runs scan, preparse, parse and code generation. `output` receives the
  // dumps of every phase that completed even when a later one throws.
  void compile(std::string_view source, std::string_view output_name, CompileOutput& output) const;
  std::string compile(std::string_view source, std::string_view output_name = "out.m") const;

 private:
  GrammarTables tables_;
  std::string library_;
};

// File-level driver: reads the source, writes the .m file and, in dump
// mode, the dump files. Returns the output path. Throws CompileError.
std::filesystem::path compile_file(const CompileConfig& config);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace lxg

#endif  // LXG_COMPILER_HPP_
