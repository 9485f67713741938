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

#include "lxg/compiler.hpp"

#include <fmt/core.h>

#include <fstream>
#include <sstream>

#include "lxg/bundled.hpp"
#include "lxg/codegen.hpp"
#include "lxg/errors.hpp"
#include "lxg/lexer.hpp"
#include "lxg/parser.hpp"
#include "lxg/preparser.hpp"

namespace lxg {

namespace {

void fail_on_scan_errors(const std::vector<Token>& tokens, std::string_view what) {
  for (const Token& t : tokens) {
    if (t.kind != TokenKind::kError) continue;
    throw CompileError(Phase::kScan, fmt::format("{}{}: '{}'", what, t.error_note, t.lexeme),
                       t.line, t.pos);
  }
}

}  // namespace

Compiler::Compiler(std::optional<std::string> grammar_text, std::optional<std::string> library_text)
    : tables_(GrammarTables::build(grammar_text ? *grammar_text : std::string(bundled_grammar()))),
      library_(library_text ? std::move(*library_text) : std::string(bundled_library())) {}

void Compiler::compile(std::string_view source, std::string_view output_name,
                       CompileOutput& output) const {
  output.dumps[std::string(kGrammarDump)] =
      render_grammar_report(tables_.grammar, tables_.first, tables_.follow, tables_.automaton);

  const std::vector<Token> library_tokens = scan_source(library_);
  fail_on_scan_errors(library_tokens, "run-time library: ");
  const std::vector<Token> source_tokens = scan_source(source);
  output.dumps[std::string(kScanDump)] = render_tokens(source_tokens);
  fail_on_scan_errors(source_tokens, "");

  PreparseResult pre = preparse(library_tokens, source_tokens);
  output.dumps[std::string(kPreparseDump)] = render_tokens(pre.tokens);
  output.dumps[std::string(kSymbolTableDump)] = render_symbol_table(pre.table);

  CodeGenerator generator(tables_.grammar, pre.table, std::string(output_name));
  const auto events = parse(tables_, pre.tokens, &pre.table, &generator);
  // Generated entries appear once code generation has run.
  output.dumps[std::string(kSymbolTableDump)] = render_symbol_table(pre.table);
  output.dumps[std::string(kParseDump)] = render_derivation(tables_.grammar, events);
  output.assembly = generator.finish();
}

std::string Compiler::compile(std::string_view source, std::string_view output_name) const {
  CompileOutput out;
  compile(source, output_name, out);
  return std::move(out.assembly);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CompileError(Phase::kIo, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CompileError(Phase::kIo, fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw CompileError(Phase::kIo, fmt::format("error writing '{}'", path.string()));
}

std::filesystem::path compile_file(const CompileConfig& config) {
  std::optional<std::string> grammar, library;
  if (!config.grammar.empty()) grammar = read_text_file(config.grammar);
  if (!config.library.empty()) library = read_text_file(config.library);
  const std::string source = read_text_file(config.source);

  std::filesystem::path output = config.output;
  if (output.empty()) output = std::filesystem::path(config.source).replace_extension(".m");

  CompileOutput result;
  auto write_dumps = [&] {
    if (!config.dump) return;
    for (const auto& [name, text] : result.dumps) write_text_file(config.dump_dir / name, text);
  };
  try {
    const Compiler compiler(std::move(grammar), std::move(library));
    compiler.compile(source, output.filename().string(), result);
  } catch (...) {
    write_dumps();
    throw;
  }
  write_dumps();
  write_text_file(output, result.assembly);
  return output;
}

}  // namespace lxg
