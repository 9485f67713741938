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

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "lxg/compiler.hpp"
#include "lxg/errors.hpp"
#include "lxg/lxg.h"
#include "lxg/moon.hpp"

struct lxg_compiler {
  std::unique_ptr<lxg::Compiler> compiler;
  std::filesystem::path grammar_path;
  std::filesystem::path library_path;
  std::string last_error;
  int last_error_line = 0;
};

struct lxg_program {
  lxg::moon::Program program;
  std::optional<lxg::moon::Machine> machine;
};

namespace {

lxg_status status_of(lxg::Phase phase) {
  switch (phase) {
    case lxg::Phase::kIo: return LXG_ERR_IO;
    case lxg::Phase::kGrammar: return LXG_ERR_GRAMMAR;
    case lxg::Phase::kScan: return LXG_ERR_SCAN;
    case lxg::Phase::kPreparse: return LXG_ERR_PREPARSE;
    case lxg::Phase::kParse: return LXG_ERR_PARSE;
    case lxg::Phase::kCodegen: return LXG_ERR_CODEGEN;
    case lxg::Phase::kAssemble: return LXG_ERR_ASSEMBLE;
    case lxg::Phase::kRun: return LXG_ERR_RUNTIME;
  }
  return LXG_ERR_INTERNAL;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** error, const std::string& message) {
  if (error) *error = duplicate(message);
}

// Runs `body`, mapping exceptions to a status and a diagnostic.
template <typename F>
lxg_status guarded(std::string* message, int* line, F&& body) {
  try {
    body();
    if (message) message->clear();
    if (line) *line = 0;
    return LXG_OK;
  } catch (const lxg::CompileError& e) {
    if (message) *message = e.what();
    if (line) *line = e.line();
    return status_of(e.phase());
  } catch (const std::bad_alloc&) {
    if (message) *message = "out of memory";
    return LXG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    if (message) *message = std::string("internal error: ") + e.what();
    return LXG_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* lxg_status_name(lxg_status status) {
  switch (status) {
    case LXG_OK: return "ok";
    case LXG_ERR_IO: return "io";
    case LXG_ERR_SCAN: return "scan";
    case LXG_ERR_GRAMMAR: return "grammar";
    case LXG_ERR_PREPARSE: return "preparse";
    case LXG_ERR_PARSE: return "parse";
    case LXG_ERR_CODEGEN: return "codegen";
    case LXG_ERR_ASSEMBLE: return "assemble";
    case LXG_ERR_RUNTIME: return "runtime";
    case LXG_ERR_FUEL: return "fuel";
    case LXG_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case LXG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

lxg_status lxg_compiler_create(const char* grammar_path, const char* library_path,
                               lxg_compiler** out) {
  if (!out) return LXG_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  auto handle = std::make_unique<lxg_compiler>();
  if (grammar_path) handle->grammar_path = grammar_path;
  if (library_path) handle->library_path = library_path;
  const lxg_status status = guarded(&handle->last_error, &handle->last_error_line, [&] {
    std::optional<std::string> grammar, library;
    if (grammar_path) grammar = lxg::read_text_file(grammar_path);
    if (library_path) library = lxg::read_text_file(library_path);
    handle->compiler = std::make_unique<lxg::Compiler>(std::move(grammar), std::move(library));
  });
  if (status != LXG_OK) return status;
  *out = handle.release();
  return LXG_OK;
}

void lxg_compiler_destroy(lxg_compiler* compiler) { delete compiler; }

const char* lxg_compiler_last_error(const lxg_compiler* compiler) {
  return compiler ? compiler->last_error.c_str() : "";
}

int lxg_compiler_last_error_line(const lxg_compiler* compiler) {
  return compiler ? compiler->last_error_line : 0;
}

lxg_status lxg_compile_string(lxg_compiler* compiler, const char* source, const char* output_name,
                              char** assembly) {
  if (!compiler || !source || !assembly) return LXG_ERR_INVALID_ARGUMENT;
  *assembly = nullptr;
  return guarded(&compiler->last_error, &compiler->last_error_line, [&] {
    const std::string text = compiler->compiler->compile(source, output_name ? output_name : "out.m");
    *assembly = duplicate(text);
    if (!*assembly) throw std::bad_alloc();
  });
}

lxg_status lxg_compile_file(lxg_compiler* compiler, const char* source_path,
                            const char* output_path, int dump, const char* dump_dir) {
  if (!compiler || !source_path) return LXG_ERR_INVALID_ARGUMENT;
  return guarded(&compiler->last_error, &compiler->last_error_line, [&] {
    lxg::CompileConfig config;
    config.source = source_path;
    config.dump = dump != 0;
    if (dump_dir) config.dump_dir = dump_dir;
    if (output_path) config.output = output_path;
    config.grammar = compiler->grammar_path;
    config.library = compiler->library_path;
    lxg::compile_file(config);
  });
}

void lxg_string_free(char* text) { std::free(text); }

lxg_status lxg_moon_assemble(const char* text, lxg_program** out, char** error) {
  if (error) *error = nullptr;
  if (!text || !out) return LXG_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  std::string message;
  const lxg_status status = guarded(&message, nullptr, [&] {
    auto p = std::make_unique<lxg_program>();
    p->program = lxg::moon::assemble(text);
    *out = p.release();
  });
  if (status != LXG_OK) set_error(error, message);
  return status;
}

void lxg_moon_destroy(lxg_program* program) { delete program; }

lxg_status lxg_moon_run(lxg_program* program, const lxg_run_options* options,
                        lxg_run_result* result, char** error) {
  if (error) *error = nullptr;
  if (!program || !result) return LXG_ERR_INVALID_ARGUMENT;
  *result = lxg_run_result{};
  lxg_status status = LXG_OK;
  std::string message;
  std::string run_error;
  const lxg_status outer = guarded(&message, nullptr, [&] {
    lxg::moon::RunOptions o;
    if (options) {
      if (options->input) o.input = options->input;
      if (options->fuel > 0) o.fuel = options->fuel;
      o.trace = options->trace != 0;
    }
    lxg::moon::RunResult r = lxg::moon::run(program->program, o);
    result->output = duplicate(r.output);
    result->trace = o.trace ? duplicate(r.trace) : nullptr;
    result->steps = r.steps;
    result->error_line = r.error_line;
    program->machine = std::move(r.machine);
    switch (r.status) {
      case lxg::moon::RunStatus::kHalted: break;
      case lxg::moon::RunStatus::kFuelExhausted: status = LXG_ERR_FUEL; break;
      case lxg::moon::RunStatus::kFault: status = LXG_ERR_RUNTIME; break;
    }
    run_error = r.error;
  });
  if (outer != LXG_OK) {
    status = outer;
  } else {
    message = run_error;
  }
  if (status != LXG_OK) set_error(error, message);
  return status;
}

lxg_status lxg_moon_word(const lxg_program* program, const char* label, int32_t* value) {
  if (!program || !label || !value) return LXG_ERR_INVALID_ARGUMENT;
  auto it = program->program.labels.find(std::string_view(label));
  if (it == program->program.labels.end()) return LXG_ERR_INVALID_ARGUMENT;
  try {
    *value = program->machine ? program->machine->word(it->second)
                              : lxg::moon::Machine(program->program).word(it->second);
  } catch (const std::exception&) {
    return LXG_ERR_INVALID_ARGUMENT;
  }
  return LXG_OK;
}

}  // extern "C"
