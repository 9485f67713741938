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

// lxgc: LXG compiler and Moon runner.
//
//   lxgc ?                      help
//   lxgc <file.lxg> [yes|no]    compile; "yes" also writes the phase dumps
//   lxgc                        asks for the file name
//   lxgc moon run <file.m> [--trace] [--fuel N] [--stdin FILE]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lxg/lxg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFuel = 2;
constexpr int kExitFault = 3;
constexpr int kExitUsage = 64;

constexpr const char* kHelp =
    "LXG compiler\n"
    "\n"
    "usage:\n"
    "  lxgc ?                       print this help\n"
    "  lxgc <file.lxg> [yes|no]     compile <file.lxg> to <file>.m; with 'yes' also\n"
    "                               write lxg_grammar.out, lxg_scan.out,\n"
    "                               lxg_preparse.out, lxg_symbol_table.out and\n"
    "                               lxg_parse.out to the working directory\n"
    "  lxgc                         prompt for the source file name\n"
    "  lxgc moon run <file.m> [--trace] [--fuel N] [--stdin FILE]\n"
    "                               assemble and run Moon code; exit status 0 on\n"
    "                               hlt, 2 when the fuel runs out, 3 on a fault\n";

int compile(const std::string& path, bool dump) {
  lxg_compiler* compiler = nullptr;
  lxg_status status = lxg_compiler_create(nullptr, nullptr, &compiler);
  if (status != LXG_OK) {
    std::cerr << "lxgc: " << (compiler ? lxg_compiler_last_error(compiler) : "cannot start") << "\n";
    return kExitError;
  }
  status = lxg_compile_file(compiler, path.c_str(), nullptr, dump ? 1 : 0, nullptr);
  if (status != LXG_OK) std::cerr << "lxgc: " << lxg_compiler_last_error(compiler) << "\n";
  lxg_compiler_destroy(compiler);
  return status == LXG_OK ? kExitOk : kExitError;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int moon(int argc, char** argv) {
  CLI::App app{"Moon assembler and virtual machine", "lxgc moon"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "assemble and execute a .m file");
  std::string file;
  std::string stdin_file;
  bool trace = false;
  std::int64_t fuel = 10'000'000;
  run->add_option("file", file, "Moon assembly file")->required();
  run->add_flag("--trace", trace, "print one line per executed instruction to stderr");
  run->add_option("--fuel", fuel, "instruction budget")->check(CLI::PositiveNumber);
  run->add_option("--stdin", stdin_file, "file supplying READN/READC input (default: standard input)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  std::string text;
  if (!read_file(file, text)) {
    std::cerr << "lxgc: cannot open '" << file << "'\n";
    return kExitError;
  }
  std::string input;
  if (stdin_file.empty()) {
    input.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else if (!read_file(stdin_file, input)) {
    std::cerr << "lxgc: cannot open '" << stdin_file << "'\n";
    return kExitError;
  }

  lxg_program* program = nullptr;
  char* error = nullptr;
  if (lxg_moon_assemble(text.c_str(), &program, &error) != LXG_OK) {
    std::cerr << "lxgc: " << (error ? error : "assembly failed") << "\n";
    lxg_string_free(error);
    return kExitError;
  }
  lxg_run_options options{input.c_str(), fuel, trace ? 1 : 0};
  lxg_run_result result{};
  const lxg_status status = lxg_moon_run(program, &options, &result, &error);
  if (result.output) std::cout << result.output << std::flush;
  if (result.trace) std::cerr << result.trace;
  int code = kExitOk;
  if (status != LXG_OK) {
    std::cerr << "lxgc: " << (error ? error : lxg_status_name(status));
    if (result.error_line > 0) std::cerr << " (" << file << ":" << result.error_line << ")";
    std::cerr << "\n";
    code = status == LXG_ERR_FUEL ? kExitFuel : status == LXG_ERR_RUNTIME ? kExitFault : kExitError;
  }
  lxg_string_free(result.output);
  lxg_string_free(result.trace);
  lxg_string_free(error);
  lxg_moon_destroy(program);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc >= 2 && std::string(argv[1]) == "moon") return moon(argc - 1, argv + 1);
  if (argc >= 2 && std::string(argv[1]) == "?") {
    std::cout << kHelp;
    return kExitOk;
  }
  if (argc > 3) {
    std::cerr << "lxgc: too many arguments; try 'lxgc ?'\n";
    return kExitUsage;
  }
  bool dump = false;
  if (argc == 3) {
    const std::string flag = argv[2];
    if (flag != "yes" && flag != "no") {
      std::cerr << "lxgc: the second argument should be 'yes' or 'no'\n";
      return kExitUsage;
    }
    dump = flag == "yes";
  }
  std::string path;
  if (argc >= 2) {
    path = argv[1];
  } else {
    std::cout << "Enter the LXG source file name: " << std::flush;
    if (!std::getline(std::cin, path) || path.empty()) {
      std::cerr << "lxgc: no file name given\n";
      return kExitUsage;
    }
  }
  return compile(path, dump);
}
