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

#include "lxg/preparser.hpp"

#include <fmt/format.h>

namespace lxg {

std::string_view var_type_name(VarType type) {
  switch (type) {
    case VarType::kInteger: return "INTEGER";
    case VarType::kBoolean: return "BOOLEAN";
    case VarType::kString: return "STRING";
    case VarType::kArray: return "ARRAY";
    case VarType::kProcedure: return "PROCEDURE";
    case VarType::kUnknown: return "UNKNOWN";
  }
  return "?";
}

std::string SymbolEntry::label() const {
  if (is_global() || is_generated) return name;
  return location + "_" + name;
}

int SymbolTable::add(SymbolEntry entry) {
  entries_.push_back(std::move(entry));
  return size() - 1;
}

int SymbolTable::add_generated(std::string name, VarType type, std::string value, int line) {
  SymbolEntry e;
  e.name = std::move(name);
  e.type = type;
  e.is_generated = true;
  e.gen_value = std::move(value);
  e.lines.push_back(line);
  e.decl_line = line;
  return add(std::move(e));
}

std::optional<int> SymbolTable::find(std::string_view name, std::string_view location) const {
  for (int i = 0; i < size(); ++i) {
    if (!entries_[i].is_generated && entries_[i].name == name &&
        entries_[i].location == location) {
      return i;
    }
  }
  return std::nullopt;
}

std::optional<int> SymbolTable::lookup(std::string_view name, std::string_view location) const {
  if (location != kMainProgram) {
    if (auto local = find(name, location)) return local;
  }
  return find(name, kMainProgram);
}

std::vector<int> SymbolTable::params_of(std::string_view procedure) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (entries_[i].is_param && entries_[i].location == procedure) out.push_back(i);
  }
  return out;
}

namespace {

std::string headline(const std::vector<Diagnostic>& d) {
  return d.empty() ? std::string("declaration error") : d.front().message;
}

TokenKind identifier_kind(VarType type) {
  switch (type) {
    case VarType::kInteger: return TokenKind::kIIdentifier;
    case VarType::kBoolean: return TokenKind::kBIdentifier;
    case VarType::kString: return TokenKind::kSIdentifier;
    case VarType::kArray: return TokenKind::kAIdentifier;
    default: return TokenKind::kUIdentifier;
  }
}

class DeclarationParser {
 public:
  DeclarationParser(SymbolTable& table, std::vector<Diagnostic>& errors)
      : table_(table), errors_(errors) {}

  // Returns the rewritten stream. In library mode a procedure has no body:
  // it ends at the next PROCEDURE or at eof.
  std::vector<Token> run(const std::vector<Token>& in, bool library) {
    in_ = &in;
    library_ = library;
    out_.clear();
    location_ = std::string(kMainProgram);
    i_ = 0;
    while (i_ < in.size()) {
      const Token& t = in[i_];
      if (t.kind == TokenKind::kEof) {
        if (in_procedure_) end_procedure();
        out_.push_back(t);
        ++i_;
        continue;
      }
      if (t.kind == TokenKind::kReservedWord) {
        if (t.reserved_word == "INTEGER" || t.reserved_word == "BOOLEAN" ||
            t.reserved_word == "STRING") {
          typed_declaration();
          continue;
        }
        if (t.reserved_word == "ARRAY") {
          array_declaration();
          continue;
        }
        if (t.reserved_word == "VALUE") {
          value_declaration();
          continue;
        }
        if (t.reserved_word == "PROCEDURE") {
          if (library_ && in_procedure_) end_procedure();
          procedure_head();
          continue;
        }
        if (in_procedure_ && !library_) {
          if (t.reserved_word == "BEGIN") {
            ++depth_;
          } else if (t.reserved_word == "END") {
            if (depth_ == 0) {
              out_.push_back(t);
              ++i_;
              end_procedure();
              continue;
            }
            --depth_;
          }
        }
      }
      if (t.kind == TokenKind::kId) {
        out_.push_back(use(t));
        ++i_;
        continue;
      }
      out_.push_back(t);
      ++i_;
    }
    return std::move(out_);
  }

 private:
  const Token& cur() const { return (*in_)[i_]; }

  void error(const Token& at, std::string message) {
    errors_.push_back({std::move(message), at.line, at.pos});
  }

  void unexpected(const Token& at) {
    const std::string what = at.kind == TokenKind::kEof ? std::string("eof") : at.lexeme;
    error(at, fmt::format("incorrect declaration - unexpected token '{}'", what));
  }

  // Skips to just past the next ';' (or up to eof) after a broken
  // declaration.
  void recover() {
    while (cur().kind != TokenKind::kEof && cur().kind != TokenKind::kSemi) ++i_;
    if (cur().kind == TokenKind::kSemi) ++i_;
  }

  Token use(const Token& t) {
    Token out = t;
    auto found = table_.lookup(t.lexeme, location_);
    if (!found) {
      SymbolEntry e;
      e.name = t.lexeme;
      e.location = location_;
      e.decl_line = t.line;
      e.decl_pos = t.pos;
      e.is_library = library_;
      found = table_.add(std::move(e));
    }
    auto& entry = table_.at(*found);
    entry.lines.push_back(t.line);
    out.kind = identifier_kind(entry.type);
    out.symbol = *found;
    return out;
  }

  // Declares `t` with `type` in the current location. Parameters of the
  // current procedure are patched instead of redeclared.
  std::optional<int> declare(const Token& t, VarType type, int array_size) {
    if (auto existing = table_.find(t.lexeme, location_)) {
      auto& e = table_.at(*existing);
      if (e.is_param && e.type == VarType::kUnknown) {
        if (type == VarType::kArray && e.is_value) {
          error(t, fmt::format("VALUE declaration of the array parameter {}", t.lexeme));
          return std::nullopt;
        }
        e.type = type;
        e.array_size = array_size;
        for (std::size_t idx : header_tokens_) {
          if (out_[idx].symbol == *existing) out_[idx].kind = identifier_kind(type);
        }
        return existing;
      }
      if (e.type == VarType::kUnknown && !e.is_param && e.lines.size() > 0) {
        // Used before its declaration: earlier uses stay untyped.
        e.type = type;
        e.array_size = array_size;
        return existing;
      }
      error(t, fmt::format("duplicate declaration of {} in {}", t.lexeme, location_));
      return std::nullopt;
    }
    SymbolEntry e;
    e.name = t.lexeme;
    e.type = type;
    e.array_size = array_size;
    e.location = location_;
    e.is_library = library_;
    e.decl_line = t.line;
    e.decl_pos = t.pos;
    return table_.add(std::move(e));
  }

  void typed_declaration() {
    const std::string& word = cur().reserved_word;
    const VarType type = word == "INTEGER"   ? VarType::kInteger
                         : word == "BOOLEAN" ? VarType::kBoolean
                                             : VarType::kString;
    ++i_;
    while (true) {
      if (cur().kind != TokenKind::kId) return unexpected(cur()), recover();
      declare(cur(), type, 0);
      ++i_;
      if (cur().kind == TokenKind::kComma) {
        ++i_;
        continue;
      }
      if (cur().kind == TokenKind::kSemi) {
        ++i_;
        return;
      }
      return unexpected(cur()), recover();
    }
  }

  void array_declaration() {
    ++i_;
    while (true) {
      if (cur().kind != TokenKind::kId) return unexpected(cur()), recover();
      const Token name = cur();
      ++i_;
      int size = 0;
      bool sized = false;
      if (cur().kind == TokenKind::kLSqParen) {
        ++i_;
        if (cur().kind != TokenKind::kNumber) return unexpected(cur()), recover();
        size = static_cast<int>(std::min<long long>(std::stoll(cur().lexeme), 0x3fffffff));
        sized = true;
        ++i_;
        if (cur().kind != TokenKind::kRSqParen) return unexpected(cur()), recover();
        ++i_;
      }
      auto existing = table_.find(name.lexeme, location_);
      const bool is_param = existing && table_.at(*existing).is_param;
      if (!sized && !is_param) {
        return unexpected(cur()), recover();
      }
      if (sized && size < 1) {
        error(name, fmt::format(
                        "incorrect array declaration - the array size must be greater than zero ({})",
                        name.lexeme));
      } else {
        declare(name, VarType::kArray, size);
      }
      if (cur().kind == TokenKind::kComma) {
        ++i_;
        continue;
      }
      if (cur().kind == TokenKind::kSemi) {
        ++i_;
        return;
      }
      return unexpected(cur()), recover();
    }
  }

  void value_declaration() {
    const Token value_token = cur();
    ++i_;
    if (!in_procedure_) {
      error(value_token, "VALUE declaration within the main program");
      return recover();
    }
    while (true) {
      if (cur().kind != TokenKind::kId) return unexpected(cur()), recover();
      const Token& name = cur();
      auto found = table_.find(name.lexeme, location_);
      if (!found || !table_.at(*found).is_param) {
        error(name, fmt::format("VALUE declaration of {}, which is not a parameter of {}",
                                name.lexeme, location_));
      } else if (table_.at(*found).type == VarType::kArray) {
        error(name, fmt::format("VALUE declaration of the array parameter {}", name.lexeme));
      } else {
        table_.at(*found).is_value = true;
      }
      ++i_;
      if (cur().kind == TokenKind::kComma) {
        ++i_;
        continue;
      }
      if (cur().kind == TokenKind::kSemi) {
        ++i_;
        return;
      }
      return unexpected(cur()), recover();
    }
  }

  void procedure_head() {
    out_.push_back(cur());  // PROCEDURE
    ++i_;
    if (in_procedure_) {
      error(out_.back(), "procedure declarations cannot be nested");
    }
    if (cur().kind != TokenKind::kId) {
      unexpected(cur());
      return;
    }
    const Token name = cur();
    std::optional<int> proc;
    if (table_.find(name.lexeme, kMainProgram)) {
      error(name, fmt::format("duplicate declaration of {} in {}", name.lexeme, kMainProgram));
    } else {
      SymbolEntry e;
      e.name = name.lexeme;
      e.type = VarType::kProcedure;
      e.is_library = library_;
      e.decl_line = name.line;
      e.decl_pos = name.pos;
      proc = table_.add(std::move(e));
    }
    Token retyped = name;
    retyped.kind = TokenKind::kUIdentifier;
    retyped.symbol = proc.value_or(-1);
    out_.push_back(retyped);
    ++i_;

    location_ = name.lexeme;
    in_procedure_ = true;
    depth_ = 0;
    header_tokens_.clear();

    if (cur().kind != TokenKind::kLParen) return;
    out_.push_back(cur());
    ++i_;
    while (true) {
      if (cur().kind != TokenKind::kId) {
        unexpected(cur());
        return;
      }
      const Token& param = cur();
      Token t = param;
      t.kind = TokenKind::kUIdentifier;
      if (table_.find(param.lexeme, location_)) {
        error(param, fmt::format("duplicate declaration of {} in {}", param.lexeme, location_));
      } else {
        SymbolEntry e;
        e.name = param.lexeme;
        e.location = location_;
        e.is_param = true;
        e.is_library = library_;
        e.decl_line = param.line;
        e.decl_pos = param.pos;
        t.symbol = table_.add(std::move(e));
      }
      header_tokens_.push_back(out_.size());
      out_.push_back(t);
      ++i_;
      if (cur().kind == TokenKind::kComma) {
        out_.push_back(cur());
        ++i_;
        continue;
      }
      if (cur().kind == TokenKind::kRParen) {
        out_.push_back(cur());
        ++i_;
        return;
      }
      unexpected(cur());
      return;
    }
  }

  void end_procedure() {
    for (int p : table_.params_of(location_)) {
      const SymbolEntry& e = table_.at(p);
      if (e.type == VarType::kUnknown) {
        errors_.push_back({fmt::format("parameter {} of {} has no type declaration", e.name,
                                       location_),
                           e.decl_line, e.decl_pos});
      }
    }
    location_ = std::string(kMainProgram);
    in_procedure_ = false;
    depth_ = 0;
    header_tokens_.clear();
  }

  SymbolTable& table_;
  std::vector<Diagnostic>& errors_;
  const std::vector<Token>* in_ = nullptr;
  std::vector<Token> out_;
  std::size_t i_ = 0;
  bool library_ = false;
  bool in_procedure_ = false;
  int depth_ = 0;
  std::string location_{kMainProgram};
  std::vector<std::size_t> header_tokens_;
};

}  // namespace

PreparseError::PreparseError(std::vector<Diagnostic> diagnostics)
    : CompileError(Phase::kPreparse, headline(diagnostics),
                   diagnostics.empty() ? 0 : diagnostics.front().line,
                   diagnostics.empty() ? 0 : diagnostics.front().pos),
      diagnostics_(std::move(diagnostics)) {}

PreparseResult preparse(const std::vector<Token>& library_tokens,
                        const std::vector<Token>& source_tokens) {
  PreparseResult result;
  std::vector<Diagnostic> errors;
  DeclarationParser parser(result.table, errors);
  parser.run(library_tokens, /*library=*/true);
  result.tokens = parser.run(source_tokens, /*library=*/false);
  if (!errors.empty()) throw PreparseError(std::move(errors));
  return result;
}

std::string render_symbol_table(const SymbolTable& table) {
  std::string out;
  for (const auto& e : table.entries()) {
    if (e.is_library || e.is_generated) continue;
    out += fmt::format("name: {}; type: {}; ", e.name, var_type_name(e.type));
    if (e.type == VarType::kArray && e.array_size > 0) out += fmt::format("size: {}; ", e.array_size);
    out += fmt::format("is_generated: false; location: {}; scope: {}; is_param: {}; is_value: {}; "
                       "lines:",
                       e.location, e.is_global() ? "GLOBAL" : "LOCAL", e.is_param, e.is_value);
    for (int line : e.lines) out += fmt::format(" {},", line);
    out += '\n';
  }
  for (const auto& e : table.entries()) {
    if (!e.is_generated) continue;
    out += fmt::format("name: {}; type: {}; is_generated: true; value: {}; location: {}; scope: "
                       "GLOBAL; lines: {}\n",
                       e.name, var_type_name(e.type), e.gen_value, e.location,
                       fmt::join(e.lines, ", "));
  }
  return out;
}

}  // namespace lxg
