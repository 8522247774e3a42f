//
// Copyright 2026 The ROF Toolkit Authors
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
//

#include "rof/text_format.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace rof {

ParseError::ParseError(const std::string& what, std::size_t line,
                       std::size_t column)
    : std::invalid_argument(std::to_string(line) + ":" +
                            std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

constexpr std::size_t kMaxNesting = 100000;

struct Pos {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct SExpr {
  Pos pos;
  std::string atom;  // empty for lists
  std::vector<SExpr> items;
  bool is_list = false;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_top() {
    skip_space();
    if (at_end()) throw error("empty formula");
    SExpr e = read(0);
    skip_space();
    if (!at_end()) throw error("trailing input after formula");
    return e;
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }

  ParseError error(const std::string& what) const {
    return ParseError(what, pos_.line, pos_.column);
  }

  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_space() {
    while (!at_end()) {
      char c = text_[i_];
      if (c == ';') {
        while (!at_end() && text_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read(std::size_t nesting) {
    if (nesting > kMaxNesting) throw error("nesting too deep");
    SExpr e;
    e.pos = pos_;
    char c = text_[i_];
    if (c == ')') throw error("unexpected ')'");
    if (c != '(') {
      while (!at_end()) {
        c = text_[i_];
        if (c == '(' || c == ')' || c == ';' ||
            std::isspace(static_cast<unsigned char>(c))) {
          break;
        }
        e.atom.push_back(c);
        advance();
      }
      return e;
    }
    e.is_list = true;
    advance();
    for (;;) {
      skip_space();
      if (at_end()) throw ParseError("unclosed '('", e.pos.line, e.pos.column);
      if (text_[i_] == ')') {
        advance();
        return e;
      }
      e.items.push_back(read(nesting + 1));
    }
  }

  std::string_view text_;
  std::size_t i_ = 0;
  Pos pos_;
};

ParseError error_at(const SExpr& e, const std::string& what) {
  return ParseError(what, e.pos.line, e.pos.column);
}

std::optional<std::size_t> parse_uint(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

// Splits an operator like "tbl3" into ("tbl", 3).
bool split_arity(std::string_view op, std::string_view prefix,
                 std::size_t* arity) {
  if (op.substr(0, prefix.size()) != prefix) return false;
  auto n = parse_uint(op.substr(prefix.size()));
  if (!n) return false;
  *arity = *n;
  return true;
}

std::optional<NamedGate> find_named_gate(std::string_view name) {
  if (name == "bal4") return NamedGate::kBalancing4;
  if (name == "bal5") return NamedGate::kBalancing5;
  return std::nullopt;
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// Alphabet evidence from mv gate names and table lengths.
void infer_alphabet(const SExpr& e, const Alphabet** found) {
  if (!e.is_list || e.items.empty() || e.items[0].is_list) return;
  const std::string& op = e.items[0].atom;
  std::size_t arity = 0;
  const Alphabet* here = nullptr;
  if (split_arity(op, "mv", &arity) && e.items.size() >= 2) {
    if (auto g = find_named_gate(e.items[1].atom)) here = &named_gate_alphabet(*g);
  } else if (split_arity(op, "tbl", &arity) && e.items.size() >= 2 &&
             arity > 0 && arity <= kMaxTableArity) {
    const std::size_t len = e.items[1].atom.size();
    for (const Alphabet* a : {&Alphabet::boolean(), &Alphabet::four_valued(),
                              &Alphabet::five_valued()}) {
      if (len == ipow(a->size(), arity)) here = a;
    }
  }
  if (here != nullptr) {
    if (*found != nullptr && **found != *here) {
      throw error_at(e, "gates from different alphabets are mixed");
    }
    *found = here;
  }
  for (const SExpr& c : e.items) infer_alphabet(c, found);
}

class Converter {
 public:
  explicit Converter(const Alphabet& alphabet)
      : alphabet_(alphabet), builder_(alphabet) {}

  VertexId convert(const SExpr& e) {
    if (!e.is_list) return convert_atom(e);
    if (e.items.empty()) throw error_at(e, "empty list");
    const SExpr& head = e.items[0];
    if (head.is_list) throw error_at(head, "expected an operator");
    const std::string& op = head.atom;
    std::span<const SExpr> rest(e.items.begin() + 1, e.items.end());
    std::size_t arity = 0;

    if (op == "not") {
      if (rest.size() != 1) throw error_at(e, "'not' takes one operand");
      const SExpr& arg = rest[0];
      if (!arg.is_list && !arg.atom.empty() && arg.atom[0] == 'x') {
        return builder_.add(Vertex::negated_variable(parse_var(arg)));
      }
      return builder_.add(Vertex::negation(convert(arg)));
    }
    if (op == "and" || op == "or") {
      if (rest.empty()) throw error_at(e, "'" + op + "' needs operands");
      auto children = convert_all(rest);
      return builder_.add(op == "and" ? Vertex::conjunction(std::move(children))
                                      : Vertex::disjunction(std::move(children)));
    }
    if (split_arity(op, "tbl", &arity)) {
      check_operands(e, rest, arity);
      std::vector<Symbol> table;
      for (char c : rest[0].atom) {
        if (c < '0' || static_cast<std::size_t>(c - '0') >= alphabet_.size()) {
          throw error_at(rest[0], std::string("bad table digit '") + c + "'");
        }
        table.push_back(static_cast<Symbol>(c - '0'));
      }
      auto children = convert_all(rest.subspan(1));
      return builder_.add(Vertex::truth_table(std::move(table), std::move(children)));
    }
    if (split_arity(op, "mdnf", &arity)) {
      check_operands(e, rest, arity);
      auto terms = parse_terms(rest[0]);
      auto children = convert_all(rest.subspan(1));
      return builder_.add(Vertex::mdnf(std::move(terms), std::move(children)));
    }
    if (split_arity(op, "mv", &arity)) {
      check_operands(e, rest, arity);
      auto gate = find_named_gate(rest[0].atom);
      if (!gate) throw error_at(rest[0], "unknown gate '" + rest[0].atom + "'");
      auto children = convert_all(rest.subspan(1));
      return builder_.add(Vertex::multi_valued(*gate, std::move(children)));
    }
    throw error_at(head, "unknown operator '" + op + "'");
  }

  Formula finish() && { return std::move(builder_).build(); }

 private:
  VertexId convert_atom(const SExpr& e) {
    if (e.atom == "0" || e.atom == "1") {
      return builder_.add(Vertex::constant_leaf(
          e.atom == "0" ? alphabet_.zero() : alphabet_.one()));
    }
    return builder_.add(Vertex::variable(parse_var(e)));
  }

  VarIndex parse_var(const SExpr& e) {
    if (e.is_list || e.atom.size() < 2 || e.atom[0] != 'x') {
      throw error_at(e, "expected a variable, got '" + e.atom + "'");
    }
    auto n = parse_uint(std::string_view(e.atom).substr(1));
    if (!n || *n > 0xFFFFFFF0u) throw error_at(e, "bad variable '" + e.atom + "'");
    return static_cast<VarIndex>(*n);
  }

  void check_operands(const SExpr& e, std::span<const SExpr> rest,
                      std::size_t arity) {
    if (rest.empty() || rest[0].is_list) {
      throw error_at(e, "missing gate parameter");
    }
    if (rest.size() - 1 != arity) {
      throw error_at(e, "expected " + std::to_string(arity) + " operands, got " +
                            std::to_string(rest.size() - 1));
    }
  }

  std::vector<TermMask> parse_terms(const SExpr& e) {
    std::vector<TermMask> terms;
    if (e.atom == "-") return terms;
    std::string_view s = e.atom;
    while (true) {
      std::size_t slash = s.find('/');
      std::string_view term = s.substr(0, slash);
      TermMask mask = 0;
      while (true) {
        std::size_t comma = term.find(',');
        auto pos = parse_uint(term.substr(0, comma));
        if (!pos || *pos >= kMaxTableArity) {
          throw error_at(e, "bad mdnf term list '" + e.atom + "'");
        }
        mask |= TermMask{1} << *pos;
        if (comma == std::string_view::npos) break;
        term.remove_prefix(comma + 1);
      }
      terms.push_back(mask);
      if (slash == std::string_view::npos) break;
      s.remove_prefix(slash + 1);
    }
    return terms;
  }

  std::vector<VertexId> convert_all(std::span<const SExpr> items) {
    std::vector<VertexId> ids;
    ids.reserve(items.size());
    for (const SExpr& c : items) ids.push_back(convert(c));
    return ids;
  }

  const Alphabet& alphabet_;
  FormulaBuilder builder_;
};

void write(const Formula& f, VertexId v, std::string& out) {
  const Vertex& vx = f.vertex(v);
  const Alphabet& alpha = f.alphabet();
  auto children = [&] {
    for (VertexId c : vx.children) {
      out.push_back(' ');
      write(f, c, out);
    }
    out.push_back(')');
  };
  switch (vx.kind) {
    case GateKind::kVariable:
      out += "x" + std::to_string(vx.var);
      return;
    case GateKind::kNegatedVariable:
      out += "(not x" + std::to_string(vx.var) + ")";
      return;
    case GateKind::kConstant:
      out += vx.constant == alpha.zero() ? "0" : "1";
      return;
    case GateKind::kNot:
      out += "(not";
      children();
      return;
    case GateKind::kAnd:
      out += "(and";
      children();
      return;
    case GateKind::kOr:
      out += "(or";
      children();
      return;
    case GateKind::kTable:
      out += "(tbl" + std::to_string(vx.arity()) + " ";
      for (Symbol s : vx.table) out.push_back(static_cast<char>('0' + s));
      children();
      return;
    case GateKind::kMdnf: {
      out += "(mdnf" + std::to_string(vx.arity()) + " ";
      if (vx.terms.empty()) out += "-";
      for (std::size_t t = 0; t < vx.terms.size(); ++t) {
        if (t > 0) out.push_back('/');
        bool first = true;
        for (std::size_t i = 0; i < vx.arity(); ++i) {
          if ((vx.terms[t] >> i & 1u) == 0) continue;
          if (!first) out.push_back(',');
          out += std::to_string(i);
          first = false;
        }
      }
      children();
      return;
    }
    case GateKind::kMultiValued:
      out += "(mv" + std::to_string(vx.arity()) + " " + named_gate_name(vx.named);
      children();
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text) {
  SExpr top = Reader(text).read_top();
  const Alphabet* alphabet = nullptr;
  infer_alphabet(top, &alphabet);
  if (alphabet == nullptr) alphabet = &Alphabet::boolean();
  Converter conv(*alphabet);
  conv.convert(top);
  return std::move(conv).finish();
}

std::string serialize(const Formula& f) {
  std::string out;
  write(f, f.root(), out);
  return out;
}

Assignment parse_assignment(std::string_view text, const Alphabet& alphabet) {
  std::vector<Symbol> values;
  values.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    auto s = alphabet.find_code(c);
    if (!s) {
      throw ParseError(std::string("symbol '") + c + "' not in alphabet", 1,
                       i + 1);
    }
    values.push_back(*s);
  }
  return Assignment(alphabet, std::move(values));
}

std::string format_assignment(const Assignment& a) {
  std::string out;
  out.reserve(a.size());
  for (Symbol s : a.values()) out.push_back(a.alphabet().code(s));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Assignment load_assignment(const std::string& arg, const Alphabet& alphabet) {
  if (!arg.empty() && arg[0] == '@') {
    return parse_assignment(read_file(arg.substr(1)), alphabet);
  }
  return parse_assignment(arg, alphabet);
}

}  // namespace rof
