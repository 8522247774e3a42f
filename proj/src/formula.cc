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

#include "rof/formula.h"

#include <algorithm>
#include <string>

namespace rof {
namespace {

std::vector<Symbol> make_balancing4() {
  // Symbols: 0, 1, P, F.
  constexpr Symbol k0 = 0, k1 = 1, kP = 2, kF = 3;
  std::vector<Symbol> t(16, kF);
  auto set = [&](Symbol a, Symbol b, Symbol out) { t[a + 4 * b] = out; };
  set(k0, k0, k0);
  set(k1, k1, k1);
  set(k0, k1, kP);
  set(k1, k0, kP);
  set(kP, kP, kP);
  return t;
}

std::vector<Symbol> make_balancing5() {
  // Symbols: 0 < F0 < P < F1 < 1.
  constexpr Symbol k0 = 0, kF0 = 1, kP = 2, kF1 = 3, k1 = 4;
  std::vector<Symbol> t(25, kF1);
  auto set = [&](Symbol a, Symbol b, Symbol out) {
    t[a + 5 * b] = out;
    t[b + 5 * a] = out;
  };
  set(k0, k0, k0);
  set(k1, k1, k1);
  set(k1, k0, kP);
  set(kP, kP, kP);
  set(k0, kP, kF0);
  set(k1, kP, kF1);
  set(kP, kF0, kF0);
  set(kF0, k0, kF0);
  set(kF0, kF0, kF0);
  set(kF0, k1, kF1);
  // Every remaining pair contains F1 and stays F1.
  return t;
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

bool boolean_only(GateKind kind) {
  switch (kind) {
    case GateKind::kNegatedVariable:
    case GateKind::kNot:
    case GateKind::kAnd:
    case GateKind::kOr:
    case GateKind::kMdnf:
      return true;
    default:
      return false;
  }
}

}  // namespace

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::kVariable: return "variable";
    case GateKind::kNegatedVariable: return "negated_variable";
    case GateKind::kConstant: return "constant";
    case GateKind::kNot: return "not";
    case GateKind::kAnd: return "and";
    case GateKind::kOr: return "or";
    case GateKind::kTable: return "table";
    case GateKind::kMdnf: return "mdnf";
    case GateKind::kMultiValued: return "multi_valued";
  }
  return "?";
}

const char* named_gate_name(NamedGate gate) {
  return gate == NamedGate::kBalancing4 ? "bal4" : "bal5";
}

const Alphabet& named_gate_alphabet(NamedGate gate) {
  return gate == NamedGate::kBalancing4 ? Alphabet::four_valued()
                                        : Alphabet::five_valued();
}

const std::vector<Symbol>& named_gate_table(NamedGate gate) {
  static const std::vector<Symbol> kBal4 = make_balancing4();
  static const std::vector<Symbol> kBal5 = make_balancing5();
  return gate == NamedGate::kBalancing4 ? kBal4 : kBal5;
}

std::size_t table_index(std::span<const Symbol> inputs, std::size_t base) {
  std::size_t index = 0;
  for (std::size_t i = inputs.size(); i-- > 0;) index = index * base + inputs[i];
  return index;
}

Vertex Vertex::variable(VarIndex var) {
  Vertex v;
  v.kind = GateKind::kVariable;
  v.var = var;
  return v;
}

Vertex Vertex::negated_variable(VarIndex var) {
  Vertex v;
  v.kind = GateKind::kNegatedVariable;
  v.var = var;
  return v;
}

Vertex Vertex::constant_leaf(Symbol value) {
  Vertex v;
  v.kind = GateKind::kConstant;
  v.constant = value;
  return v;
}

Vertex Vertex::negation(VertexId child) {
  Vertex v;
  v.kind = GateKind::kNot;
  v.children = {child};
  return v;
}

Vertex Vertex::conjunction(std::vector<VertexId> children) {
  Vertex v;
  v.kind = GateKind::kAnd;
  v.children = std::move(children);
  return v;
}

Vertex Vertex::disjunction(std::vector<VertexId> children) {
  Vertex v;
  v.kind = GateKind::kOr;
  v.children = std::move(children);
  return v;
}

Vertex Vertex::truth_table(std::vector<Symbol> table,
                           std::vector<VertexId> children) {
  Vertex v;
  v.kind = GateKind::kTable;
  v.table = std::move(table);
  v.children = std::move(children);
  return v;
}

Vertex Vertex::mdnf(std::vector<TermMask> terms, std::vector<VertexId> children) {
  Vertex v;
  v.kind = GateKind::kMdnf;
  v.terms = std::move(terms);
  v.children = std::move(children);
  return v;
}

Vertex Vertex::multi_valued(NamedGate gate, std::vector<VertexId> children) {
  Vertex v;
  v.kind = GateKind::kMultiValued;
  v.named = gate;
  v.table = named_gate_table(gate);
  v.children = std::move(children);
  return v;
}

Formula::Formula(const Alphabet& alphabet, std::vector<Vertex> vertices,
                 std::size_t num_vars)
    : alphabet_(&alphabet), vertices_(std::move(vertices)), num_vars_(num_vars) {
  if (vertices_.empty()) throw FormulaError("formula has no vertices");
  VarIndex max_var = 0;
  bool any_var = false;
  for (const Vertex& v : vertices_) {
    if (v.is_variable_leaf()) {
      max_var = std::max(max_var, v.var);
      any_var = true;
    }
  }
  if (num_vars_ == 0 && any_var) num_vars_ = std::size_t{max_var} + 1;
  validate();
  stats_ = annotate_stats(*this);
}

void Formula::validate() const {
  const std::size_t n = vertices_.size();
  const std::size_t base = alphabet_->size();
  std::vector<bool> has_parent(n, false);
  std::vector<bool> var_seen(num_vars_, false);

  for (std::size_t id = 0; id < n; ++id) {
    const Vertex& v = vertices_[id];
    const std::string where = "vertex " + std::to_string(id) + " (" +
                              gate_kind_name(v.kind) + "): ";
    if (!alphabet_->is_boolean() && boolean_only(v.kind)) {
      throw FormulaError(where + "gate requires the Boolean alphabet");
    }
    for (VertexId c : v.children) {
      if (c >= id) throw FormulaError(where + "child ids must precede parent");
      if (has_parent[c]) throw FormulaError(where + "child has two parents");
      has_parent[c] = true;
    }
    switch (v.kind) {
      case GateKind::kVariable:
      case GateKind::kNegatedVariable:
        if (!v.children.empty()) throw FormulaError(where + "leaf has children");
        if (v.var >= num_vars_) throw FormulaError(where + "variable out of range");
        if (var_seen[v.var]) {
          throw FormulaError("duplicate variable x" + std::to_string(v.var) +
                             " (formula must be read-once)");
        }
        var_seen[v.var] = true;
        break;
      case GateKind::kConstant:
        if (!v.children.empty()) throw FormulaError(where + "leaf has children");
        if (v.constant >= base) throw FormulaError(where + "constant outside alphabet");
        break;
      case GateKind::kNot:
        if (v.arity() != 1) throw FormulaError(where + "negation takes one input");
        break;
      case GateKind::kAnd:
      case GateKind::kOr:
        if (v.arity() == 0) throw FormulaError(where + "needs at least one input");
        break;
      case GateKind::kTable: {
        if (v.arity() == 0 || v.arity() > kMaxTableArity) {
          throw FormulaError(where + "table arity out of range");
        }
        if (v.table.size() != ipow(base, v.arity())) {
          throw FormulaError(where + "table length " +
                             std::to_string(v.table.size()) + " != |Σ|^" +
                             std::to_string(v.arity()));
        }
        for (Symbol s : v.table) {
          if (s >= base) throw FormulaError(where + "table entry outside alphabet");
        }
        break;
      }
      case GateKind::kMdnf: {
        if (v.arity() == 0 || v.arity() > kMaxTableArity) {
          throw FormulaError(where + "mdnf arity out of range");
        }
        const TermMask all = (TermMask{1} << v.arity()) - 1;
        for (std::size_t i = 0; i < v.terms.size(); ++i) {
          if ((v.terms[i] & ~all) != 0) {
            throw FormulaError(where + "term references a missing input");
          }
          for (std::size_t j = 0; j < v.terms.size(); ++j) {
            if (i != j && (v.terms[i] & v.terms[j]) == v.terms[i]) {
              throw FormulaError(where + "terms must be pairwise incomparable");
            }
          }
        }
        break;
      }
      case GateKind::kMultiValued:
        if (named_gate_alphabet(v.named) != *alphabet_) {
          throw FormulaError(where + "gate does not match the alphabet");
        }
        if (v.arity() != 2 || v.table != named_gate_table(v.named)) {
          throw FormulaError(where + "malformed built-in gate");
        }
        break;
    }
  }
  for (std::size_t id = 0; id + 1 < n; ++id) {
    if (!has_parent[id]) {
      throw FormulaError("vertex " + std::to_string(id) +
                         " is not reachable from the root");
    }
  }
}

std::span<const VertexId> Formula::leaves(VertexId v) const {
  return std::span<const VertexId>(stats_.leaf_order)
      .subspan(stats_.leaf_begin[v], stats_.size[v]);
}

std::span<const std::uint64_t> Formula::child_sums(VertexId v) const {
  return std::span<const std::uint64_t>(stats_.child_sums)
      .subspan(stats_.child_sum_offset[v], vertices_[v].arity());
}

SubtreeStats annotate_stats(const Formula& f) {
  const std::size_t n = f.num_vertices();
  SubtreeStats s;
  s.size.assign(n, 0);
  s.depth.assign(n, 0);
  s.parent.assign(n, kNoVertex);
  s.heaviest_child.assign(n, kNoVertex);
  s.leaf_begin.assign(n, 0);
  s.child_sum_offset.assign(n, 0);

  // Bottom-up: sizes, heaviest children, running child sums.
  for (VertexId v = 0; v < n; ++v) {
    const Vertex& vx = f.vertex(v);
    s.child_sum_offset[v] = s.child_sums.size();
    if (vx.is_leaf()) {
      s.size[v] = vx.is_variable_leaf() ? 1 : 0;
      s.heaviest_child[v] = v;
      continue;
    }
    std::uint64_t total = 0;
    VertexId best = kNoVertex;
    for (VertexId c : vx.children) {
      s.parent[c] = v;
      total += s.size[c];
      s.child_sums.push_back(total);
      if (best == kNoVertex || s.size[c] > s.size[best] ||
          (s.size[c] == s.size[best] && c < best)) {
        best = c;
      }
    }
    s.size[v] = total;
    s.heaviest_child[v] = best;
  }

  // Top-down: depths and depth-first leaf ranges.
  s.leaf_order.assign(s.size[f.root()], kNoVertex);
  for (VertexId v = static_cast<VertexId>(n); v-- > 0;) {
    const Vertex& vx = f.vertex(v);
    s.formula_depth = std::max(s.formula_depth, s.depth[v]);
    if (vx.is_variable_leaf()) {
      s.leaf_order[s.leaf_begin[v]] = v;
      continue;
    }
    std::uint64_t next = s.leaf_begin[v];
    for (VertexId c : vx.children) {
      s.depth[c] = s.depth[v] + 1;
      s.leaf_begin[c] = next;
      next += s.size[c];
    }
  }
  return s;
}

Formula FormulaBuilder::build(std::size_t num_vars) && {
  return Formula(*alphabet_, std::move(vertices_), num_vars);
}

std::vector<std::size_t> gate_counts(const Formula& f) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(GateKind::kMultiValued) + 1, 0);
  for (const Vertex& v : f.vertices()) ++counts[static_cast<std::size_t>(v.kind)];
  return counts;
}

}  // namespace rof
