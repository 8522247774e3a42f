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

#include "rof/normalize.h"

#include <algorithm>
#include <string>

#include "rof/evaluate.h"

namespace rof {

std::vector<Symbol> boolean_table(const Vertex& gate) {
  if (gate.is_leaf()) throw NormalizeError("boolean_table on a leaf");
  if (gate.kind == GateKind::kMultiValued) {
    throw NormalizeError("boolean_table on a multi-valued gate");
  }
  const std::size_t m = gate.arity();
  if (m > kMaxTableArity) throw NormalizeError("gate too wide for a table");
  if (gate.kind == GateKind::kTable) return gate.table;
  std::vector<Symbol> table(std::size_t{1} << m);
  std::vector<Symbol> inputs(m);
  for (std::size_t x = 0; x < table.size(); ++x) {
    for (std::size_t i = 0; i < m; ++i) inputs[i] = (x >> i) & 1u;
    table[x] = gate_output(gate, inputs, Alphabet::boolean());
  }
  return table;
}

std::vector<ForcefulFinding> find_forceful(std::span<const Symbol> table,
                                           std::size_t arity) {
  std::vector<ForcefulFinding> out;
  for (std::size_t i = 0; i < arity; ++i) {
    for (Symbol a = 0; a <= 1; ++a) {
      int seen = -1;
      bool forced = true;
      for (std::size_t x = 0; x < table.size() && forced; ++x) {
        if (((x >> i) & 1u) != a) continue;
        if (seen < 0) {
          seen = table[x];
        } else if (seen != table[x]) {
          forced = false;
        }
      }
      if (forced && seen >= 0) {
        out.push_back({i, a, static_cast<Symbol>(seen)});
      }
    }
  }
  return out;
}

std::vector<ForcefulFinding> find_forceful(const Vertex& gate) {
  return find_forceful(boolean_table(gate), gate.arity());
}

bool is_monotone_table(std::span<const Symbol> table, std::size_t arity) {
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (table[x] == 0) continue;
    for (std::size_t i = 0; i < arity; ++i) {
      if (table[x | (std::size_t{1} << i)] == 0) return false;
    }
  }
  return true;
}

bool is_monotone_table(const Vertex& gate) {
  return is_monotone_table(boolean_table(gate), gate.arity());
}

std::vector<TermMask> compute_mdnf(std::span<const Symbol> table,
                                   std::size_t arity) {
  if (!is_monotone_table(table, arity)) {
    throw NormalizeError("mdnf requested for a non-monotone gate");
  }
  std::vector<TermMask> terms;
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (table[x] == 0) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < arity && minimal; ++i) {
      if ((x >> i & 1u) && table[x & ~(std::size_t{1} << i)] != 0) minimal = false;
    }
    if (minimal) terms.push_back(static_cast<TermMask>(x));
  }
  return terms;
}

std::vector<TermMask> compute_mdnf(const Vertex& gate) {
  return compute_mdnf(boolean_table(gate), gate.arity());
}

namespace {

// Working tree. Nodes are never modified once created.
struct Node {
  enum class Kind { kLiteral, kConstant, kAnd, kOr, kTable };
  Kind kind = Kind::kConstant;
  VarIndex var = 0;
  bool negated = false;
  bool value = false;
  std::vector<std::size_t> children;
  std::vector<Symbol> table;
};

class Normalizer {
 public:
  Normalizer(const Formula& f, std::size_t k, NormalForm form)
      : f_(f), k_(k), form_(form) {}

  NormalizeResult run() {
    if (!f_.alphabet().is_boolean()) {
      throw NormalizeError("only Boolean formulas can be normalized");
    }
    check_input();
    const std::size_t root = convert(f_.root());
    NormalizeResult result;
    const Node& r = nodes_[root];
    if (r.kind == Node::Kind::kConstant) {
      result.constant = r.value;
    } else {
      FormulaBuilder b(Alphabet::boolean());
      emit(root, b);
      result.formula = std::move(b).build(f_.num_vars());
    }
    result.counts = counts_;
    return result;
  }

 private:
  using Kind = Node::Kind;

  void check_input() const {
    for (VertexId v = 0; v < f_.num_vertices(); ++v) {
      const Vertex& vx = f_.vertex(v);
      const std::string where = "vertex " + std::to_string(v) + ": ";
      if ((vx.kind == GateKind::kTable || vx.kind == GateKind::kMdnf) &&
          vx.arity() > k_) {
        throw NormalizeError(where + "gate arity " + std::to_string(vx.arity()) +
                             " exceeds k=" + std::to_string(k_));
      }
      if (form_ == NormalForm::kKBasic) {
        if (vx.kind == GateKind::kNegatedVariable || vx.kind == GateKind::kNot) {
          throw NormalizeError(where + "negation in a monotone formula");
        }
        if (vx.kind == GateKind::kTable && !is_monotone_table(vx)) {
          throw NormalizeError(where + "non-monotone gate");
        }
      }
    }
  }

  std::size_t add(Node n) {
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  std::size_t constant(bool value) {
    Node n;
    n.kind = Kind::kConstant;
    n.value = value;
    return add(std::move(n));
  }

  std::size_t literal(VarIndex var, bool negated) {
    Node n;
    n.kind = Kind::kLiteral;
    n.var = var;
    n.negated = negated;
    return add(std::move(n));
  }

  std::size_t convert(VertexId v) {
    const Vertex& vx = f_.vertex(v);
    switch (vx.kind) {
      case GateKind::kVariable:
        return literal(vx.var, false);
      case GateKind::kNegatedVariable:
        return literal(vx.var, true);
      case GateKind::kConstant:
        return constant(vx.constant != 0);
      default:
        break;
    }
    std::vector<std::size_t> children;
    children.reserve(vx.arity());
    for (VertexId c : vx.children) children.push_back(convert(c));
    if (vx.kind == GateKind::kAnd) return make_junction(Kind::kAnd, children);
    if (vx.kind == GateKind::kOr) return make_junction(Kind::kOr, children);
    return make_table(boolean_table(vx), children);
  }

  // And/Or: folds constants, merges same-kind children, collapses arity 1.
  std::size_t make_junction(Kind kind, const std::vector<std::size_t>& children) {
    const bool absorbing = kind == Kind::kOr;  // Or absorbs 1, And absorbs 0
    Node n;
    n.kind = kind;
    for (std::size_t c : children) {
      const Node& cn = nodes_[c];
      if (cn.kind == Kind::kConstant) {
        ++counts_.constants_folded;
        if (cn.value == absorbing) return constant(absorbing);
        continue;
      }
      if (cn.kind == kind) {
        ++counts_.merges;
        n.children.insert(n.children.end(), cn.children.begin(), cn.children.end());
      } else {
        n.children.push_back(c);
      }
    }
    if (n.children.empty()) return constant(!absorbing);
    if (n.children.size() == 1) return n.children[0];
    return add(std::move(n));
  }

  std::size_t make_table(std::vector<Symbol> table,
                         std::vector<std::size_t> children) {
    // Partially evaluate constant inputs.
    for (std::size_t i = 0; i < children.size();) {
      const Node& cn = nodes_[children[i]];
      if (cn.kind != Kind::kConstant) {
        ++i;
        continue;
      }
      ++counts_.constants_folded;
      table = restrict_table(table, children.size(), i, cn.value);
      children.erase(children.begin() + static_cast<std::ptrdiff_t>(i));
    }
    const std::size_t m = children.size();
    if (m == 0) return constant(table[0] != 0);

    auto forceful = find_forceful(table, m);
    if (forceful.empty()) {
      Node n;
      n.kind = Kind::kTable;
      n.table = std::move(table);
      n.children = std::move(children);
      return add(std::move(n));
    }

    // x_i = a forces b: the gate is (lit op residual) with the residual
    // being the gate restricted to x_i = 1 - a.
    ++counts_.forceful_splits;
    const ForcefulFinding ff = forceful.front();
    const std::size_t i = ff.child_position;
    const std::size_t child = children[i];
    auto residual_table = restrict_table(table, m, i, ff.a == 0);
    auto rest = children;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    const std::size_t residual = make_table(std::move(residual_table), std::move(rest));
    if (ff.b == 1) {
      const std::size_t lit = ff.a == 1 ? child : negate(child);
      return make_junction(Kind::kOr, {lit, residual});
    }
    const std::size_t lit = ff.a == 0 ? child : negate(child);
    return make_junction(Kind::kAnd, {lit, residual});
  }

  static std::vector<Symbol> restrict_table(const std::vector<Symbol>& table,
                                            std::size_t arity, std::size_t pos,
                                            bool value) {
    std::vector<Symbol> out(std::size_t{1} << (arity - 1));
    const std::size_t low = (std::size_t{1} << pos) - 1;
    for (std::size_t y = 0; y < out.size(); ++y) {
      const std::size_t x = (y & low) | ((y & ~low) << 1) |
                            (static_cast<std::size_t>(value) << pos);
      out[y] = table[x];
    }
    return out;
  }

  std::size_t negate(std::size_t id) {
    const Node n = nodes_[id];
    switch (n.kind) {
      case Kind::kConstant:
        return constant(!n.value);
      case Kind::kLiteral:
        return literal(n.var, !n.negated);
      case Kind::kTable: {
        ++counts_.negations_absorbed;
        Node t = n;
        for (Symbol& s : t.table) s = s == 0 ? 1 : 0;
        return add(std::move(t));
      }
      case Kind::kAnd:
      case Kind::kOr: {
        ++counts_.de_morgan;
        std::vector<std::size_t> flipped;
        flipped.reserve(n.children.size());
        for (std::size_t c : n.children) flipped.push_back(negate(c));
        return make_junction(n.kind == Kind::kAnd ? Kind::kOr : Kind::kAnd, flipped);
      }
    }
    return id;
  }

  VertexId emit(std::size_t id, FormulaBuilder& b) {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case Kind::kLiteral:
        return b.add(n.negated ? Vertex::negated_variable(n.var)
                               : Vertex::variable(n.var));
      case Kind::kConstant:
        return b.add(Vertex::constant_leaf(n.value ? 1 : 0));
      default:
        break;
    }
    std::vector<VertexId> kids;
    kids.reserve(n.children.size());
    for (std::size_t c : n.children) kids.push_back(emit(c, b));
    if (n.kind == Kind::kAnd) return b.add(Vertex::conjunction(std::move(kids)));
    if (n.kind == Kind::kOr) return b.add(Vertex::disjunction(std::move(kids)));
    if (form_ == NormalForm::kKBasic) {
      ++counts_.mdnf_gates;
      auto terms = compute_mdnf(n.table, kids.size());
      return b.add(Vertex::mdnf(std::move(terms), std::move(kids)));
    }
    return b.add(Vertex::truth_table(n.table, std::move(kids)));
  }

  const Formula& f_;
  std::size_t k_;
  NormalForm form_;
  std::vector<Node> nodes_;
  RewriteCounts counts_;
};

Formula require_formula(NormalizeResult r) {
  if (!r.formula) {
    throw NormalizeError(std::string("formula is constant ") +
                         (*r.constant ? "1" : "0"));
  }
  return std::move(*r.formula);
}

bool unforceable_gate_ok(const Vertex& vx, std::size_t k) {
  return vx.arity() >= 2 && vx.arity() <= k && find_forceful(vx).empty();
}

}  // namespace

NormalizeResult normalize(const Formula& f, std::size_t k, NormalForm form) {
  return Normalizer(f, k, form).run();
}

Formula to_kx_basic(const Formula& f, std::size_t k) {
  return require_formula(normalize(f, k, NormalForm::kKxBasic));
}

Formula to_k_basic(const Formula& f, std::size_t k) {
  return require_formula(normalize(f, k, NormalForm::kKBasic));
}

bool is_kx_basic(const Formula& f, std::size_t k) {
  if (!f.alphabet().is_boolean()) return false;
  for (const Vertex& vx : f.vertices()) {
    switch (vx.kind) {
      case GateKind::kVariable:
      case GateKind::kNegatedVariable:
        break;
      case GateKind::kConstant:
      case GateKind::kNot:
      case GateKind::kMultiValued:
        return false;
      case GateKind::kAnd:
      case GateKind::kOr:
        if (vx.arity() < 2) return false;
        for (VertexId c : vx.children) {
          if (f.vertex(c).kind == vx.kind) return false;
        }
        break;
      case GateKind::kTable:
      case GateKind::kMdnf:
        if (!unforceable_gate_ok(vx, k)) return false;
        break;
    }
  }
  return true;
}

bool is_k_basic(const Formula& f, std::size_t k) {
  if (!is_kx_basic(f, k)) return false;
  for (const Vertex& vx : f.vertices()) {
    if (vx.kind == GateKind::kNegatedVariable) return false;
    if (vx.kind == GateKind::kTable && !is_monotone_table(vx)) return false;
  }
  return true;
}

bool is_basic(const Formula& f) {
  for (const Vertex& vx : f.vertices()) {
    if (!vx.is_leaf() && vx.kind != GateKind::kAnd && vx.kind != GateKind::kOr) {
      return false;
    }
  }
  return is_k_basic(f, 2);
}

}  // namespace rof
