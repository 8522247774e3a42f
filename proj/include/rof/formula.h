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

#ifndef ROF_FORMULA_H_
#define ROF_FORMULA_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rof/alphabet.h"

namespace rof {

using VertexId = std::uint32_t;
using VarIndex = std::uint32_t;
// Bit i set means child position i belongs to the term.
using TermMask = std::uint32_t;

inline constexpr VertexId kNoVertex = ~VertexId{0};

// Arity limit for truth-table and mDNF gates. Tables have |Σ|^arity rows.
inline constexpr std::size_t kMaxTableArity = 16;

class FormulaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GateKind : std::uint8_t {
  kVariable,
  kNegatedVariable,
  kConstant,  // only before normalization
  kNot,       // negation above a non-leaf; only before normalization
  kAnd,
  kOr,
  kTable,
  kMdnf,
  kMultiValued,
};

// Built-in multi-valued gates.
enum class NamedGate : std::uint8_t { kBalancing4, kBalancing5 };

const char* gate_kind_name(GateKind kind);
const char* named_gate_name(NamedGate gate);
const Alphabet& named_gate_alphabet(NamedGate gate);

// Output table of a built-in gate, indexed like any table gate.
const std::vector<Symbol>& named_gate_table(NamedGate gate);

// Row of a table gate for the given inputs: sum_i inputs[i] * base^i, so
// child 0 is the least significant digit.
std::size_t table_index(std::span<const Symbol> inputs, std::size_t base);

struct Vertex {
  GateKind kind = GateKind::kVariable;
  VarIndex var = 0;      // kVariable, kNegatedVariable
  Symbol constant = 0;   // kConstant
  NamedGate named = NamedGate::kBalancing4;  // kMultiValued
  std::vector<VertexId> children;
  std::vector<Symbol> table;   // kTable, kMultiValued
  std::vector<TermMask> terms; // kMdnf

  static Vertex variable(VarIndex var);
  static Vertex negated_variable(VarIndex var);
  static Vertex constant_leaf(Symbol value);
  static Vertex negation(VertexId child);
  static Vertex conjunction(std::vector<VertexId> children);
  static Vertex disjunction(std::vector<VertexId> children);
  static Vertex truth_table(std::vector<Symbol> table,
                            std::vector<VertexId> children);
  static Vertex mdnf(std::vector<TermMask> terms,
                     std::vector<VertexId> children);
  static Vertex multi_valued(NamedGate gate, std::vector<VertexId> children);

  bool is_leaf() const {
    return kind == GateKind::kVariable ||
           kind == GateKind::kNegatedVariable ||
           kind == GateKind::kConstant;
  }
  bool is_variable_leaf() const {
    return kind == GateKind::kVariable || kind == GateKind::kNegatedVariable;
  }
  std::size_t arity() const { return children.size(); }

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

// Per-vertex statistics computed in one depth-first pass.
struct SubtreeStats {
  std::vector<std::uint64_t> size;       // variable leaves below (inclusive)
  std::vector<std::uint32_t> depth;      // distance from the root
  std::vector<VertexId> parent;          // kNoVertex for the root
  std::vector<VertexId> heaviest_child;  // the vertex itself for leaves
  std::uint32_t formula_depth = 0;

  // Variable leaves in depth-first order; the leaves below v are
  // leaf_order[leaf_begin[v] .. leaf_begin[v] + size[v]).
  std::vector<VertexId> leaf_order;
  std::vector<std::uint64_t> leaf_begin;

  // Running sums of child sizes, flattened: the sums for v start at
  // child_sum_offset[v] and have arity(v) entries.
  std::vector<std::uint64_t> child_sums;
  std::vector<std::size_t> child_sum_offset;
};

// An immutable read-once formula stored as an arena of vertices.
//
// Children always have smaller ids than their parent and the root is the
// last vertex, so ascending id order is a valid bottom-up evaluation order.
// The constructor validates the tree shape, the read-once property, gate
// arities and table lengths, then annotates subtree statistics.
class Formula {
 public:
  Formula(const Alphabet& alphabet, std::vector<Vertex> vertices,
          std::size_t num_vars = 0);

  const Alphabet& alphabet() const { return *alphabet_; }
  VertexId root() const { return static_cast<VertexId>(vertices_.size() - 1); }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_vars() const { return num_vars_; }
  const Vertex& vertex(VertexId v) const { return vertices_[v]; }
  std::span<const Vertex> vertices() const { return vertices_; }

  const SubtreeStats& stats() const { return stats_; }
  std::uint64_t size(VertexId v) const { return stats_.size[v]; }
  std::uint64_t size() const { return stats_.size[root()]; }
  std::uint32_t depth(VertexId v) const { return stats_.depth[v]; }
  VertexId parent(VertexId v) const { return stats_.parent[v]; }
  VertexId heaviest_child(VertexId v) const { return stats_.heaviest_child[v]; }
  std::span<const VertexId> leaves(VertexId v) const;
  std::span<const std::uint64_t> child_sums(VertexId v) const;

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.alphabet_ == b.alphabet_ && a.num_vars_ == b.num_vars_ &&
           a.vertices_ == b.vertices_;
  }

 private:
  void validate() const;

  const Alphabet* alphabet_;
  std::vector<Vertex> vertices_;
  std::size_t num_vars_;
  SubtreeStats stats_;
};

// Computes subtree statistics. Runs in time linear in the vertex count.
SubtreeStats annotate_stats(const Formula& f);

// Appends vertices bottom-up; build() makes the last vertex the root.
class FormulaBuilder {
 public:
  explicit FormulaBuilder(const Alphabet& alphabet = Alphabet::boolean())
      : alphabet_(&alphabet) {}

  VertexId add(Vertex v) {
    vertices_.push_back(std::move(v));
    return static_cast<VertexId>(vertices_.size() - 1);
  }
  std::size_t num_vertices() const { return vertices_.size(); }
  Formula build(std::size_t num_vars = 0) &&;

 private:
  const Alphabet* alphabet_;
  std::vector<Vertex> vertices_;
};

// Number of vertices of each gate kind, indexed by GateKind.
std::vector<std::size_t> gate_counts(const Formula& f);

}  // namespace rof

#endif  // ROF_FORMULA_H_
