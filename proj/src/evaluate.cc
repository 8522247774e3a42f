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

#include "rof/evaluate.h"

#include <stdexcept>

namespace rof {

Symbol gate_output(const Vertex& v, std::span<const Symbol> inputs,
                   const Alphabet& alphabet) {
  switch (v.kind) {
    case GateKind::kNot:
      return inputs[0] == 0 ? 1 : 0;
    case GateKind::kAnd:
      for (Symbol s : inputs) {
        if (s == 0) return 0;
      }
      return 1;
    case GateKind::kOr:
      for (Symbol s : inputs) {
        if (s != 0) return 1;
      }
      return 0;
    case GateKind::kTable:
    case GateKind::kMultiValued:
      return v.table[table_index(inputs, alphabet.size())];
    case GateKind::kMdnf: {
      TermMask ones = 0;
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs[i] != 0) ones |= TermMask{1} << i;
      }
      for (TermMask t : v.terms) {
        if ((t & ones) == t) return 1;
      }
      return 0;
    }
    default:
      throw std::logic_error("gate_output called on a leaf");
  }
}

std::vector<Symbol> evaluate_all(const Formula& f, const Assignment& a) {
  if (a.alphabet() != f.alphabet()) {
    throw std::invalid_argument("assignment alphabet does not match formula");
  }
  if (a.size() < f.num_vars()) {
    throw std::invalid_argument("assignment has " + std::to_string(a.size()) +
                                " values, formula needs " +
                                std::to_string(f.num_vars()));
  }
  std::vector<Symbol> value(f.num_vertices());
  std::vector<Symbol> inputs;
  for (VertexId v = 0; v < f.num_vertices(); ++v) {
    const Vertex& vx = f.vertex(v);
    switch (vx.kind) {
      case GateKind::kVariable:
        value[v] = a[vx.var];
        break;
      case GateKind::kNegatedVariable:
        value[v] = a[vx.var] == 0 ? 1 : 0;
        break;
      case GateKind::kConstant:
        value[v] = vx.constant;
        break;
      default:
        inputs.clear();
        for (VertexId c : vx.children) inputs.push_back(value[c]);
        value[v] = gate_output(vx, inputs, f.alphabet());
    }
  }
  return value;
}

Symbol evaluate(const Formula& f, const Assignment& a) {
  return evaluate_all(f, a)[f.root()];
}

bool accepts(const Formula& f, const Assignment& a) {
  return f.alphabet().default_accept().contains(evaluate(f, a));
}

}  // namespace rof
