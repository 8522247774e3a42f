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

#include "rof/children.h"

#include <algorithm>

namespace rof {

ChildClasses classify_children(const Formula& f, VertexId u, double eps,
                               std::size_t k) {
  const Vertex& vx = f.vertex(u);
  if (vx.is_leaf()) throw FormulaError("classify_children on a leaf");
  std::vector<VertexId> order = vx.children;
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (f.size(a) != f.size(b)) return f.size(a) > f.size(b);
    return a < b;
  });

  const double ratio = 4.0 * static_cast<double>(k) / eps;
  const double total = static_cast<double>(f.size(u));
  ChildClasses out;
  out.ell = std::max(k, order.size()) + 1;
  double scale = 1.0;
  for (std::size_t pos = 1; pos <= order.size(); ++pos) {
    scale *= ratio;
    if (static_cast<double>(f.size(order[pos - 1])) * scale < total) {
      out.ell = pos;
      break;
    }
  }
  const std::size_t heavy = std::min(out.ell - 1, order.size());
  out.heavy.assign(order.begin(), order.begin() + heavy);
  out.light.assign(order.begin() + heavy, order.end());
  return out;
}

VertexId weighted_child_sample(const Formula& f, VertexId u, Rng& rng) {
  const Vertex& vx = f.vertex(u);
  if (vx.is_leaf()) throw FormulaError("weighted_child_sample on a leaf");
  if (f.size(u) == 0) throw FormulaError("weighted_child_sample on an empty subtree");
  auto sums = f.child_sums(u);
  const std::uint64_t r = uniform_below(rng, f.size(u));
  auto it = std::upper_bound(sums.begin(), sums.end(), r);
  return vx.children[static_cast<std::size_t>(it - sums.begin())];
}

}  // namespace rof
