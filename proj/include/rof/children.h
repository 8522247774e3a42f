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

#ifndef ROF_CHILDREN_H_
#define ROF_CHILDREN_H_

#include <vector>

#include "rof/formula.h"
#include "rof/random.h"

namespace rof {

struct ChildClasses {
  std::size_t ell = 0;
  std::vector<VertexId> heavy;  // largest first
  std::vector<VertexId> light;  // largest first
};

// Splits the children of u by size. With S = size(u) and children sorted by
// decreasing size (ties: smaller id first), ell is the smallest position
// whose child has size < S * (4k/eps)^-ell; the ell-1 children before it
// are heavy. When no position qualifies every child is heavy and ell is
// max(k, arity) + 1. Throws FormulaError when u is a leaf.
ChildClasses classify_children(const Formula& f, VertexId u, double eps,
                               std::size_t k);

// Child of u drawn with probability size(child) / size(u).
VertexId weighted_child_sample(const Formula& f, VertexId u, Rng& rng);

}  // namespace rof

#endif  // ROF_CHILDREN_H_
