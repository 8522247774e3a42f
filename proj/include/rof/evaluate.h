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

#ifndef ROF_EVALUATE_H_
#define ROF_EVALUATE_H_

#include <span>
#include <vector>

#include "rof/formula.h"
#include "rof/oracle.h"

namespace rof {

// Output of a gate given its child values. Leaves are not gates.
Symbol gate_output(const Vertex& v, std::span<const Symbol> inputs,
                   const Alphabet& alphabet);

// Value of every vertex, bottom-up. Reads each variable exactly once.
std::vector<Symbol> evaluate_all(const Formula& f, const Assignment& a);

// Value at the root. Throws std::invalid_argument on an alphabet mismatch
// or an assignment shorter than the formula's variable count.
Symbol evaluate(const Formula& f, const Assignment& a);

// Root value in the alphabet's default accept set.
bool accepts(const Formula& f, const Assignment& a);

}  // namespace rof

#endif  // ROF_EVALUATE_H_
