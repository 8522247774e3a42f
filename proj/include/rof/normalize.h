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

#ifndef ROF_NORMALIZE_H_
#define ROF_NORMALIZE_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rof/formula.h"

namespace rof {

class NormalizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Setting child `child_position` to `a` forces the gate output to `b`.
struct ForcefulFinding {
  std::size_t child_position = 0;
  Symbol a = 0;
  Symbol b = 0;
  friend bool operator==(const ForcefulFinding&, const ForcefulFinding&) = default;
};

// Boolean truth table of a gate over {0,1}^arity, bit i of the row index is
// child i. Accepts not/and/or/table/mdnf gates of arity <= kMaxTableArity.
std::vector<Symbol> boolean_table(const Vertex& gate);

// All forceful triples, ordered by position then a.
std::vector<ForcefulFinding> find_forceful(std::span<const Symbol> table,
                                           std::size_t arity);
std::vector<ForcefulFinding> find_forceful(const Vertex& gate);

bool is_monotone_table(std::span<const Symbol> table, std::size_t arity);
bool is_monotone_table(const Vertex& gate);

// Minimal 1-inputs of a monotone table as child-position masks, ascending.
// Throws NormalizeError when the table is not monotone.
std::vector<TermMask> compute_mdnf(std::span<const Symbol> table,
                                   std::size_t arity);
std::vector<TermMask> compute_mdnf(const Vertex& gate);

struct RewriteCounts {
  std::size_t forceful_splits = 0;
  std::size_t merges = 0;
  std::size_t de_morgan = 0;
  std::size_t negations_absorbed = 0;
  std::size_t constants_folded = 0;
  std::size_t mdnf_gates = 0;
};

struct NormalizeResult {
  // Exactly one of these is set.
  std::optional<Formula> formula;
  std::optional<bool> constant;
  RewriteCounts counts;
};

enum class NormalForm { kKxBasic, kKBasic };

// Rewrites a Boolean read-once formula into an equivalent k-x-basic one
// (or k-basic, with unforceable gates as mdnf gates). Table, mdnf and not
// gates must have arity <= k; and/or gates are unrestricted. Variable
// indices and num_vars are kept. Children keep their left-to-right order.
// Throws NormalizeError on multi-valued input, arity violations, or (for
// kKBasic) negations and non-monotone gates.
NormalizeResult normalize(const Formula& f, std::size_t k, NormalForm form);

// As normalize, but a formula that is constant throws NormalizeError.
Formula to_kx_basic(const Formula& f, std::size_t k);
Formula to_k_basic(const Formula& f, std::size_t k);

bool is_kx_basic(const Formula& f, std::size_t k);
// k-x-basic, negation-free, and every table/mdnf gate monotone.
bool is_k_basic(const Formula& f, std::size_t k);
// k-basic with and/or gates only.
bool is_basic(const Formula& f);

}  // namespace rof

#endif  // ROF_NORMALIZE_H_
