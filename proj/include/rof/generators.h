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

#ifndef ROF_GENERATORS_H_
#define ROF_GENERATORS_H_

#include <optional>
#include <string>
#include <vector>

#include "rof/formula.h"
#include "rof/lowerbound.h"
#include "rof/oracle.h"
#include "rof/random.h"

namespace rof {

enum class GateMix {
  kMixed,     // and/or/not/tables of any kind
  kMonotone,  // and/or/monotone tables
  kAndOr,     // and/or only
};

struct RandomFormulaOptions {
  std::size_t num_vars = 8;
  std::size_t max_arity = 4;  // for every gate
  GateMix mix = GateMix::kMixed;
  double negation_rate = 0.15;  // negated leaves and not gates (kMixed)
  double table_rate = 0.4;      // tables versus and/or
  double and_rate = 0.5;        // and versus or
  double constant_rate = 0.0;   // extra constant inputs
  bool relevant_tables = false;  // redraw tables that ignore an input
};

// Random read-once formula over x_0..x_{num_vars-1}, each used once.
Formula random_formula(Rng& rng, const RandomFormulaOptions& opt);

// And of random formulas over consecutive blocks of min_block..max_block
// shuffled variables. The last block absorbs a short tail.
Formula random_block_formula(Rng& rng, const RandomFormulaOptions& opt,
                             std::size_t min_block, std::size_t max_block);
// Random binary tree of the variant's gate over num_vars variables.
Formula random_balancing_tree(Rng& rng, Variant v, std::size_t num_vars);

// Uniform table of the given arity; monotone when requested.
std::vector<Symbol> random_table(Rng& rng, std::size_t arity, bool monotone);

Assignment random_assignment(Rng& rng, const Alphabet& alphabet,
                             std::size_t num_vars, double p_one = 0.5);

// and(width) of or(2) of and(4) leaves; size must be a multiple of 8.
Formula balanced_and_or(std::size_t size);

// Family instance of the given size:
//   balanced-and-or   as above
//   random-basic      random and/or formula, same-kind gates merged
//   random-kx-basic   random_block_formula (mixed gates, blocks of 2..6)
//                     normalized with k
Formula family_formula(const std::string& family, std::size_t size,
                       std::size_t k, Rng& rng);

// An assignment at least eps-far from f = b, found by perturbing a
// satisfying assignment (flips, or bits forced to 0 or 1) at increasing
// rates, then hill climbing from the farthest candidate; nullopt when both
// phases fail.
std::optional<Assignment> make_far_assignment(const Formula& f, double eps,
                                              Symbol b, Rng& rng,
                                              std::size_t max_tries = 300);

// A uniformly perturbed assignment that evaluates to b, or nullopt.
std::optional<Assignment> make_satisfying_assignment(const Formula& f, Symbol b,
                                                     Rng& rng);

}  // namespace rof

#endif  // ROF_GENERATORS_H_
