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

#ifndef ROF_LOWERBOUND_H_
#define ROF_LOWERBOUND_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rof/distance.h"
#include "rof/formula.h"
#include "rof/oracle.h"
#include "rof/random.h"

namespace rof {

enum class Variant : std::uint8_t { kFourValued, kFiveValuedMonotone };
enum class Dist : std::uint8_t { kYes, kNo };

const char* variant_name(Variant v);
const char* dist_name(Dist d);
NamedGate variant_gate(Variant v);
const Alphabet& variant_alphabet(Variant v);
// {0,1,P} for four-valued, {0,F0,P} for five-valued.
SymbolSet variant_accept(Variant v);

// Throws std::invalid_argument for symbols outside the variant's alphabet.
Symbol balancing_gate(Variant v, Symbol a, Symbol b);

// Full binary tree of height h (2 <= h <= kMaxHeight) over x_0..x_{2^h-1}
// in leaf order, every gate the variant's gate.
inline constexpr unsigned kMaxHeight = 24;
Formula build_balancing_formula(Variant v, unsigned h);

// True iff every aligned block of length 2^j (0 < j <= h) holds 0, 2^j or
// 2^(j-1) ones. bits.size() must equal 2^h.
bool interval_property_check(std::span<const std::uint8_t> bits, unsigned h);

// Bits over {0,1} as an assignment in the variant's alphabet.
Assignment to_assignment(Variant v, std::span<const std::uint8_t> bits);

struct LowerBoundSample {
  unsigned k = 0;  // hidden level, 2 <= k <= h
  // Yes: per level-k block, 0 -> (0,1) halves, 1 -> (1,0).
  // No: per block, pattern p in 0..3 puts a single 1 in quarter p,
  //     p in 4..7 puts a single 0 in quarter p-4.
  std::vector<std::uint8_t> blocks;
  std::vector<std::uint8_t> bits;  // length 2^h
};

// Rebuilds the bits from (k, blocks).
std::vector<std::uint8_t> expand_blocks(Dist d, unsigned h, unsigned k,
                                        std::span<const std::uint8_t> blocks);

LowerBoundSample sample_distribution(Dist d, unsigned h, Rng& rng);
// Same law as sample_distribution, written into an existing buffer.
void sample_bits(Dist d, unsigned h, Rng& rng, std::vector<std::uint8_t>& bits);

// Levels (leaves are level 0) of lowest common ancestors of pairs in q,
// ascending. Throws std::out_of_range for indices >= 2^h.
std::vector<unsigned> lca_level_set(std::span<const std::uint64_t> q, unsigned h);

// Outcome of querying q: bit i of the code is the value at q[i].
std::uint32_t outcome_code(std::span<const std::uint8_t> bits,
                           std::span<const std::uint64_t> q);

// Exact distribution of outcome codes given the hidden level k.
inline constexpr std::size_t kMaxExactQueries = 6;
std::vector<double> conditional_outcomes(Dist d, std::span<const std::uint64_t> q,
                                         unsigned h, unsigned k);

struct ExactConditionalReport {
  std::vector<unsigned> levels;      // the LCA level set H
  std::vector<unsigned> admissible;  // k with k and k-1 outside H
  std::vector<unsigned> mismatched;  // admissible k whose distributions differ
  bool passed() const { return mismatched.empty(); }
};

ExactConditionalReport exact_conditional(std::span<const std::uint64_t> q, unsigned h);

// Exact total variation between the unconditional outcome laws.
double exact_tv(std::span<const std::uint64_t> q, unsigned h);

struct TvReport {
  double tv = 0;
  double stderr_boot = 0;  // bootstrap standard error
  double exact = 0;
  std::uint64_t samples = 0;
};

TvReport empirical_tv(std::span<const std::uint64_t> q, unsigned h,
                      std::uint64_t samples, std::uint64_t seed,
                      unsigned bootstrap_rounds = 200);

struct FarnessReport {
  std::uint64_t size = 0;
  std::uint64_t threshold = 0;  // cost a far sample must reach (0 for Yes)
  std::uint64_t min_cost = 0;
  std::uint64_t max_cost = 0;
  double mean_cost = 0;
  double fraction_meeting = 0;  // far enough for No, accepted for Yes
  std::vector<std::uint64_t> costs;
  std::vector<unsigned> levels;  // hidden k per trial
};

// Exact distance from each sample to the accept set. Thresholds: 2^h/4 for
// four-valued, ceil(2^h/12) for five-valued; Yes samples must be accepted.
FarnessReport farness_experiment(Variant v, Dist d, unsigned h,
                                 std::uint64_t trials, std::uint64_t seed);

}  // namespace rof

#endif  // ROF_LOWERBOUND_H_
