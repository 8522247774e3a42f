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

#ifndef ROF_TESTERS_H_
#define ROF_TESTERS_H_

#include <cstdint>
#include <stdexcept>

#include "rof/formula.h"
#include "rof/oracle.h"
#include "rof/random.h"

namespace rof {

// Tunable constants of the three algorithms. Defaults are the derived
// values; every count is rounded up. With p = power and s = scale:
//   GENAND       = s * eps^-1 * (4k/eps)^(p*k) * ln(2/delta)
//   estimator l  = s * eps^-2 * (4k/eps)^(p*k) * ln(1/delta)
//   median runs  = s * ln(1/delta), each at confidence median_inner_delta
//   NUMREL       = s * eps^-2 * log2(2/eps); cutoff |R| > numrel_cutoff*NUMREL
//   ORCONST      = s * eps^-1 * ln(6 * NUMREL)
//   REPS         = s / eps
struct TesterConfig {
  double genand_scale = 64;
  double genand_power = 2;
  double estimate_scale = 1000;
  double estimate_power = 2;
  double median_scale = 48;
  double median_inner_delta = 1.0 / 3.0;
  double localdist_factor = 2.0 / 3.0;
  double twicelocaldist_factor = 4.0 / 3.0;
  double numrel_scale = 1;
  double numrel_cutoff = 3;
  double orconst_scale = 6;
  double reps_scale = 16;
  // Stop loops once their result is decided. The output distribution is
  // unchanged; query counts drop and random streams differ.
  bool short_circuit = false;
  // Abort with QueryBudgetExceeded after this many queries; 0 = unlimited.
  std::uint64_t query_budget = 0;

  // Throws std::invalid_argument when a constant is out of its domain.
  void validate() const;
};

class QueryBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TestParams {
  double eps = 0.25;
  double delta = 1.0 / 3.0;
  std::size_t k = 2;
  Symbol b = 1;

  void validate() const;
};

struct EstimateResult {
  double eta = 0;
  std::uint64_t queries = 0;
};

// Instrumentation filled in by a run.
struct RunStats {
  std::uint32_t max_depth = 0;  // root call is depth 0
  std::uint64_t calls = 0;
};

// Derived parameters.
double slightly_small(double eps, std::size_t k);  // eps(1 - (4k/eps)^-k / 8)
double slightly_big(double eps);                   // eps / (1 - eps)
double recurse_eps(double eps, std::size_t k);     // eps(1 + (4k/eps)^-k)
std::uint64_t genand_count(double eps, double delta, std::size_t k,
                           const TesterConfig& cfg);
std::uint64_t estimate_count(double eps, double delta, std::size_t k,
                             const TesterConfig& cfg);
std::uint64_t median_reps(double delta, const TesterConfig& cfg);
double numrel(double eps, const TesterConfig& cfg);
std::uint64_t orconst(double eps, const TesterConfig& cfg);
std::uint64_t alg3_reps(double eps, const TesterConfig& cfg);
std::uint64_t mdepth(double eps);                       // ceil(3/eps * ln(3/(2eps)))
double alg1_depth_bound(double eps, std::size_t k);     // 16 (4k/eps)^k ln(1/eps)
double alg2_depth_bound(double eps, std::size_t k);     // 2 (4k/eps)^k ln(1/eps)

// One-sided test for "f evaluates to p.b". f must be k-x-basic.
bool alg1_test(const Formula& f, const TestParams& p, CountingOracle& oracle,
               Rng& rng, const TesterConfig& cfg = {}, RunStats* stats = nullptr);

// Distance estimate to f = 1. f must be k-basic with mdnf gates.
EstimateResult alg2_estimate(const Formula& f, const TestParams& p,
                             CountingOracle& oracle, Rng& rng,
                             const TesterConfig& cfg = {},
                             RunStats* stats = nullptr);

// Lower median of median_reps(p.delta) estimates at median_inner_delta.
EstimateResult alg2_median(const Formula& f, const TestParams& p,
                           CountingOracle& oracle, Rng& rng,
                           const TesterConfig& cfg = {},
                           RunStats* stats = nullptr);

// Single path-sampling round for "f evaluates to 1". f must be basic.
bool alg3_once(const Formula& f, double eps, CountingOracle& oracle, Rng& rng,
               const TesterConfig& cfg = {}, RunStats* stats = nullptr);

// alg3_once repeated alg3_reps(eps) times; rejects if any round rejects.
bool alg3_test(const Formula& f, double eps, CountingOracle& oracle, Rng& rng,
               const TesterConfig& cfg = {}, RunStats* stats = nullptr);

}  // namespace rof

#endif  // ROF_TESTERS_H_
