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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "rof/distance.h"
#include "rof/generators.h"
#include "rof/normalize.h"
#include "rof/testers.h"
#include "rof/text_format.h"
#include "test_util.h"

namespace rof {
namespace {

using testing::and_of;
using testing::bool_assignment;

// Small sample counts so randomized tests finish quickly.
TesterConfig small_config() {
  TesterConfig c;
  c.genand_scale = 1;
  c.genand_power = 0;
  c.estimate_scale = 1;
  c.estimate_power = 0;
  c.short_circuit = true;
  return c;
}

Assignment zeros(std::size_t n) {
  return Assignment(Alphabet::boolean(), std::vector<Symbol>(n, 0));
}

TEST(ParamsTest, DerivedValues) {
  const TesterConfig d;
  EXPECT_EQ(alg3_reps(0.25, d), 64u);
  EXPECT_EQ(median_reps(0.01, d), 222u);
  EXPECT_EQ(median_reps(0.01, d),
            static_cast<std::uint64_t>(std::ceil(48 * std::log(100.0))));
  EXPECT_EQ(mdepth(0.25), static_cast<std::uint64_t>(std::ceil(12 * std::log(6.0))));
  EXPECT_DOUBLE_EQ(slightly_big(0.25), 0.25 / 0.75);
  EXPECT_TRUE(std::isinf(slightly_big(1.0)));
  // 4k/eps = 32 at k = 2, eps = 1/4.
  const double r = std::pow(32.0, -2);
  EXPECT_DOUBLE_EQ(slightly_small(0.25, 2), 0.25 * (1 - r / 8));
  EXPECT_DOUBLE_EQ(recurse_eps(0.25, 2), 0.25 * (1 + r));
  EXPECT_EQ(genand_count(0.25, 1.0 / 3, 2, d),
            static_cast<std::uint64_t>(std::ceil(64 * 4 * std::pow(32.0, 4) * std::log(6.0))));
  EXPECT_EQ(estimate_count(0.25, 1.0 / 3, 2, d),
            static_cast<std::uint64_t>(
                std::ceil(1000 * 16 * std::pow(32.0, 4) * std::log(3.0))));
  EXPECT_DOUBLE_EQ(numrel(0.25, d), 16 * 3);
  EXPECT_EQ(orconst(0.25, d), static_cast<std::uint64_t>(std::ceil(24 * std::log(288.0))));
  EXPECT_DOUBLE_EQ(alg1_depth_bound(0.25, 2), 16 * 1024 * std::log(4.0));
  EXPECT_DOUBLE_EQ(alg2_depth_bound(0.25, 2), 2 * 1024 * std::log(4.0));
  // (1 - eps/8)^REPS stays below 1/3.
  EXPECT_LT(std::pow(1 - 0.25 / 8, alg3_reps(0.25, d)), 1.0 / 3);
}

TEST(ParamsTest, Validation) {
  TesterConfig c;
  c.twicelocaldist_factor = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.genand_scale = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.median_inner_delta = 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW((TestParams{0.25, 1.0 / 3, 1, 1}).validate(), std::invalid_argument);
  EXPECT_THROW((TestParams{0, 1.0 / 3, 2, 1}).validate(), std::invalid_argument);
  EXPECT_THROW((TestParams{0.25, 1.0, 2, 1}).validate(), std::invalid_argument);
  EXPECT_NO_THROW((TestParams{}).validate());
}

TEST(Alg1Test, LargeEpsAcceptsWithoutQueries) {
  Formula f = and_of(8);
  Assignment a = zeros(8);
  CountingOracle o(a);
  Rng rng(1);
  EXPECT_TRUE(alg1_test(f, {1.5, 1.0 / 3, 2, 1}, o, rng));
  EXPECT_EQ(o.query_count(), 0u);
}

TEST(Alg1Test, RejectsNonNormalInput) {
  Formula f = parse_formula("(and x0 (and x1 x2))");
  Assignment a = zeros(3);
  CountingOracle o(a);
  Rng rng(1);
  EXPECT_THROW(alg1_test(f, {}, o, rng), std::invalid_argument);
}

TEST(Alg1Test, SingleVariableUsesDerivedConstants) {
  Formula f = parse_formula("x0");
  Rng rng(1);
  Assignment one = bool_assignment({1});
  CountingOracle o1(one);
  EXPECT_TRUE(alg1_test(f, {}, o1, rng));
  Assignment zero = bool_assignment({0});
  CountingOracle o0(zero);
  EXPECT_FALSE(alg1_test(f, {}, o0, rng));
  EXPECT_EQ(o0.query_count(), 1u);
}

TEST(Alg1Test, AndOfEightAllZeroIsRejected) {
  Formula f = and_of(8);
  Assignment a = zeros(8);
  ASSERT_TRUE(farness(f, a, Symbol{1}).at_least(1, 4));
  int rejects = 0;
  for (int t = 0; t < 400; ++t) {
    CountingOracle o(a);
    Rng rng(derive_seed(5, t));
    if (!alg1_test(f, {0.25, 1.0 / 3, 2, 1}, o, rng, small_config())) ++rejects;
  }
  EXPECT_GE(rejects, 400 * 2 / 3);
}

TEST(Alg1Test, OneSidedOnSatisfyingInputs) {
  Rng gen(2);
  const TesterConfig cfg = small_config();
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = 2 + i % 2;
    Formula f = family_formula("random-kx-basic", 4 + uniform_below(gen, 60), k, gen);
    const Symbol b = i % 2;
    auto a = make_satisfying_assignment(f, b, gen);
    if (!a) continue;
    for (int s = 0; s < 50; ++s) {
      CountingOracle o(*a);
      Rng rng(derive_seed(i, s));
      ASSERT_TRUE(alg1_test(f, {0.25, 1.0 / 3, k, b}, o, rng, cfg)) << serialize(f);
    }
  }
}

TEST(Alg1Test, LiteralAndShortCircuitAgreeOnSatisfyingInputs) {
  TesterConfig literal = small_config();
  literal.short_circuit = false;
  Rng gen(3);
  for (int i = 0; i < 30; ++i) {
    Formula f = family_formula("random-kx-basic", 8 + uniform_below(gen, 30), 2, gen);
    auto a = make_satisfying_assignment(f, 1, gen);
    CountingOracle o(*a);
    Rng rng(i);
    ASSERT_TRUE(alg1_test(f, {}, o, rng, literal));
  }
}

TEST(Alg1Test, QueryBudgetIsEnforced) {
  TesterConfig cfg = small_config();
  cfg.short_circuit = false;
  cfg.query_budget = 3;
  Formula f = and_of(8);
  Assignment a(Alphabet::boolean(), std::vector<Symbol>(8, 1));
  CountingOracle o(a);
  Rng rng(1);
  EXPECT_THROW(alg1_test(f, {}, o, rng, cfg), QueryBudgetExceeded);
}

TEST(Alg1Test, DepthStaysWithinBound) {
  Rng gen(4);
  for (int i = 0; i < 40; ++i) {
    Formula f = family_formula("random-kx-basic", 16 + uniform_below(gen, 200), 3, gen);
    Assignment a = random_assignment(gen, f.alphabet(), f.num_vars(), 0.3);
    CountingOracle o(a);
    Rng rng(i);
    RunStats stats;
    alg1_test(f, {0.25, 1.0 / 3, 3, 1}, o, rng, small_config(), &stats);
    ASSERT_LE(stats.max_depth, alg1_depth_bound(0.25, 3));
    ASSERT_GE(stats.calls, 1u);
  }
}

TEST(Alg1Test, QueriesDoNotGrowWithSize) {
  TesterConfig cfg = small_config();
  cfg.short_circuit = false;
  std::uint64_t max_small = 0, max_large = 0;
  for (std::uint64_t size : {256u, 8192u}) {
    Formula f = balanced_and_or(size);
    Rng gen(size);
    auto a = make_far_assignment(f, 0.25, 1, gen);
    ASSERT_TRUE(a);
    for (int t = 0; t < 100; ++t) {
      CountingOracle o(*a);
      Rng rng(t);
      alg1_test(f, {}, o, rng, cfg);
      (size == 256 ? max_small : max_large) =
          std::max(size == 256 ? max_small : max_large, o.query_count());
    }
  }
  EXPECT_LE(max_large, max_small);
}

TEST(Alg2Test, SingleVariable) {
  Formula f = parse_formula("x0");
  Assignment a = bool_assignment({0});
  CountingOracle o(a);
  Rng rng(1);
  EXPECT_EQ(alg2_estimate(f, {}, o, rng).eta, 1.0);
  Assignment b = bool_assignment({1});
  CountingOracle ob(b);
  EXPECT_EQ(alg2_estimate(f, {}, ob, rng).eta, 0.0);
}

TEST(Alg2Test, RejectsTablesAndNegations) {
  Rng rng(1);
  Assignment a = zeros(3);
  CountingOracle o(a);
  EXPECT_THROW(alg2_estimate(parse_formula("(and x0 (tbl2 0111 x1 x2))"), {}, o, rng),
               std::invalid_argument);
  EXPECT_THROW(alg2_estimate(parse_formula("(and (not x0) x1)"), {}, o, rng),
               std::invalid_argument);
}

Formula monotone_instance(Rng& rng, std::size_t size, std::size_t k) {
  RandomFormulaOptions opt;
  opt.num_vars = size;
  opt.mix = GateMix::kMonotone;
  opt.max_arity = k;
  opt.and_rate = 0.8;
  opt.relevant_tables = true;
  return to_k_basic(random_block_formula(rng, opt, 2, 6), k);
}

TEST(Alg2Test, SatisfyingInputsGiveZeroAndRangeHolds) {
  Rng gen(6);
  const TesterConfig cfg = small_config();
  for (int i = 0; i < 60; ++i) {
    const std::size_t k = 2 + i % 2;
    Formula f = monotone_instance(gen, 4 + uniform_below(gen, 100), k);
    auto sat = make_satisfying_assignment(f, 1, gen);
    Assignment any = random_assignment(gen, f.alphabet(), f.num_vars(), 0.4);
    for (int s = 0; s < 20; ++s) {
      Rng rng(derive_seed(i, s));
      CountingOracle o(*sat);
      ASSERT_EQ(alg2_estimate(f, {0.25, 1.0 / 3, k, 1}, o, rng, cfg).eta, 0.0);
      CountingOracle o2(any);
      RunStats stats;
      const double eta = alg2_estimate(f, {0.25, 1.0 / 3, k, 1}, o2, rng, cfg, &stats).eta;
      ASSERT_GE(eta, 0.0);
      ASSERT_LE(eta, 1.0);
      ASSERT_LE(stats.max_depth, alg2_depth_bound(0.25, k));
    }
  }
}

TEST(Alg2Test, AndOfEightWithThreeZeros) {
  Formula f = and_of(8);
  Assignment a = bool_assignment({1, 0, 1, 1, 0, 1, 1, 0});
  ASSERT_EQ(farness(f, a, Symbol{1}).to_string(), "3/8");
  int good = 0;
  for (int t = 0; t < 400; ++t) {
    CountingOracle o(a);
    Rng rng(derive_seed(7, t));
    const double eta = alg2_estimate(f, {0.25, 1.0 / 3, 2, 1}, o, rng, small_config()).eta;
    if (std::abs(eta - 0.375) <= 0.25) ++good;
  }
  EXPECT_GE(good, 400 * 2 / 3);
}

TEST(Alg2Test, MedianOfEstimates) {
  Formula f = and_of(8);
  Assignment sat(Alphabet::boolean(), std::vector<Symbol>(8, 1));
  CountingOracle os(sat);
  Rng rng(8);
  EXPECT_EQ(alg2_median(f, {0.25, 0.1, 2, 1}, os, rng, small_config()).eta, 0.0);

  Assignment a = bool_assignment({1, 0, 1, 1, 0, 1, 1, 0});
  int failures = 0;
  for (int t = 0; t < 400; ++t) {
    CountingOracle o(a);
    Rng r(derive_seed(8, t));
    const EstimateResult e = alg2_median(f, {0.25, 0.1, 2, 1}, o, r, small_config());
    if (std::abs(e.eta - 0.375) > 0.25) ++failures;
    ASSERT_EQ(e.queries, o.query_count());
  }
  EXPECT_LE(failures, 40);
}

TEST(Alg3Test, LargeEpsAcceptsWithoutQueries) {
  Formula f = and_of(8);
  Assignment a = zeros(8);
  CountingOracle o(a);
  Rng rng(1);
  EXPECT_TRUE(alg3_once(f, 1.25, o, rng));
  EXPECT_EQ(o.query_count(), 0u);
}

TEST(Alg3Test, RejectsNonBasicInput) {
  Assignment a = zeros(3);
  CountingOracle o(a);
  Rng rng(1);
  EXPECT_THROW(alg3_once(parse_formula("(and x0 (not x1) x2)"), 0.25, o, rng),
               std::invalid_argument);
  EXPECT_THROW(alg3_test(parse_formula("(and x0 (mdnf2 0/1 x1 x2))"), 0.25, o, rng),
               std::invalid_argument);
}

TEST(Alg3Test, SingleShotRejectionFrequency) {
  Formula f = and_of(8);
  Assignment a = zeros(8);
  std::uint64_t rejects = 0;
  for (int t = 0; t < 10000; ++t) {
    CountingOracle o(a);
    Rng rng(derive_seed(9, t));
    if (!alg3_once(f, 0.25, o, rng)) ++rejects;
  }
  // Under Bin(10^4, 1/32), P(X <= 272) < 0.01.
  EXPECT_GE(rejects, 273u);
}

TEST(Alg3Test, OneSidedAndAmplified) {
  Rng gen(10);
  for (int i = 0; i < 100; ++i) {
    Formula f = family_formula("random-basic", 4 + uniform_below(gen, 100), 2, gen);
    auto a = make_satisfying_assignment(f, 1, gen);
    for (int s = 0; s < 50; ++s) {
      CountingOracle o(*a);
      Rng rng(derive_seed(i, s));
      ASSERT_TRUE(alg3_test(f, 0.25, o, rng)) << serialize(f);
    }
  }
  Formula f = and_of(8);
  Assignment z = zeros(8);
  int rejects = 0;
  for (int t = 0; t < 400; ++t) {
    CountingOracle o(z);
    Rng rng(derive_seed(11, t));
    if (!alg3_test(f, 0.25, o, rng)) ++rejects;
  }
  EXPECT_GE(rejects, 220);
}

}  // namespace
}  // namespace rof
