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

#include "rof/harness.h"
#include "rof/normalize.h"
#include "test_util.h"

namespace rof {
namespace {

using testing::and_of;
using testing::bool_assignment;

TesterConfig practical() {
  TesterConfig c;
  c.genand_scale = 1;
  c.genand_power = 0;
  c.estimate_scale = 1;
  c.estimate_power = 0;
  c.short_circuit = true;
  return c;
}

BatchConfig alg1_batch(std::uint64_t trials) {
  BatchConfig cfg;
  cfg.task = Task::kAlg1;
  cfg.tester = practical();
  cfg.trials = trials;
  cfg.master_seed = 99;
  return cfg;
}

TEST(ParamsTest, RejectsBadInput) {
  EXPECT_THROW(parse_params(R"({"no_such_key": 1})"), std::invalid_argument);
  EXPECT_THROW(parse_params(R"({"genand_scale": -1})"), std::invalid_argument);
  EXPECT_THROW(parse_params(R"({"short_circuit": 1})"), std::invalid_argument);
  EXPECT_THROW(parse_params("[1]"), std::invalid_argument);
  EXPECT_THROW(parse_params("{"), std::invalid_argument);
}

TEST(ParamsTest, RoundTrip) {
  TesterConfig c = practical();
  c.median_scale = 7;
  c.query_budget = 1000;
  const TesterConfig back = parse_params(params_to_json(c));
  EXPECT_EQ(params_to_json(back), params_to_json(c));
  EXPECT_EQ(back.median_scale, 7);
  EXPECT_TRUE(back.short_circuit);
}

TEST(ParamsTest, OverridesOnlyGivenKeys) {
  const TesterConfig c = parse_params(R"({"genand_scale": 2})", practical());
  EXPECT_EQ(c.genand_scale, 2);
  EXPECT_EQ(c.estimate_scale, 1);
}

TEST(TaskTest, Names) {
  for (Task t : {Task::kAlg1, Task::kAlg2, Task::kAlg2Median, Task::kAlg3Once, Task::kAlg3}) {
    EXPECT_EQ(parse_task(task_name(t)), t);
  }
  EXPECT_THROW(parse_task("alg9"), std::invalid_argument);
}

TEST(BatchTest, SatisfyingInputIsAlwaysAccepted) {
  const BatchResult r = run_batch(alg1_batch(200), and_of(8),
                                  bool_assignment({1, 1, 1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(r.summary.accept_rate, 1.0);
  ASSERT_TRUE(r.summary.true_farness);
  EXPECT_EQ(r.summary.true_farness->cost, 0u);
}

TEST(BatchTest, FarInputIsUsuallyRejected) {
  const BatchResult r = run_batch(alg1_batch(400), and_of(8),
                                  bool_assignment({0, 0, 0, 1, 1, 1, 1, 1}));
  EXPECT_LE(r.summary.accept_rate, 0.45);
}

TEST(BatchTest, DeterministicAndThreadIndependent) {
  const Formula f = and_of(8);
  const Assignment a = bool_assignment({0, 1, 0, 1, 1, 1, 0, 1});
  BatchConfig cfg = alg1_batch(64);
  const std::string one = batch_to_json(cfg, run_batch(cfg, f, a));
  EXPECT_EQ(batch_to_json(cfg, run_batch(cfg, f, a)), one);
  cfg.threads = 4;
  EXPECT_EQ(batch_to_json(cfg, run_batch(cfg, f, a)), one);
  cfg.master_seed = 100;
  EXPECT_NE(batch_to_json(cfg, run_batch(cfg, f, a)), one);
}

TEST(BatchTest, SummaryMatchesTrials) {
  const BatchConfig cfg = alg1_batch(50);
  const BatchResult r = run_batch(cfg, and_of(8), bool_assignment({0, 0, 1, 1, 1, 1, 1, 1}));
  ASSERT_EQ(r.trials.size(), 50u);
  for (std::size_t i = 0; i < r.trials.size(); ++i) EXPECT_EQ(r.trials[i].index, i);
  const BatchSummary s = summarize(r.trials);
  EXPECT_EQ(s.trials, r.summary.trials);
  EXPECT_EQ(s.accept_rate, r.summary.accept_rate);
  EXPECT_EQ(s.mean_queries, r.summary.mean_queries);
  EXPECT_EQ(s.max_queries, r.summary.max_queries);
  EXPECT_EQ(s.max_depth, r.summary.max_depth);
}

TEST(BatchTest, CsvHasHeaderTrialsAndSummary) {
  const BatchConfig cfg = alg1_batch(10);
  const BatchResult r = run_batch(cfg, and_of(4), bool_assignment({1, 0, 1, 1}));
  const std::string csv = batch_to_csv(cfg, r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
  EXPECT_NE(csv.find("\nsummary,"), std::string::npos);
}

TEST(BatchTest, EstimatorReportsEta) {
  BatchConfig cfg = alg1_batch(5);
  cfg.task = Task::kAlg2;
  const Formula f = to_k_basic(and_of(4), 2);
  const BatchResult r = run_batch(cfg, f, bool_assignment({1, 1, 1, 1}));
  for (const auto& t : r.trials) {
    ASSERT_TRUE(t.eta);
    EXPECT_EQ(*t.eta, 0.0);
    EXPECT_FALSE(t.accept);
  }
}

TEST(ScalingTest, RowsPerSize) {
  BatchConfig cfg = alg1_batch(20);
  const std::vector<std::uint64_t> sizes = {16, 32, 64};
  const auto rows = query_scaling(cfg, sizes, "balanced-and-or");
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].size, sizes[i]);
    EXPECT_TRUE(rows[i].farness.at_least(0.25));
    EXPECT_LE(rows[i].mean_queries, static_cast<double>(rows[i].max_queries));
  }
  const std::string csv = scaling_to_csv(rows);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_THROW(query_scaling(cfg, sizes, "no-such-family"), std::invalid_argument);
}

}  // namespace
}  // namespace rof
