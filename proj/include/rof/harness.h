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

#ifndef ROF_HARNESS_H_
#define ROF_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rof/distance.h"
#include "rof/formula.h"
#include "rof/oracle.h"
#include "rof/testers.h"

namespace rof {

enum class Task { kAlg1, kAlg2, kAlg2Median, kAlg3Once, kAlg3 };

const char* task_name(Task t);
// Accepts "alg1", "alg2", "alg2-median", "alg3-once", "alg3" (also "1", "3").
Task parse_task(std::string_view name);
bool task_is_estimate(Task t);

// JSON object whose keys are TesterConfig field names. Unknown keys and
// out-of-domain values throw std::invalid_argument.
TesterConfig parse_params(std::string_view json_text, TesterConfig base = {});
std::string params_to_json(const TesterConfig& cfg);

struct TrialReport {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  Task task = Task::kAlg1;
  double eps = 0;
  double delta = 0;
  std::optional<bool> accept;   // testers
  std::optional<double> eta;    // estimators
  std::uint64_t queries = 0;
  std::uint32_t max_depth = 0;
  double wall_ms = 0;
};

struct BatchSummary {
  std::uint64_t trials = 0;
  double accept_rate = 0;   // testers
  double mean_eta = 0;      // estimators
  double mean_queries = 0;
  std::uint64_t max_queries = 0;
  std::uint32_t max_depth = 0;
  std::optional<Farness> true_farness;
};

struct BatchConfig {
  Task task = Task::kAlg1;
  TestParams params;
  TesterConfig tester;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 1;
  unsigned threads = 1;
  bool with_farness = true;  // run the exact oracle once for the summary
  bool timing = false;       // include wall time in emitted output
};

struct BatchResult {
  std::vector<TrialReport> trials;  // ordered by index
  BatchSummary summary;
};

// Trial i uses seed derive_seed(master_seed, i); results do not depend on
// the thread count.
BatchResult run_batch(const BatchConfig& cfg, const Formula& f, const Assignment& a);

// Recomputes the summary from trial rows.
BatchSummary summarize(const std::vector<TrialReport>& trials);

std::string batch_to_json(const BatchConfig& cfg, const BatchResult& r);
std::string batch_to_csv(const BatchConfig& cfg, const BatchResult& r);

struct ScalingRow {
  std::uint64_t size = 0;
  Farness farness;
  double reject_rate = 0;
  double mean_queries = 0;
  std::uint64_t max_queries = 0;
};

// For each size: build the family instance, find an eps-far assignment
// (verified by the exact oracle), run cfg.trials trials of cfg.task.
// Random families get up to 50 formula draws.
// Throws std::runtime_error when no far assignment is found.
std::vector<ScalingRow> query_scaling(const BatchConfig& cfg,
                                      const std::vector<std::uint64_t>& sizes,
                                      const std::string& family);

std::string scaling_to_json(const BatchConfig& cfg, const std::string& family,
                            const std::vector<ScalingRow>& rows);
std::string scaling_to_csv(const std::vector<ScalingRow>& rows);

}  // namespace rof

#endif  // ROF_HARNESS_H_
