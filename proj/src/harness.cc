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

#include "rof/harness.h"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "rof/generators.h"
#include "rof/normalize.h"

namespace rof {
namespace {

using Json = nlohmann::ordered_json;

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// Every TesterConfig field, in declaration order.
template <typename Cfg, typename Fn>
void for_each_field(Cfg& cfg, Fn&& fn) {
  fn("genand_scale", cfg.genand_scale);
  fn("genand_power", cfg.genand_power);
  fn("estimate_scale", cfg.estimate_scale);
  fn("estimate_power", cfg.estimate_power);
  fn("median_scale", cfg.median_scale);
  fn("median_inner_delta", cfg.median_inner_delta);
  fn("localdist_factor", cfg.localdist_factor);
  fn("twicelocaldist_factor", cfg.twicelocaldist_factor);
  fn("numrel_scale", cfg.numrel_scale);
  fn("numrel_cutoff", cfg.numrel_cutoff);
  fn("orconst_scale", cfg.orconst_scale);
  fn("reps_scale", cfg.reps_scale);
  fn("short_circuit", cfg.short_circuit);
  fn("query_budget", cfg.query_budget);
}

Json params_json(const TestParams& p) {
  return Json{{"eps", p.eps}, {"delta", p.delta}, {"k", p.k}, {"b", p.b}};
}

TrialReport run_trial(const BatchConfig& cfg, const Formula& f, const Assignment& a,
                      std::uint64_t index) {
  TrialReport t;
  t.index = index;
  t.seed = derive_seed(cfg.master_seed, index);
  t.task = cfg.task;
  t.eps = cfg.params.eps;
  t.delta = cfg.params.delta;
  Rng rng(t.seed);
  CountingOracle oracle(a);
  RunStats stats;
  const auto start = std::chrono::steady_clock::now();
  switch (cfg.task) {
    case Task::kAlg1:
      t.accept = alg1_test(f, cfg.params, oracle, rng, cfg.tester, &stats);
      break;
    case Task::kAlg2:
      t.eta = alg2_estimate(f, cfg.params, oracle, rng, cfg.tester, &stats).eta;
      break;
    case Task::kAlg2Median:
      t.eta = alg2_median(f, cfg.params, oracle, rng, cfg.tester, &stats).eta;
      break;
    case Task::kAlg3Once:
      t.accept = alg3_once(f, cfg.params.eps, oracle, rng, cfg.tester, &stats);
      break;
    case Task::kAlg3:
      t.accept = alg3_test(f, cfg.params.eps, oracle, rng, cfg.tester, &stats);
      break;
  }
  t.wall_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  t.queries = oracle.query_count();
  t.max_depth = stats.max_depth;
  return t;
}

}  // namespace

const char* task_name(Task t) {
  switch (t) {
    case Task::kAlg1: return "alg1";
    case Task::kAlg2: return "alg2";
    case Task::kAlg2Median: return "alg2-median";
    case Task::kAlg3Once: return "alg3-once";
    case Task::kAlg3: return "alg3";
  }
  return "?";
}

Task parse_task(std::string_view name) {
  if (name == "alg1" || name == "1") return Task::kAlg1;
  if (name == "alg2" || name == "2") return Task::kAlg2;
  if (name == "alg2-median") return Task::kAlg2Median;
  if (name == "alg3-once") return Task::kAlg3Once;
  if (name == "alg3" || name == "3") return Task::kAlg3;
  throw std::invalid_argument("unknown task '" + std::string(name) + "'");
}

bool task_is_estimate(Task t) { return t == Task::kAlg2 || t == Task::kAlg2Median; }

TesterConfig parse_params(std::string_view json_text, TesterConfig base) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("params: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("params must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for_each_field(base, [&](const char* name, auto& field) {
      if (it.key() != name) return;
      known = true;
      using T = std::decay_t<decltype(field)>;
      if constexpr (std::is_same_v<T, bool>) {
        if (!it.value().is_boolean()) throw std::invalid_argument(it.key() + " must be boolean");
      } else {
        if (!it.value().is_number()) throw std::invalid_argument(it.key() + " must be a number");
        if constexpr (std::is_integral_v<T>) {
          if (!it.value().is_number_unsigned()) {
            throw std::invalid_argument(it.key() + " must be a non-negative integer");
          }
        }
      }
      field = it.value().template get<T>();
    });
    if (!known) throw std::invalid_argument("unknown parameter '" + it.key() + "'");
  }
  base.validate();
  return base;
}

std::string params_to_json(const TesterConfig& cfg) {
  Json j = Json::object();
  for_each_field(cfg, [&](const char* name, const auto& field) { j[name] = field; });
  return j.dump();
}

BatchSummary summarize(const std::vector<TrialReport>& trials) {
  BatchSummary s;
  s.trials = trials.size();
  if (trials.empty()) return s;
  double accepts = 0, etas = 0, queries = 0;
  for (const TrialReport& t : trials) {
    if (t.accept && *t.accept) accepts += 1;
    if (t.eta) etas += *t.eta;
    queries += static_cast<double>(t.queries);
    s.max_queries = std::max(s.max_queries, t.queries);
    s.max_depth = std::max(s.max_depth, t.max_depth);
  }
  const double n = static_cast<double>(trials.size());
  s.accept_rate = accepts / n;
  s.mean_eta = etas / n;
  s.mean_queries = queries / n;
  return s;
}

BatchResult run_batch(const BatchConfig& cfg, const Formula& f, const Assignment& a) {
  cfg.params.validate();
  cfg.tester.validate();
  BatchResult r;
  r.trials.resize(cfg.trials);
  const unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1 || cfg.trials < 2) {
    for (std::uint64_t i = 0; i < cfg.trials; ++i) r.trials[i] = run_trial(cfg, f, a, i);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t i; !failed && (i = next++) < cfg.trials;) {
          try {
            r.trials[i] = run_trial(cfg, f, a, i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  r.summary = summarize(r.trials);
  if (cfg.with_farness) r.summary.true_farness = farness(f, a, cfg.params.b);
  return r;
}

std::string batch_to_json(const BatchConfig& cfg, const BatchResult& r) {
  Json rows = Json::array();
  for (const TrialReport& t : r.trials) {
    Json row{{"index", t.index}, {"seed", t.seed}, {"algorithm", task_name(t.task)},
             {"eps", t.eps}, {"delta", t.delta}};
    if (t.accept) row["verdict"] = *t.accept ? "accept" : "reject";
    if (t.eta) row["eta"] = *t.eta;
    row["queries"] = t.queries;
    row["max_depth"] = t.max_depth;
    if (cfg.timing) row["wall_ms"] = t.wall_ms;
    rows.push_back(std::move(row));
  }
  const BatchSummary& s = r.summary;
  Json summary{{"trials", s.trials}};
  if (task_is_estimate(cfg.task)) {
    summary["mean_eta"] = s.mean_eta;
  } else {
    summary["accept_rate"] = s.accept_rate;
  }
  summary["mean_queries"] = s.mean_queries;
  summary["max_queries"] = s.max_queries;
  summary["max_depth"] = s.max_depth;
  if (s.true_farness) summary["true_farness"] = s.true_farness->to_string();
  Json out{{"task", task_name(cfg.task)},
           {"master_seed", cfg.master_seed},
           {"params", params_json(cfg.params)},
           {"config", Json::parse(params_to_json(cfg.tester))},
           {"trials", std::move(rows)},
           {"summary", std::move(summary)}};
  return out.dump(2) + "\n";
}

std::string batch_to_csv(const BatchConfig& cfg, const BatchResult& r) {
  std::string out = "index,seed,algorithm,eps,delta,result,queries,max_depth";
  if (cfg.timing) out += ",wall_ms";
  out += "\n";
  for (const TrialReport& t : r.trials) {
    out += std::to_string(t.index) + "," + std::to_string(t.seed) + "," +
           task_name(t.task) + "," + fmt_double(t.eps) + "," + fmt_double(t.delta) + ",";
    if (t.accept) out += *t.accept ? "accept" : "reject";
    if (t.eta) out += fmt_double(*t.eta);
    out += "," + std::to_string(t.queries) + "," + std::to_string(t.max_depth);
    if (cfg.timing) out += "," + fmt_double(t.wall_ms);
    out += "\n";
  }
  const BatchSummary& s = r.summary;
  out += "summary,,";
  out += task_name(cfg.task);
  out += "," + fmt_double(cfg.params.eps) + "," + fmt_double(cfg.params.delta) + ",";
  out += fmt_double(task_is_estimate(cfg.task) ? s.mean_eta : s.accept_rate);
  out += "," + std::to_string(s.max_queries) + "," + std::to_string(s.max_depth);
  if (cfg.timing) out += ",";
  out += "\n";
  return out;
}

constexpr int kFormulaDraws = 50;

std::vector<ScalingRow> query_scaling(const BatchConfig& cfg,
                                      const std::vector<std::uint64_t>& sizes,
                                      const std::string& family) {
  std::vector<ScalingRow> rows;
  for (std::uint64_t size : sizes) {
    Rng rng(derive_seed(cfg.master_seed ^ 0x5ca1ab1eull, size));
    // Random families redraw the formula when it has no far point nearby.
    Formula f = family_formula(family, size, cfg.params.k, rng);
    auto far = make_far_assignment(f, cfg.params.eps, cfg.params.b, rng);
    for (int draw = 1; !far && draw < kFormulaDraws && family != "balanced-and-or"; ++draw) {
      f = family_formula(family, size, cfg.params.k, rng);
      far = make_far_assignment(f, cfg.params.eps, cfg.params.b, rng);
    }
    if (!far) {
      throw std::runtime_error("no " + fmt_double(cfg.params.eps) +
                               "-far assignment found at size " + std::to_string(size));
    }
    BatchConfig c = cfg;
    c.with_farness = true;
    BatchResult r = run_batch(c, f, *far);
    ScalingRow row;
    row.size = f.size();
    row.farness = *r.summary.true_farness;
    row.reject_rate = 1.0 - r.summary.accept_rate;
    row.mean_queries = r.summary.mean_queries;
    row.max_queries = r.summary.max_queries;
    rows.push_back(row);
  }
  return rows;
}

std::string scaling_to_json(const BatchConfig& cfg, const std::string& family,
                            const std::vector<ScalingRow>& rows) {
  Json out{{"task", task_name(cfg.task)},
           {"family", family},
           {"master_seed", cfg.master_seed},
           {"trials", cfg.trials},
           {"params", params_json(cfg.params)},
           {"config", Json::parse(params_to_json(cfg.tester))}};
  Json table = Json::array();
  for (const ScalingRow& r : rows) {
    table.push_back(Json{{"size", r.size},
                         {"farness", r.farness.to_string()},
                         {"reject_rate", r.reject_rate},
                         {"mean_queries", r.mean_queries},
                         {"max_queries", r.max_queries}});
  }
  out["rows"] = std::move(table);
  return out.dump(2) + "\n";
}

std::string scaling_to_csv(const std::vector<ScalingRow>& rows) {
  std::string out = "size,farness,reject_rate,mean_queries,max_queries\n";
  for (const ScalingRow& r : rows) {
    out += std::to_string(r.size) + "," + r.farness.to_string() + "," +
           fmt_double(r.reject_rate) + "," + fmt_double(r.mean_queries) + "," +
           std::to_string(r.max_queries) + "\n";
  }
  return out;
}

}  // namespace rof
