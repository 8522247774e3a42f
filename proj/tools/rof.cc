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

// Command-line front end: rof <subcommand> ...

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rof/distance.h"
#include "rof/evaluate.h"
#include "rof/formula.h"
#include "rof/harness.h"
#include "rof/lowerbound.h"
#include "rof/normalize.h"
#include "rof/testers.h"
#include "rof/text_format.h"

namespace {

using Json = nlohmann::ordered_json;
using namespace rof;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPropertyFailed = 2;

struct Globals {
  std::uint64_t seed = 1;
  std::string emit = "text";
  std::string params_file;
  unsigned threads = 1;
  bool timing = false;
};

struct RunArgs {
  std::string formula_file;
  std::string assignment;
  TestParams params;
  std::uint64_t trials = 1;
  std::string alg = "1";
  bool median = false;
};

TesterConfig load_config(const Globals& g) {
  if (g.params_file.empty()) return {};
  return parse_params(read_file(g.params_file));
}

// Brings a formula into the form the task needs.
Formula prepare(Task task, const Formula& f, std::size_t k) {
  switch (task) {
    case Task::kAlg1:
      return is_kx_basic(f, k) ? f : to_kx_basic(f, k);
    case Task::kAlg2:
    case Task::kAlg2Median:
      return to_k_basic(f, k);
    case Task::kAlg3Once:
    case Task::kAlg3: {
      Formula g = is_basic(f) ? f : to_k_basic(f, k);
      if (!is_basic(g)) throw std::invalid_argument("alg3 needs an and/or formula");
      return g;
    }
  }
  return f;
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoull(item));
  }
  return out;
}

std::string symbol_name(const Alphabet& a, Symbol s) { return a.name(s); }

int cmd_normalize(const Globals& g, const std::string& file, std::size_t k,
                  const std::string& form) {
  const Formula f = parse_formula(read_file(file));
  const NormalForm nf = form == "k" ? NormalForm::kKBasic : NormalForm::kKxBasic;
  const NormalizeResult r = normalize(f, k, nf);
  auto counts_json = [](const std::vector<std::size_t>& c) {
    Json j = Json::object();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] != 0) j[gate_kind_name(static_cast<GateKind>(i))] = c[i];
    }
    return j;
  };
  Json summary{{"k", k},
               {"form", form == "k" ? "k-basic" : "k-x-basic"},
               {"gates_before", counts_json(gate_counts(f))}};
  if (r.formula) {
    summary["gates_after"] = counts_json(gate_counts(*r.formula));
  } else {
    summary["constant"] = *r.constant ? 1 : 0;
  }
  summary["rewrites"] = Json{{"forceful_splits", r.counts.forceful_splits},
                             {"merges", r.counts.merges},
                             {"de_morgan", r.counts.de_morgan},
                             {"negations_absorbed", r.counts.negations_absorbed},
                             {"constants_folded", r.counts.constants_folded},
                             {"mdnf_gates", r.counts.mdnf_gates}};
  const std::string text = r.formula ? serialize(*r.formula) : (*r.constant ? "1" : "0");
  if (g.emit == "json") {
    summary["formula"] = text;
    std::cout << summary.dump(2) << "\n";
  } else {
    std::cout << text << "\n" << summary.dump() << "\n";
  }
  return kExitOk;
}

int cmd_eval(const Globals& g, const std::string& file, const std::string& assignment) {
  const Formula f = parse_formula(read_file(file));
  const Assignment a = load_assignment(assignment, f.alphabet());
  const Symbol s = evaluate(f, a);
  const bool ok = f.alphabet().default_accept().contains(s);
  if (g.emit == "json") {
    std::cout << Json{{"value", symbol_name(f.alphabet(), s)}, {"accepted", ok}}.dump() << "\n";
  } else if (g.emit == "csv") {
    std::cout << "value,accepted\n" << symbol_name(f.alphabet(), s) << "," << ok << "\n";
  } else {
    std::cout << symbol_name(f.alphabet(), s) << (ok ? " accepted" : " rejected") << "\n";
  }
  return kExitOk;
}

int cmd_distance(const Globals& g, const std::string& file,
                 const std::string& assignment, const std::string& target) {
  const Formula f = parse_formula(read_file(file));
  const Assignment a = load_assignment(assignment, f.alphabet());
  SymbolSet targets;
  if (target == "accept") {
    targets = f.alphabet().default_accept();
  } else {
    auto s = f.alphabet().find_name(target);
    if (!s) throw std::invalid_argument("target '" + target + "' not in alphabet");
    targets = SymbolSet::single(*s);
  }
  const Farness d = farness(f, a, targets);
  const std::string cost = d.reachable() ? std::to_string(d.cost) : "unreachable";
  if (g.emit == "json") {
    std::cout << Json{{"cost", cost}, {"size", d.size}, {"farness", d.to_string()}}.dump()
              << "\n";
  } else if (g.emit == "csv") {
    std::cout << "cost,size,farness\n" << cost << "," << d.size << "," << d.to_string() << "\n";
  } else {
    std::cout << "cost " << cost << "\nsize " << d.size << "\nfarness " << d.to_string()
              << "\n";
  }
  return kExitOk;
}

int emit_batch(const Globals& g, const BatchConfig& cfg, const BatchResult& r) {
  if (g.emit == "csv") {
    std::cout << batch_to_csv(cfg, r);
  } else {
    std::cout << batch_to_json(cfg, r);
  }
  return kExitOk;
}

BatchConfig batch_config(const Globals& g, Task task, const RunArgs& args) {
  BatchConfig cfg;
  cfg.task = task;
  cfg.params = args.params;
  cfg.tester = load_config(g);
  cfg.trials = args.trials;
  cfg.master_seed = g.seed;
  cfg.threads = g.threads;
  cfg.timing = g.timing;
  return cfg;
}

int cmd_run(const Globals& g, Task task, const RunArgs& args) {
  const Formula raw = parse_formula(read_file(args.formula_file));
  const Assignment a = load_assignment(args.assignment, raw.alphabet());
  const Formula f = prepare(task, raw, args.params.k);
  BatchConfig cfg = batch_config(g, task, args);
  if (args.trials > 1 || g.emit != "text") {
    return emit_batch(g, cfg, run_batch(cfg, f, a));
  }
  cfg.with_farness = false;
  const BatchResult r = run_batch(cfg, f, a);
  const TrialReport& t = r.trials.front();
  if (t.eta) {
    std::cout << "eta " << *t.eta << "\nqueries " << t.queries << "\n";
    return kExitOk;
  }
  std::cout << (*t.accept ? "accept" : "reject") << "\nqueries " << t.queries << "\n";
  return *t.accept ? kExitOk : kExitPropertyFailed;
}

int cmd_scaling(const Globals& g, Task task, const RunArgs& args,
                const std::string& sizes, const std::string& family) {
  BatchConfig cfg = batch_config(g, task, args);
  const auto rows = query_scaling(cfg, parse_list(sizes), family);
  if (g.emit == "csv") {
    std::cout << scaling_to_csv(rows);
  } else {
    std::cout << scaling_to_json(cfg, family, rows);
  }
  return kExitOk;
}

Variant parse_variant(const std::string& s) {
  if (s == "bal4") return Variant::kFourValued;
  if (s == "bal5") return Variant::kFiveValuedMonotone;
  throw std::invalid_argument("variant must be bal4 or bal5");
}

Dist parse_dist(const std::string& s) {
  if (s == "dy") return Dist::kYes;
  if (s == "dn") return Dist::kNo;
  throw std::invalid_argument("dist must be dy or dn");
}

std::string bits_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

struct LbArgs {
  std::string variant = "bal4";
  std::string dist = "dn";
  unsigned height = 4;
  std::uint64_t trials = 100;
  std::string queries;
  std::string mode = "exact";
  std::uint64_t samples = 100000;
};

int cmd_lb_build(const LbArgs& a) {
  std::cout << serialize(build_balancing_formula(parse_variant(a.variant), a.height)) << "\n";
  return kExitOk;
}

int cmd_lb_sample(const Globals& g, const LbArgs& a) {
  Rng rng(g.seed);
  const LowerBoundSample s = sample_distribution(parse_dist(a.dist), a.height, rng);
  if (g.emit == "json") {
    std::cout << Json{{"dist", a.dist}, {"height", a.height}, {"k", s.k},
                      {"blocks", s.blocks}, {"assignment", bits_string(s.bits)}}
                     .dump()
              << "\n";
  } else if (g.emit == "csv") {
    std::cout << "dist,height,k,assignment\n"
              << a.dist << "," << a.height << "," << s.k << "," << bits_string(s.bits) << "\n";
  } else {
    std::cout << bits_string(s.bits) << "\n";
  }
  return kExitOk;
}

int cmd_lb_farness(const Globals& g, const LbArgs& a) {
  const FarnessReport r = farness_experiment(parse_variant(a.variant), parse_dist(a.dist),
                                             a.height, a.trials, g.seed);
  if (g.emit == "csv") {
    std::cout << "trial,k,cost,size\n";
    for (std::size_t i = 0; i < r.costs.size(); ++i) {
      std::cout << i << "," << r.levels[i] << "," << r.costs[i] << "," << r.size << "\n";
    }
    return kExitOk;
  }
  std::cout << Json{{"variant", a.variant}, {"dist", a.dist}, {"height", a.height},
                    {"trials", a.trials}, {"seed", g.seed}, {"size", r.size},
                    {"threshold", r.threshold}, {"min_cost", r.min_cost},
                    {"max_cost", r.max_cost}, {"mean_cost", r.mean_cost},
                    {"fraction_meeting", r.fraction_meeting}}
                   .dump(2)
            << "\n";
  return kExitOk;
}

int cmd_lb_indist(const Globals& g, const LbArgs& a) {
  const auto q = parse_list(a.queries);
  if (a.mode == "exact") {
    const ExactConditionalReport r = exact_conditional(q, a.height);
    const double tv = exact_tv(q, a.height);
    if (g.emit == "csv") {
      std::cout << "k,admissible,equal\n";
      for (unsigned k = 2; k <= a.height; ++k) {
        const bool adm = std::find(r.admissible.begin(), r.admissible.end(), k) !=
                         r.admissible.end();
        const bool bad = std::find(r.mismatched.begin(), r.mismatched.end(), k) !=
                         r.mismatched.end();
        std::cout << k << "," << adm << "," << (adm && !bad) << "\n";
      }
    } else {
      std::cout << Json{{"height", a.height}, {"queries", q}, {"lca_levels", r.levels},
                        {"admissible", r.admissible}, {"mismatched", r.mismatched},
                        {"passed", r.passed()}, {"exact_tv", tv}}
                       .dump(2)
                << "\n";
    }
    return r.passed() ? kExitOk : kExitPropertyFailed;
  }
  if (a.mode != "tv") throw std::invalid_argument("mode must be exact or tv");
  const TvReport r = empirical_tv(q, a.height, a.samples, g.seed);
  if (g.emit == "csv") {
    std::cout << "height,samples,tv,stderr,exact_tv\n"
              << a.height << "," << a.samples << "," << r.tv << "," << r.stderr_boot << ","
              << r.exact << "\n";
  } else {
    std::cout << Json{{"height", a.height}, {"queries", q}, {"samples", a.samples},
                      {"seed", g.seed}, {"tv", r.tv}, {"stderr", r.stderr_boot},
                      {"exact_tv", r.exact}}
                     .dump(2)
              << "\n";
  }
  return kExitOk;
}

void add_run_options(CLI::App* cmd, RunArgs& a, bool with_b) {
  cmd->add_option("--eps", a.params.eps, "distance parameter")->default_val(0.25);
  cmd->add_option("--delta", a.params.delta, "confidence parameter")->default_val(1.0 / 3.0);
  cmd->add_option("--k", a.params.k, "gate arity bound")->default_val(2);
  cmd->add_option("--trials", a.trials, "number of seeded trials")->default_val(1);
  if (with_b) cmd->add_option("--b", a.params.b, "target value")->check(CLI::Range(0, 1));
  cmd->add_option("formula", a.formula_file, "formula file")->required();
  cmd->add_option("assignment", a.assignment, "assignment string or @file")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Read-once formula property testing toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "master seed")->default_val(1);
  app.add_option("--emit", g.emit, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--params", g.params_file, "JSON file of constant overrides");
  app.add_option("--threads", g.threads, "worker threads for trials")->default_val(1);
  app.add_flag("--timing", g.timing, "include wall time in batch output");

  std::string file, assignment, target = "1", form = "kx", sizes = "256,8192";
  std::string family = "balanced-and-or", task = "alg1";
  std::size_t k = 2;
  RunArgs run;
  LbArgs lb;

  auto* norm = app.add_subcommand("normalize", "rewrite into k-x-basic or k-basic form");
  norm->add_option("--k", k, "arity bound")->default_val(2);
  norm->add_option("--form", form, "kx or k")->check(CLI::IsMember({"kx", "k"}));
  norm->add_option("formula", file, "formula file")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a formula");
  eval->add_option("formula", file)->required();
  eval->add_option("assignment", assignment)->required();

  auto* dist = app.add_subcommand("distance", "exact distance to a target");
  dist->add_option("--target", target, "symbol name or 'accept'");
  dist->add_option("formula", file)->required();
  dist->add_option("assignment", assignment)->required();

  auto* test = app.add_subcommand("test", "run a tester");
  test->add_option("--alg", run.alg, "1 or 3")->check(CLI::IsMember({"1", "3"}));
  add_run_options(test, run, true);

  auto* est = app.add_subcommand("estimate", "estimate the distance to satisfying");
  est->add_flag("--median", run.median, "median of repeated estimates");
  add_run_options(est, run, false);

  auto* batch = app.add_subcommand("batch", "seeded trials of any task");
  batch->add_option("--task", task, "alg1, alg2, alg2-median, alg3-once, alg3");
  add_run_options(batch, run, true);

  RunArgs scale_args;
  auto* scaling = app.add_subcommand("scaling", "query counts across formula sizes");
  scaling->add_option("--task", task, "alg1, alg3, ...");
  scaling->add_option("--family", family, "balanced-and-or, random-basic, random-kx-basic");
  scaling->add_option("--sizes", sizes, "comma-separated sizes");
  scaling->add_option("--eps", scale_args.params.eps)->default_val(0.25);
  scaling->add_option("--delta", scale_args.params.delta)->default_val(1.0 / 3.0);
  scaling->add_option("--k", scale_args.params.k)->default_val(2);
  scaling->add_option("--trials", scale_args.trials)->default_val(100);

  auto* lbc = app.add_subcommand("lb", "lower-bound constructions");
  lbc->require_subcommand(1);
  auto* lb_build = lbc->add_subcommand("build", "emit a balancing formula");
  auto* lb_sample = lbc->add_subcommand("sample", "draw from D_Y or D_N");
  auto* lb_far = lbc->add_subcommand("farness", "exact distances of samples");
  auto* lb_ind = lbc->add_subcommand("indist", "outcome distributions on a query set");
  for (auto* c : {lb_build, lb_far}) {
    c->add_option("--variant", lb.variant)->check(CLI::IsMember({"bal4", "bal5"}));
  }
  for (auto* c : {lb_sample, lb_far}) {
    c->add_option("--dist", lb.dist)->check(CLI::IsMember({"dy", "dn"}));
  }
  for (auto* c : {lb_build, lb_sample, lb_far, lb_ind}) {
    c->add_option("--height", lb.height)->required();
  }
  lb_far->add_option("--trials", lb.trials)->default_val(100);
  lb_ind->add_option("--queries", lb.queries, "comma-separated leaf indices")->required();
  lb_ind->add_option("--mode", lb.mode)->check(CLI::IsMember({"exact", "tv"}));
  lb_ind->add_option("--samples", lb.samples)->default_val(100000);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*norm) return cmd_normalize(g, file, k, form);
    if (*eval) return cmd_eval(g, file, assignment);
    if (*dist) return cmd_distance(g, file, assignment, target);
    if (*test) return cmd_run(g, run.alg == "3" ? Task::kAlg3 : Task::kAlg1, run);
    if (*est) return cmd_run(g, run.median ? Task::kAlg2Median : Task::kAlg2, run);
    if (*batch) return cmd_run(g, parse_task(task), run);
    if (*scaling) return cmd_scaling(g, parse_task(task), scale_args, sizes, family);
    if (*lb_build) return cmd_lb_build(lb);
    if (*lb_sample) return cmd_lb_sample(g, lb);
    if (*lb_far) return cmd_lb_farness(g, lb);
    if (*lb_ind) return cmd_lb_indist(g, lb);
  } catch (const std::exception& e) {
    std::cerr << "rof: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
