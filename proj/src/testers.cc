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

#include "rof/testers.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rof/children.h"
#include "rof/evaluate.h"
#include "rof/normalize.h"

namespace rof {
namespace {

std::uint64_t ceil_count(double x) {
  if (!(x < 1e18)) throw std::invalid_argument("parameter count overflows");
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(x)));
}

double base_ratio(double eps, std::size_t k) {
  return 4.0 * static_cast<double>(k) / eps;
}

// (4k/eps)^-k
double inverse_power(double eps, std::size_t k) {
  return std::pow(base_ratio(eps, k), -static_cast<double>(k));
}

class Run {
 public:
  Run(const Formula& f, std::size_t k, CountingOracle& oracle, Rng& rng,
      const TesterConfig& cfg, RunStats* stats)
      : f_(f), k_(k), oracle_(oracle), rng_(rng), cfg_(cfg), stats_(stats) {}

  bool alg1(VertexId r, double eps, double delta, Symbol b, std::uint32_t depth) {
    enter(depth);
    if (eps > 1) return true;
    const Vertex& vx = f_.vertex(r);
    if (vx.kind == GateKind::kVariable) return query(vx.var) == b;
    if (vx.kind == GateKind::kNegatedVariable) return query(vx.var) == 1 - b;

    const bool is_and = vx.kind == GateKind::kAnd;
    const bool is_or = vx.kind == GateKind::kOr;
    if ((is_and && b == 1) || (is_or && b == 0)) {
      const std::uint64_t l = genand_count(eps, delta, k_, cfg_);
      const double next = slightly_small(eps, k_);
      bool y = true;
      for (std::uint64_t i = 0; i < l; ++i) {
        const VertexId u = weighted_child_sample(f_, r, rng_);
        const bool yu = alg1(u, next, delta / 2, b, depth + 1);
        y = y && yu;
        if (!y && cfg_.short_circuit) break;
      }
      return y;
    }
    const double size = static_cast<double>(f_.size(r));
    if (is_and || is_or) {
      for (VertexId c : vx.children) {
        if (static_cast<double>(f_.size(c)) < eps * size) return true;
      }
      const double next = slightly_big(eps);
      bool y = false;
      for (VertexId c : vx.children) {
        const bool yu = alg1(c, next, eps * delta / 2, b, depth + 1);
        y = y || yu;
        if (y && cfg_.short_circuit) break;
      }
      return y;
    }

    // Unforceable gate.
    for (VertexId c : vx.children) {
      if (static_cast<double>(f_.size(c)) >= (1 - eps) * size) return true;
    }
    const std::size_t m = vx.arity();
    const double next = recurse_eps(eps, k_);
    const double next_delta = delta / (2.0 * static_cast<double>(m));
    std::vector<bool> y0(m), y1(m);
    for (std::size_t i = 0; i < m; ++i) {
      y0[i] = alg1(vx.children[i], next, next_delta, 0, depth + 1);
      y1[i] = alg1(vx.children[i], next, next_delta, 1, depth + 1);
    }
    std::vector<Symbol> x(m);
    for (std::size_t row = 0; row < (std::size_t{1} << m); ++row) {
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        x[i] = (row >> i) & 1u;
        ok = x[i] ? y1[i] : y0[i];
      }
      if (ok && gate_output(vx, x, Alphabet::boolean()) == b) return true;
    }
    return false;
  }

  double alg2(VertexId r, double eps, double delta, std::uint32_t depth) {
    enter(depth);
    const Vertex& vx = f_.vertex(r);
    if (vx.kind == GateKind::kVariable) return 1.0 - query(vx.var);
    if (eps > 1) return 0.0;
    const double size = static_cast<double>(f_.size(r));
    if (vx.kind == GateKind::kOr) {
      for (VertexId c : vx.children) {
        if (static_cast<double>(f_.size(c)) < eps * size) return 0.0;
      }
    }
    const double inv = inverse_power(eps, k_);
    if (vx.kind == GateKind::kAnd) {
      const std::uint64_t l = estimate_count(eps, delta, k_, cfg_);
      const double next = eps * (1 - inv / 8);
      const double next_delta = delta * eps * inv / 16;
      double sum = 0;
      for (std::uint64_t i = 0; i < l; ++i) {
        const VertexId u = weighted_child_sample(f_, r, rng_);
        sum += alg2(u, next, next_delta, depth + 1);
      }
      return sum / static_cast<double>(l);
    }

    const ChildClasses cls = classify_children(f_, r, eps, k_);
    const double next = eps * (1 + inv);
    const double next_delta =
        delta / std::max(static_cast<double>(k_), 1.0 / eps);
    const std::size_t m = vx.arity();
    std::vector<double> alpha(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const VertexId c = vx.children[i];
      if (std::find(cls.heavy.begin(), cls.heavy.end(), c) == cls.heavy.end()) continue;
      alpha[i] = alg2(c, next, next_delta, depth + 1) *
                 static_cast<double>(f_.size(c)) / size;
    }
    double best = INFINITY;
    if (vx.kind == GateKind::kOr) {
      for (double a : alpha) best = std::min(best, a);
    } else {
      for (TermMask t : vx.terms) {
        double sum = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (t >> i & 1u) sum += alpha[i];
        }
        best = std::min(best, sum);
      }
    }
    return std::clamp(best, 0.0, 1.0);
  }

  bool alg3(VertexId r, double eps, std::uint32_t depth) {
    enter(depth);
    if (eps > 1) return true;
    const Vertex& vx = f_.vertex(r);
    if (vx.is_leaf()) return query(vx.var) == 1;

    auto leaves = f_.leaves(r);
    const VertexId s = leaves[uniform_below(rng_, leaves.size())];
    std::vector<VertexId> rel;  // children of Or ancestors off the path
    for (VertexId u = s; u != r;) {
      const VertexId p = f_.parent(u);
      if (f_.vertex(p).kind == GateKind::kOr) {
        for (VertexId c : f_.vertex(p).children) {
          if (c != u) rel.push_back(c);
        }
      }
      u = p;
    }
    if (static_cast<double>(rel.size()) > cfg_.numrel_cutoff * numrel(eps, cfg_)) {
      return true;
    }
    const VarIndex var = f_.vertex(s).var;
    if (cfg_.short_circuit && query(var) == 1) return true;

    const std::uint64_t reps = orconst(eps, cfg_);
    const double next = cfg_.twicelocaldist_factor * eps;
    bool any = false;
    for (VertexId u : rel) {
      bool y = true;
      for (std::uint64_t i = 0; i < reps; ++i) {
        const bool yi = alg3(u, next, depth + 1);
        y = y && yi;
        if (!y && cfg_.short_circuit) break;
      }
      any = any || y;
      if (any && cfg_.short_circuit) return true;
    }
    if (cfg_.short_circuit) return any;
    const bool at_s = query(var) == 1;
    return at_s || any;
  }

 private:
  void enter(std::uint32_t depth) {
    if (stats_ != nullptr) {
      stats_->max_depth = std::max(stats_->max_depth, depth);
      ++stats_->calls;
    }
  }

  Symbol query(VarIndex var) {
    if (cfg_.query_budget != 0 && oracle_.query_count() >= cfg_.query_budget) {
      throw QueryBudgetExceeded("query budget of " +
                                std::to_string(cfg_.query_budget) + " exhausted");
    }
    return oracle_.query(var);
  }

  const Formula& f_;
  std::size_t k_;
  CountingOracle& oracle_;
  Rng& rng_;
  const TesterConfig& cfg_;
  RunStats* stats_;
};

void check_oracle(const Formula& f, const CountingOracle& oracle) {
  if (!f.alphabet().is_boolean() || !oracle.alphabet().is_boolean()) {
    throw std::invalid_argument("testers need Boolean formulas and assignments");
  }
  if (oracle.size() < f.num_vars()) throw std::invalid_argument("assignment too short");
}

bool alg2_ready(const Formula& f, std::size_t k) {
  if (!is_k_basic(f, k)) return false;
  for (const Vertex& vx : f.vertices()) {
    if (vx.kind == GateKind::kTable) return false;
  }
  return true;
}

}  // namespace

void TesterConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be positive");
    }
  };
  positive(genand_scale, "genand_scale");
  positive(estimate_scale, "estimate_scale");
  positive(median_scale, "median_scale");
  positive(localdist_factor, "localdist_factor");
  positive(numrel_scale, "numrel_scale");
  positive(numrel_cutoff, "numrel_cutoff");
  positive(orconst_scale, "orconst_scale");
  positive(reps_scale, "reps_scale");
  if (!(genand_power >= 0) || !(estimate_power >= 0)) {
    throw std::invalid_argument("powers must be non-negative");
  }
  if (!(median_inner_delta > 0 && median_inner_delta < 1)) {
    throw std::invalid_argument("median_inner_delta must be in (0,1)");
  }
  if (!(twicelocaldist_factor > 1) || !std::isfinite(twicelocaldist_factor)) {
    throw std::invalid_argument("twicelocaldist_factor must exceed 1");
  }
}

void TestParams::validate() const {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must be in (0,1)");
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (b > 1) throw std::invalid_argument("b must be 0 or 1");
}

double slightly_small(double eps, std::size_t k) {
  return eps * (1 - inverse_power(eps, k) / 8);
}

double slightly_big(double eps) { return eps >= 1 ? INFINITY : eps / (1 - eps); }

double recurse_eps(double eps, std::size_t k) {
  return eps * (1 + inverse_power(eps, k));
}

std::uint64_t genand_count(double eps, double delta, std::size_t k,
                           const TesterConfig& cfg) {
  return ceil_count(cfg.genand_scale / eps *
                    std::pow(base_ratio(eps, k), cfg.genand_power * static_cast<double>(k)) *
                    std::log(2 / delta));
}

std::uint64_t estimate_count(double eps, double delta, std::size_t k,
                             const TesterConfig& cfg) {
  return ceil_count(cfg.estimate_scale / (eps * eps) *
                    std::pow(base_ratio(eps, k), cfg.estimate_power * static_cast<double>(k)) *
                    std::log(1 / delta));
}

std::uint64_t median_reps(double delta, const TesterConfig& cfg) {
  return ceil_count(cfg.median_scale * std::log(1 / delta));
}

double numrel(double eps, const TesterConfig& cfg) {
  return cfg.numrel_scale / (eps * eps) * std::log2(2 / eps);
}

std::uint64_t orconst(double eps, const TesterConfig& cfg) {
  return ceil_count(cfg.orconst_scale / eps * std::log(6 * numrel(eps, cfg)));
}

std::uint64_t alg3_reps(double eps, const TesterConfig& cfg) {
  return ceil_count(cfg.reps_scale / eps);
}

std::uint64_t mdepth(double eps) {
  return ceil_count(3 / eps * std::log(3 / (2 * eps)));
}

double alg1_depth_bound(double eps, std::size_t k) {
  return 16 * std::pow(base_ratio(eps, k), static_cast<double>(k)) * std::log(1 / eps);
}

double alg2_depth_bound(double eps, std::size_t k) {
  return 2 * std::pow(base_ratio(eps, k), static_cast<double>(k)) * std::log(1 / eps);
}

bool alg1_test(const Formula& f, const TestParams& p, CountingOracle& oracle,
               Rng& rng, const TesterConfig& cfg, RunStats* stats) {
  p.validate();
  cfg.validate();
  check_oracle(f, oracle);
  if (!is_kx_basic(f, p.k)) throw std::invalid_argument("alg1 needs a k-x-basic formula");
  return Run(f, p.k, oracle, rng, cfg, stats).alg1(f.root(), p.eps, p.delta, p.b, 0);
}

EstimateResult alg2_estimate(const Formula& f, const TestParams& p,
                             CountingOracle& oracle, Rng& rng,
                             const TesterConfig& cfg, RunStats* stats) {
  p.validate();
  cfg.validate();
  check_oracle(f, oracle);
  if (!alg2_ready(f, p.k)) {
    throw std::invalid_argument("alg2 needs a k-basic formula with mdnf gates");
  }
  const std::uint64_t before = oracle.query_count();
  EstimateResult r;
  r.eta = Run(f, p.k, oracle, rng, cfg, stats).alg2(f.root(), p.eps, p.delta, 0);
  r.queries = oracle.query_count() - before;
  return r;
}

EstimateResult alg2_median(const Formula& f, const TestParams& p,
                           CountingOracle& oracle, Rng& rng,
                           const TesterConfig& cfg, RunStats* stats) {
  p.validate();
  cfg.validate();
  check_oracle(f, oracle);
  if (!alg2_ready(f, p.k)) {
    throw std::invalid_argument("alg2 needs a k-basic formula with mdnf gates");
  }
  const std::uint64_t before = oracle.query_count();
  const std::uint64_t reps = median_reps(p.delta, cfg);
  std::vector<double> etas;
  etas.reserve(reps);
  Run run(f, p.k, oracle, rng, cfg, stats);
  for (std::uint64_t i = 0; i < reps; ++i) {
    etas.push_back(run.alg2(f.root(), p.eps, cfg.median_inner_delta, 0));
  }
  const std::size_t mid = (etas.size() - 1) / 2;
  std::nth_element(etas.begin(), etas.begin() + static_cast<std::ptrdiff_t>(mid), etas.end());
  return {etas[mid], oracle.query_count() - before};
}

bool alg3_once(const Formula& f, double eps, CountingOracle& oracle, Rng& rng,
               const TesterConfig& cfg, RunStats* stats) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  cfg.validate();
  check_oracle(f, oracle);
  if (!is_basic(f)) throw std::invalid_argument("alg3 needs a basic formula");
  return Run(f, 2, oracle, rng, cfg, stats).alg3(f.root(), eps, 0);
}

bool alg3_test(const Formula& f, double eps, CountingOracle& oracle, Rng& rng,
               const TesterConfig& cfg, RunStats* stats) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  cfg.validate();
  check_oracle(f, oracle);
  if (!is_basic(f)) throw std::invalid_argument("alg3 needs a basic formula");
  Run run(f, 2, oracle, rng, cfg, stats);
  const std::uint64_t reps = alg3_reps(eps, cfg);
  bool accept = true;
  for (std::uint64_t i = 0; i < reps; ++i) {
    const bool once = run.alg3(f.root(), eps, 0);
    accept = accept && once;
    if (!accept && cfg.short_circuit) break;
  }
  return accept;
}

}  // namespace rof
