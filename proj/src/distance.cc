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

#include "rof/distance.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rof/evaluate.h"
#include "rof/normalize.h"

namespace rof {
namespace {

using u128 = unsigned __int128;

void check_targets(const Formula& f, SymbolSet targets) {
  if (targets.empty() || targets.mask() >> f.alphabet().size() != 0) {
    throw std::invalid_argument("target symbol not in alphabet");
  }
}

bool is_input_symbol(const Alphabet& alpha, Symbol s) {
  return s == alpha.zero() || s == alpha.one();
}

// Walks all tuples in {0..base-1}^m, child 0 fastest. Calls fn(tuple).
template <typename Fn>
void for_each_tuple(std::size_t m, std::size_t base, Fn&& fn) {
  std::vector<Symbol> x(m, 0);
  for (;;) {
    fn(std::span<const Symbol>(x));
    std::size_t i = 0;
    while (i < m && ++x[i] == base) x[i++] = 0;
    if (i == m) return;
  }
}

}  // namespace

double Farness::value() const {
  if (!reachable()) return INFINITY;
  if (size == 0) return 0.0;
  return static_cast<double>(cost) / static_cast<double>(size);
}

bool Farness::at_least(std::uint64_t num, std::uint64_t den) const {
  if (!reachable()) return true;
  return u128{cost} * den >= u128{num} * size;
}

bool Farness::at_least(double eps) const {
  if (!reachable()) return true;
  if (eps <= 0) return true;
  int exp = 0;
  const double frac = std::frexp(eps, &exp);  // eps = frac * 2^exp
  const auto mant = static_cast<std::uint64_t>(std::ldexp(frac, 53));
  exp -= 53;  // eps = mant * 2^exp
  if (exp >= 0) {
    if (exp > 60) return cost == 0 && size == 0;
    return u128{cost} >= (u128{mant} << exp) * size;
  }
  if (-exp > 70) {
    return static_cast<long double>(cost) >=
           static_cast<long double>(eps) * static_cast<long double>(size);
  }
  return u128{cost} << -exp >= u128{mant} * size;
}

std::string Farness::to_string() const {
  if (!reachable()) return "unreachable";
  return std::to_string(cost) + "/" + std::to_string(size);
}

std::uint64_t CostTable::best(VertexId v, SymbolSet targets) const {
  std::uint64_t out = kUnreachable;
  for (std::size_t s = 0; s < symbols_; ++s) {
    if (targets.contains(static_cast<Symbol>(s))) {
      out = std::min(out, at(v, static_cast<Symbol>(s)));
    }
  }
  return out;
}

CostTable cost_table(const Formula& f, const Assignment& a) {
  const Alphabet& alpha = f.alphabet();
  if (a.alphabet() != alpha) {
    throw std::invalid_argument("assignment alphabet does not match formula");
  }
  if (a.size() < f.num_vars()) throw std::invalid_argument("assignment too short");
  const std::size_t base = alpha.size();
  CostTable t(f.num_vertices(), base);
  std::vector<std::uint64_t> best;

  for (VertexId v = 0; v < f.num_vertices(); ++v) {
    const Vertex& vx = f.vertex(v);
    switch (vx.kind) {
      case GateKind::kVariable:
      case GateKind::kNegatedVariable: {
        Symbol cur = a[vx.var];
        if (vx.kind == GateKind::kNegatedVariable) cur = cur == 0 ? 1 : 0;
        for (std::size_t s = 0; s < base; ++s) {
          if (s == cur) {
            t.at(v, s) = 0;
          } else if (is_input_symbol(alpha, static_cast<Symbol>(s))) {
            t.at(v, s) = 1;
          }
        }
        break;
      }
      case GateKind::kConstant:
        t.at(v, vx.constant) = 0;
        break;
      case GateKind::kNot:
        t.at(v, 0) = t.at(vx.children[0], 1);
        t.at(v, 1) = t.at(vx.children[0], 0);
        break;
      case GateKind::kAnd:
      case GateKind::kOr: {
        // All children must reach `all`; one child reaching `any` suffices.
        const Symbol all = vx.kind == GateKind::kAnd ? 1 : 0;
        const Symbol any = 1 - all;
        std::uint64_t sum = 0, min = kUnreachable;
        for (VertexId c : vx.children) {
          sum = saturating_add(sum, t.at(c, all));
          min = std::min(min, t.at(c, any));
        }
        t.at(v, all) = sum;
        t.at(v, any) = min;
        break;
      }
      case GateKind::kTable:
      case GateKind::kMdnf:
      case GateKind::kMultiValued: {
        best.assign(base, kUnreachable);
        for_each_tuple(vx.arity(), base, [&](std::span<const Symbol> x) {
          std::uint64_t c = 0;
          for (std::size_t i = 0; i < x.size() && c < kUnreachable; ++i) {
            c = saturating_add(c, t.at(vx.children[i], x[i]));
          }
          Symbol out = gate_output(vx, x, alpha);
          best[out] = std::min(best[out], c);
        });
        for (std::size_t s = 0; s < base; ++s) t.at(v, s) = best[s];
        break;
      }
    }
  }
  return t;
}

std::uint64_t exact_cost(const Formula& f, const Assignment& a, SymbolSet targets) {
  check_targets(f, targets);
  return cost_table(f, a).best(f.root(), targets);
}

std::uint64_t exact_cost(const Formula& f, const Assignment& a, Symbol target) {
  return exact_cost(f, a, SymbolSet::single(target));
}

Farness farness(const Formula& f, const Assignment& a, SymbolSet targets) {
  return {exact_cost(f, a, targets), f.size()};
}

Farness farness(const Formula& f, const Assignment& a, Symbol target) {
  return farness(f, a, SymbolSet::single(target));
}

std::optional<Assignment> nearest_assignment(const Formula& f, const Assignment& a,
                                             SymbolSet targets) {
  check_targets(f, targets);
  const CostTable t = cost_table(f, a);
  const std::vector<Symbol> value = evaluate_all(f, a);
  const std::size_t base = f.alphabet().size();

  Symbol goal = 0;
  std::uint64_t goal_cost = kUnreachable;
  for (std::size_t s = 0; s < base; ++s) {
    if (targets.contains(static_cast<Symbol>(s)) && t.at(f.root(), s) < goal_cost) {
      goal = static_cast<Symbol>(s);
      goal_cost = t.at(f.root(), s);
    }
  }
  if (goal_cost >= kUnreachable) return std::nullopt;

  std::vector<Symbol> out(a.values().begin(), a.values().end());
  std::vector<std::pair<VertexId, Symbol>> stack{{f.root(), goal}};
  while (!stack.empty()) {
    auto [v, s] = stack.back();
    stack.pop_back();
    if (value[v] == s) continue;
    const Vertex& vx = f.vertex(v);
    switch (vx.kind) {
      case GateKind::kVariable:
        out[vx.var] = s;
        break;
      case GateKind::kNegatedVariable:
        out[vx.var] = s == 0 ? 1 : 0;
        break;
      case GateKind::kConstant:
        throw std::logic_error("traceback reached a constant");
      case GateKind::kNot:
        stack.push_back({vx.children[0], static_cast<Symbol>(s == 0 ? 1 : 0)});
        break;
      case GateKind::kAnd:
      case GateKind::kOr: {
        const Symbol all = vx.kind == GateKind::kAnd ? 1 : 0;
        if (s == all) {
          for (VertexId c : vx.children) stack.push_back({c, all});
        } else {
          VertexId arg = vx.children[0];
          for (VertexId c : vx.children) {
            if (t.at(c, s) < t.at(arg, s)) arg = c;
          }
          stack.push_back({arg, s});
        }
        break;
      }
      default: {
        std::vector<Symbol> arg;
        std::uint64_t arg_cost = kUnreachable;
        for_each_tuple(vx.arity(), base, [&](std::span<const Symbol> x) {
          if (gate_output(vx, x, f.alphabet()) != s) return;
          std::uint64_t c = 0;
          for (std::size_t i = 0; i < x.size(); ++i) {
            c = saturating_add(c, t.at(vx.children[i], x[i]));
          }
          if (c < arg_cost) {
            arg_cost = c;
            arg.assign(x.begin(), x.end());
          }
        });
        for (std::size_t i = 0; i < arg.size(); ++i) {
          stack.push_back({vx.children[i], arg[i]});
        }
      }
    }
  }
  return Assignment(a.alphabet(), std::move(out));
}

std::optional<std::uint64_t> brute_force_distance(const Formula& f,
                                                  const Assignment& a,
                                                  SymbolSet targets) {
  check_targets(f, targets);
  if (a.alphabet() != f.alphabet()) {
    throw std::invalid_argument("assignment alphabet does not match formula");
  }
  std::vector<VarIndex> vars;
  for (const Vertex& vx : f.vertices()) {
    if (vx.is_variable_leaf()) vars.push_back(vx.var);
  }
  if (vars.size() > kBruteForceLimit) {
    throw std::invalid_argument("brute force limited to " +
                                std::to_string(kBruteForceLimit) + " variables");
  }
  const Alphabet& alpha = f.alphabet();
  std::vector<Symbol> cand(a.values().begin(), a.values().end());
  std::optional<std::uint64_t> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
    std::uint64_t dist = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      cand[vars[i]] = (mask >> i & 1u) ? alpha.one() : alpha.zero();
      if (cand[vars[i]] != a[vars[i]]) ++dist;
    }
    if (best && dist >= *best) continue;
    if (targets.contains(evaluate(f, Assignment(alpha, cand)))) best = dist;
  }
  return best;
}

CriticalReport list_critical_vertices(const Formula& f, const Assignment& a,
                                      double eps, double local_factor) {
  if (!is_basic(f)) throw std::invalid_argument("critical vertices need a basic formula");
  CriticalReport report;
  report.eps = eps;
  const CostTable t = cost_table(f, a);
  if (t.at(f.root(), 1) == 0) return report;

  const double local = local_factor * eps;
  auto qualifies = [&](VertexId u) {
    const double threshold =
        local * std::pow(1.0 + local, static_cast<double>(f.depth(u) / 3));
    return Farness{t.at(u, 1), f.size(u)}.at_least(threshold);
  };
  if (!qualifies(f.root())) return report;

  std::vector<VertexId> stack{f.root()};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    report.important.push_back(v);
    const Vertex& vx = f.vertex(v);
    if (vx.is_variable_leaf()) {
      report.critical.push_back(v);
      continue;
    }
    if (vx.kind == GateKind::kOr) {
      if (qualifies(f.heaviest_child(v))) stack.push_back(f.heaviest_child(v));
      continue;
    }
    for (auto it = vx.children.rbegin(); it != vx.children.rend(); ++it) {
      if (qualifies(*it)) stack.push_back(*it);
    }
  }
  return report;
}

}  // namespace rof
