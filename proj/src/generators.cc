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

#include "rof/generators.h"

#include <algorithm>
#include <stdexcept>

#include "rof/distance.h"
#include "rof/normalize.h"

namespace rof {
namespace {

void shuffle(std::vector<VarIndex>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
  }
}

// Splits [0, n) into `parts` nonempty consecutive ranges; returns the ends.
std::vector<std::size_t> random_cuts(std::size_t n, std::size_t parts, Rng& rng) {
  std::vector<std::size_t> points(n - 1);
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = i + 1;
  for (std::size_t i = 0; i + 1 < parts; ++i) {
    std::swap(points[i], points[i + uniform_below(rng, points.size() - i)]);
  }
  std::vector<std::size_t> ends(points.begin(), points.begin() + (parts - 1));
  std::sort(ends.begin(), ends.end());
  ends.push_back(n);
  return ends;
}

bool is_constant(const std::vector<Symbol>& table) {
  return std::all_of(table.begin(), table.end(),
                     [&](Symbol s) { return s == table[0]; });
}

// True when flipping input i changes the output for some row, for every i.
bool uses_every_input(const std::vector<Symbol>& table, std::size_t arity) {
  for (std::size_t i = 0; i < arity; ++i) {
    bool used = false;
    for (std::size_t x = 0; x < table.size() && !used; ++x) {
      used = table[x] != table[x ^ (std::size_t{1} << i)];
    }
    if (!used) return false;
  }
  return true;
}

class TreeMaker {
 public:
  TreeMaker(Rng& rng, const RandomFormulaOptions& opt) : rng_(rng), opt_(opt) {}

  VertexId make(std::span<const VarIndex> vars, FormulaBuilder& b) {
    const bool mixed = opt_.mix == GateMix::kMixed;
    if (vars.size() == 1) {
      if (mixed && coin(rng_, opt_.negation_rate)) {
        return b.add(Vertex::negated_variable(vars[0]));
      }
      return b.add(Vertex::variable(vars[0]));
    }
    const std::size_t top = std::min(opt_.max_arity, vars.size());
    std::size_t arity = 2 + uniform_below(rng_, top - 1);
    std::vector<VertexId> children;
    std::size_t start = 0;
    for (std::size_t end : random_cuts(vars.size(), arity, rng_)) {
      children.push_back(make(vars.subspan(start, end - start), b));
      start = end;
    }
    if (opt_.constant_rate > 0 && arity < opt_.max_arity &&
        coin(rng_, opt_.constant_rate)) {
      const auto pos = uniform_below(rng_, children.size() + 1);
      children.insert(children.begin() + static_cast<std::ptrdiff_t>(pos),
                      b.add(Vertex::constant_leaf(coin(rng_, 0.5) ? 1 : 0)));
      ++arity;
    }

    VertexId id;
    if (opt_.mix != GateMix::kAndOr && coin(rng_, opt_.table_rate)) {
      const bool monotone = opt_.mix == GateMix::kMonotone;
      auto table = random_table(rng_, arity, monotone);
      while (opt_.relevant_tables && !uses_every_input(table, arity)) {
        table = random_table(rng_, arity, monotone);
      }
      if (monotone && !is_constant(table) && coin(rng_, 0.5)) {
        id = b.add(Vertex::mdnf(compute_mdnf(table, arity), std::move(children)));
      } else {
        id = b.add(Vertex::truth_table(std::move(table), std::move(children)));
      }
    } else if (coin(rng_, opt_.and_rate)) {
      id = b.add(Vertex::conjunction(std::move(children)));
    } else {
      id = b.add(Vertex::disjunction(std::move(children)));
    }
    if (mixed && coin(rng_, opt_.negation_rate / 2)) id = b.add(Vertex::negation(id));
    return id;
  }

 private:
  Rng& rng_;
  const RandomFormulaOptions& opt_;
};

VertexId balancing_tree(std::span<const VarIndex> vars, NamedGate g, Rng& rng,
                        FormulaBuilder& b) {
  if (vars.size() == 1) return b.add(Vertex::variable(vars[0]));
  const std::size_t cut = 1 + uniform_below(rng, vars.size() - 1);
  const VertexId left = balancing_tree(vars.subspan(0, cut), g, rng, b);
  const VertexId right = balancing_tree(vars.subspan(cut), g, rng, b);
  return b.add(Vertex::multi_valued(g, {left, right}));
}

std::vector<VarIndex> leaf_vars(const Formula& f) {
  std::vector<VarIndex> vars;
  for (const Vertex& vx : f.vertices()) {
    if (vx.is_variable_leaf()) vars.push_back(vx.var);
  }
  return vars;
}

}  // namespace

std::vector<Symbol> random_table(Rng& rng, std::size_t arity, bool monotone) {
  std::vector<Symbol> table(std::size_t{1} << arity, 0);
  if (!monotone) {
    for (Symbol& s : table) s = static_cast<Symbol>(uniform_below(rng, 2));
    return table;
  }
  const std::size_t terms = 1 + uniform_below(rng, arity + 1);
  for (std::size_t t = 0; t < terms; ++t) {
    const std::size_t mask = 1 + uniform_below(rng, table.size() - 1);
    for (std::size_t x = 0; x < table.size(); ++x) {
      if ((x & mask) == mask) table[x] = 1;
    }
  }
  return table;
}

Formula random_formula(Rng& rng, const RandomFormulaOptions& opt) {
  if (opt.num_vars == 0) throw std::invalid_argument("need at least one variable");
  if (opt.max_arity < 2 || opt.max_arity > kMaxTableArity) {
    throw std::invalid_argument("max_arity must be in [2, 16]");
  }
  std::vector<VarIndex> vars(opt.num_vars);
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = static_cast<VarIndex>(i);
  shuffle(vars, rng);
  FormulaBuilder b(Alphabet::boolean());
  TreeMaker(rng, opt).make(vars, b);
  return std::move(b).build(opt.num_vars);
}

Formula random_block_formula(Rng& rng, const RandomFormulaOptions& opt,
                             std::size_t min_block, std::size_t max_block) {
  if (opt.num_vars < min_block || min_block == 0 || max_block < min_block) {
    throw std::invalid_argument("bad block sizes");
  }
  std::vector<VarIndex> vars(opt.num_vars);
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = static_cast<VarIndex>(i);
  shuffle(vars, rng);
  FormulaBuilder b(Alphabet::boolean());
  TreeMaker maker(rng, opt);
  std::vector<VertexId> blocks;
  std::span<const VarIndex> rest(vars);
  while (!rest.empty()) {
    std::size_t n = min_block + uniform_below(rng, max_block - min_block + 1);
    // Never leave a tail shorter than min_block.
    if (rest.size() - std::min(n, rest.size()) < min_block) n = rest.size();
    blocks.push_back(maker.make(rest.first(n), b));
    rest = rest.subspan(n);
  }
  if (blocks.size() > 1) b.add(Vertex::conjunction(std::move(blocks)));
  return std::move(b).build(opt.num_vars);
}

Formula random_balancing_tree(Rng& rng, Variant v, std::size_t num_vars) {
  if (num_vars == 0) throw std::invalid_argument("need at least one variable");
  std::vector<VarIndex> vars(num_vars);
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = static_cast<VarIndex>(i);
  shuffle(vars, rng);
  FormulaBuilder b(variant_alphabet(v));
  balancing_tree(vars, variant_gate(v), rng, b);
  return std::move(b).build(num_vars);
}

Assignment random_assignment(Rng& rng, const Alphabet& alphabet,
                             std::size_t num_vars, double p_one) {
  std::vector<Symbol> values(num_vars);
  for (Symbol& s : values) s = coin(rng, p_one) ? alphabet.one() : alphabet.zero();
  return Assignment(alphabet, std::move(values));
}

Formula balanced_and_or(std::size_t size) {
  if (size < 16 || size % 8 != 0) {
    throw std::invalid_argument("balanced-and-or size must be a multiple of 8, >= 16");
  }
  FormulaBuilder b(Alphabet::boolean());
  std::vector<VertexId> ors;
  VarIndex next = 0;
  for (std::size_t i = 0; i < size / 8; ++i) {
    std::vector<VertexId> ands;
    for (int j = 0; j < 2; ++j) {
      std::vector<VertexId> leaves;
      for (int l = 0; l < 4; ++l) leaves.push_back(b.add(Vertex::variable(next++)));
      ands.push_back(b.add(Vertex::conjunction(std::move(leaves))));
    }
    ors.push_back(b.add(Vertex::disjunction(std::move(ands))));
  }
  b.add(Vertex::conjunction(std::move(ors)));
  return std::move(b).build(size);
}

Formula family_formula(const std::string& family, std::size_t size,
                       std::size_t k, Rng& rng) {
  if (family == "balanced-and-or") return balanced_and_or(size);
  RandomFormulaOptions opt;
  opt.num_vars = size;
  // Or-heavy random trees are almost never far from satisfying.
  opt.and_rate = 0.8;
  if (family == "random-basic") {
    opt.mix = GateMix::kAndOr;
    opt.max_arity = 4;
    return to_k_basic(random_formula(rng, opt), 2);
  }
  if (family == "random-kx-basic") {
    opt.mix = GateMix::kMixed;
    opt.max_arity = std::max<std::size_t>(2, k);
    opt.relevant_tables = true;
    return to_kx_basic(random_block_formula(rng, opt, 2, 6), k);
  }
  throw std::invalid_argument("unknown family '" + family + "'");
}

std::optional<Assignment> make_satisfying_assignment(const Formula& f, Symbol b,
                                                     Rng& rng) {
  const Assignment start = random_assignment(rng, f.alphabet(), f.num_vars());
  return nearest_assignment(f, start, SymbolSet::single(b));
}

std::optional<Assignment> make_far_assignment(const Formula& f, double eps,
                                              Symbol b, Rng& rng,
                                              std::size_t max_tries) {
  auto base = make_satisfying_assignment(f, b, rng);
  if (!base) return std::nullopt;
  const auto vars = leaf_vars(f);
  const Alphabet& alpha = f.alphabet();
  // Tries cycle through three perturbations (flip, set to 0, set to 1), each
  // at rates 1/20 .. 20/20. Biased ones reach far points of monotone formulas.
  std::vector<Symbol> best(base->values().begin(), base->values().end());
  std::uint64_t best_cost = 0;
  for (std::size_t t = 0; t < max_tries; ++t) {
    const double rate = static_cast<double>(t / 3 % 20 + 1) / 20.0;
    const int mode = static_cast<int>(t % 3);
    std::vector<Symbol> values(base->values().begin(), base->values().end());
    for (VarIndex v : vars) {
      if (!coin(rng, rate)) continue;
      if (mode == 0) {
        values[v] = values[v] == alpha.zero() ? alpha.one() : alpha.zero();
      } else {
        values[v] = mode == 1 ? alpha.zero() : alpha.one();
      }
    }
    Assignment cand(alpha, values);
    const Farness d = farness(f, cand, b);
    if (d.at_least(eps)) return cand;
    if (d.cost > best_cost) {
      best_cost = d.cost;
      best = std::move(values);
    }
  }
  // Hill climbing from the best candidate: keep single flips that do not
  // lower the distance.
  const std::size_t steps = 8 * max_tries + 16 * vars.size();
  for (std::size_t t = 0; t < steps && !vars.empty(); ++t) {
    const VarIndex v = vars[uniform_below(rng, vars.size())];
    const Symbol old = best[v];
    best[v] = old == alpha.zero() ? alpha.one() : alpha.zero();
    const Farness d = farness(f, Assignment(alpha, best), b);
    if (d.at_least(eps)) return Assignment(alpha, std::move(best));
    if (d.cost >= best_cost) {
      best_cost = d.cost;
    } else {
      best[v] = old;
    }
  }
  return std::nullopt;
}

}  // namespace rof
