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

#include <bit>
#include <functional>
#include <set>

#include "rof/evaluate.h"
#include "rof/generators.h"
#include "rof/normalize.h"
#include "rof/text_format.h"
#include "test_util.h"

namespace rof {
namespace {

std::vector<Symbol> table_of(std::size_t arity, const std::function<bool(std::size_t)>& fn) {
  std::vector<Symbol> t(std::size_t{1} << arity);
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = fn(x) ? 1 : 0;
  return t;
}

const auto kMajority3 = [](std::size_t x) { return std::popcount(x) >= 2; };

std::set<VarIndex> variables(const Formula& f) {
  std::set<VarIndex> vars;
  for (const Vertex& v : f.vertices()) {
    if (v.is_variable_leaf()) vars.insert(v.var);
  }
  return vars;
}

TEST(ForcefulTest, Examples) {
  const auto and2 = table_of(2, [](std::size_t x) { return x == 3; });
  EXPECT_EQ(find_forceful(and2, 2),
            (std::vector<ForcefulFinding>{{0, 0, 0}, {1, 0, 0}}));
  const auto xor2 = table_of(2, [](std::size_t x) { return std::popcount(x) == 1; });
  EXPECT_TRUE(find_forceful(xor2, 2).empty());
  const auto proj = table_of(2, [](std::size_t x) { return (x & 1) != 0; });
  EXPECT_EQ(find_forceful(proj, 2),
            (std::vector<ForcefulFinding>{{0, 0, 0}, {0, 1, 1}}));
}

TEST(ForcefulTest, NonBooleanGateIsRejected) {
  Formula f = parse_formula("(mv2 bal4 x0 x1)");
  EXPECT_THROW(find_forceful(f.vertex(f.root())), std::invalid_argument);
}

TEST(MonotoneTest, Examples) {
  EXPECT_TRUE(is_monotone_table(table_of(2, [](std::size_t x) { return x == 3; }), 2));
  EXPECT_TRUE(is_monotone_table(table_of(2, [](std::size_t x) { return x != 0; }), 2));
  EXPECT_FALSE(is_monotone_table(
      table_of(2, [](std::size_t x) { return std::popcount(x) == 1; }), 2));
  EXPECT_TRUE(is_monotone_table(table_of(3, kMajority3), 3));
}

TEST(MdnfTest, Examples) {
  EXPECT_EQ(compute_mdnf(table_of(2, [](std::size_t x) { return x != 0; }), 2),
            (std::vector<TermMask>{0b01, 0b10}));
  EXPECT_EQ(compute_mdnf(table_of(2, [](std::size_t x) { return x == 3; }), 2),
            std::vector<TermMask>{0b11});
  EXPECT_EQ(compute_mdnf(table_of(3, kMajority3), 3),
            (std::vector<TermMask>{0b011, 0b101, 0b110}));
  EXPECT_THROW(compute_mdnf(table_of(2, [](std::size_t x) { return x == 1; }), 2),
               NormalizeError);
}

// Monotone functions of n inputs as tables: f = (f0, f1) with f0 <= f1
// pointwise, where f_b is the restriction x_{n-1} = b.
std::vector<std::vector<Symbol>> monotone_functions(std::size_t n) {
  if (n == 0) return {{0}, {1}};
  const auto smaller = monotone_functions(n - 1);
  std::vector<std::vector<Symbol>> out;
  for (const auto& lo : smaller) {
    for (const auto& hi : smaller) {
      bool below = true;
      for (std::size_t i = 0; i < lo.size() && below; ++i) below = lo[i] <= hi[i];
      if (!below) continue;
      std::vector<Symbol> t = lo;
      t.insert(t.end(), hi.begin(), hi.end());
      out.push_back(std::move(t));
    }
  }
  return out;
}

TEST(MdnfTest, ReconstructsEveryMonotoneFunctionUpToArityFive) {
  // Dedekind numbers 3, 6, 20, 168, 7581.
  const std::size_t expected[] = {0, 3, 6, 20, 168, 7581};
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto all = monotone_functions(n);
    ASSERT_EQ(all.size(), expected[n]);
    for (const auto& t : all) {
      ASSERT_TRUE(is_monotone_table(t, n));
      const auto terms = compute_mdnf(t, n);
      for (std::size_t x = 0; x < t.size(); ++x) {
        bool dnf = false;
        for (TermMask m : terms) dnf = dnf || (x & m) == m;
        ASSERT_EQ(dnf, t[x] == 1);
      }
      for (TermMask a : terms) {
        for (TermMask b : terms) {
          if (a != b) ASSERT_NE(a & b, a);
        }
      }
    }
  }
}

TEST(NormalizeTest, KxBasicExamples) {
  EXPECT_EQ(serialize(to_kx_basic(parse_formula("(and x0 (and x1 x2))"), 2)),
            "(and x0 x1 x2)");
  EXPECT_EQ(serialize(to_kx_basic(parse_formula("(not (or x0 x1))"), 2)),
            "(and (not x0) (not x1))");
  EXPECT_EQ(serialize(to_kx_basic(parse_formula("(tbl2 0111 x0 x1)"), 2)), "(or x0 x1)");
}

TEST(NormalizeTest, KBasicExamples) {
  EXPECT_EQ(serialize(to_k_basic(parse_formula("(and x0 (or x1 x2))"), 2)),
            "(and x0 (or x1 x2))");
  EXPECT_EQ(serialize(to_k_basic(parse_formula("(tbl3 00010111 x0 x1 x2)"), 3)),
            "(mdnf3 0,1/0,2/1,2 x0 x1 x2)");
  EXPECT_EQ(serialize(to_k_basic(parse_formula("(or x0 (or x1 x2))"), 2)),
            "(or x0 x1 x2)");
}

TEST(NormalizeTest, ProjectionsAndConstants) {
  // Table that copies its first input, and one that negates it.
  EXPECT_EQ(serialize(to_kx_basic(parse_formula("(and x2 (tbl2 0101 x0 x1))"), 2)),
            "(and x2 x0)");
  EXPECT_EQ(serialize(to_kx_basic(parse_formula("(and x2 (tbl2 1010 x0 x1))"), 2)),
            "(and x2 (not x0))");
  NormalizeResult r = normalize(parse_formula("(or x0 1)"), 2, NormalForm::kKxBasic);
  ASSERT_FALSE(r.formula);
  EXPECT_EQ(r.constant, true);
  EXPECT_THROW(to_kx_basic(parse_formula("(and x0 0)"), 2), NormalizeError);
  EXPECT_EQ(serialize(to_kx_basic(parse_formula("(and x0 (or x1 0))"), 2)), "(and x0 x1)");
}

TEST(NormalizeTest, InputErrors) {
  EXPECT_THROW(to_kx_basic(parse_formula("(tbl3 01101001 x0 x1 x2)"), 2), NormalizeError);
  EXPECT_THROW(to_k_basic(parse_formula("(tbl2 0110 x0 x1)"), 2), NormalizeError);
  EXPECT_THROW(to_k_basic(parse_formula("(and (not x0) x1)"), 2), NormalizeError);
  EXPECT_THROW(to_kx_basic(parse_formula("(mv2 bal4 x0 x1)"), 2), NormalizeError);
  // And/Or are exempt from the arity bound.
  EXPECT_NO_THROW(to_kx_basic(parse_formula("(and x0 x1 x2 x3 x4)"), 2));
}

TEST(NormalizeTest, PredicatesRejectNonNormalFormulas) {
  EXPECT_FALSE(is_kx_basic(parse_formula("(and x0 (and x1 x2))"), 2));
  EXPECT_FALSE(is_kx_basic(parse_formula("(not (or x0 x1))"), 2));
  EXPECT_FALSE(is_kx_basic(parse_formula("(tbl2 0111 x0 x1)"), 2));
  EXPECT_FALSE(is_kx_basic(parse_formula("(tbl3 01101001 x0 x1 x2)"), 2));
  EXPECT_TRUE(is_kx_basic(parse_formula("(tbl3 01101001 x0 x1 x2)"), 3));
  EXPECT_TRUE(is_kx_basic(parse_formula("(and (not x0) (tbl2 0110 x1 x2))"), 2));
  EXPECT_FALSE(is_k_basic(parse_formula("(and (not x0) x1)"), 2));
  EXPECT_TRUE(is_k_basic(parse_formula("(and x0 (mdnf3 0,1/0,2/1,2 x1 x2 x3))"), 3));
  EXPECT_FALSE(is_basic(parse_formula("(and x0 (mdnf3 0,1/0,2/1,2 x1 x2 x3))")));
  EXPECT_TRUE(is_basic(parse_formula("(and x0 (or x1 x2 x3))")));
}

TEST(NormalizeTest, EquivalencePredicateAndVariables) {
  Rng rng(21);
  int constants = 0;
  for (int i = 0; i < 500; ++i) {
    RandomFormulaOptions opt;
    opt.num_vars = 1 + uniform_below(rng, 12);
    opt.max_arity = 2 + uniform_below(rng, 3);
    opt.constant_rate = 0.1;
    opt.relevant_tables = true;
    Formula f = random_formula(rng, opt);
    NormalizeResult r = normalize(f, opt.max_arity, NormalForm::kKxBasic);
    if (!r.formula) {
      ++constants;
      testing::for_each_assignment(f.alphabet(), f.num_vars(), [&](const Assignment& a) {
        ASSERT_EQ(evaluate(f, a), *r.constant ? 1 : 0);
      });
      continue;
    }
    const Formula& g = *r.formula;
    ASSERT_TRUE(is_kx_basic(g, opt.max_arity)) << serialize(f) << " -> " << serialize(g);
    ASSERT_EQ(g.num_vars(), f.num_vars());
    testing::for_each_assignment(f.alphabet(), f.num_vars(), [&](const Assignment& a) {
      ASSERT_EQ(evaluate(f, a), evaluate(g, a)) << serialize(f) << " -> " << serialize(g);
    });
    // Without constants or dummy table inputs every variable survives.
    bool has_constant = false;
    for (const Vertex& v : f.vertices()) has_constant |= v.kind == GateKind::kConstant;
    if (!has_constant) ASSERT_EQ(variables(f), variables(g)) << serialize(f);
  }
  EXPECT_GT(constants, 0);
}

TEST(NormalizeTest, KBasicOnMonotoneFormulas) {
  Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    RandomFormulaOptions opt;
    opt.num_vars = 1 + uniform_below(rng, 12);
    opt.max_arity = 2 + uniform_below(rng, 3);
    opt.mix = GateMix::kMonotone;
    Formula f = random_formula(rng, opt);
    NormalizeResult r = normalize(f, opt.max_arity, NormalForm::kKBasic);
    if (!r.formula) continue;
    const Formula& g = *r.formula;
    ASSERT_TRUE(is_k_basic(g, opt.max_arity)) << serialize(g);
    for (const Vertex& v : g.vertices()) ASSERT_NE(v.kind, GateKind::kTable);
    testing::for_each_assignment(f.alphabet(), f.num_vars(), [&](const Assignment& a) {
      ASSERT_EQ(evaluate(f, a), evaluate(g, a));
    });
  }
}

TEST(NormalizeTest, Idempotent) {
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    RandomFormulaOptions opt;
    opt.num_vars = 1 + uniform_below(rng, 20);
    opt.max_arity = 2 + uniform_below(rng, 3);
    NormalizeResult r = normalize(random_formula(rng, opt), opt.max_arity,
                                  NormalForm::kKxBasic);
    if (!r.formula) continue;
    ASSERT_EQ(to_kx_basic(*r.formula, opt.max_arity), *r.formula) << serialize(*r.formula);
  }
}

}  // namespace
}  // namespace rof
