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

#include <set>

#include "rof/children.h"
#include "rof/evaluate.h"
#include "rof/formula.h"
#include "rof/generators.h"
#include "rof/oracle.h"
#include "rof/random.h"
#include "rof/text_format.h"
#include "test_util.h"

namespace rof {
namespace {

using testing::and_of;
using testing::bool_assignment;
using testing::chi_square;
using testing::naive_eval;

TEST(ParseTest, AndOfTwoVariables) {
  Formula f = parse_formula("(and x0 x1)");
  EXPECT_EQ(f.vertex(f.root()).kind, GateKind::kAnd);
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.num_vertices(), 3u);
}

TEST(ParseTest, DuplicateVariableIsRejected) {
  EXPECT_THROW(parse_formula("(and x0 x0)"), FormulaError);
}

TEST(ParseTest, XorTable) {
  Formula f = parse_formula("(tbl2 0110 x0 x1)");
  const Vertex& r = f.vertex(f.root());
  EXPECT_EQ(r.kind, GateKind::kTable);
  EXPECT_EQ(r.arity(), 2u);
  EXPECT_EQ(r.table, (std::vector<Symbol>{0, 1, 1, 0}));
}

TEST(ParseTest, SyntaxErrorsCarryPosition) {
  try {
    parse_formula("(and x0\n  (or x1 y2))");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
  EXPECT_THROW(parse_formula("(and x0 x1"), ParseError);
  EXPECT_THROW(parse_formula("(tbl2 011 x0 x1)"), std::invalid_argument);
  EXPECT_THROW(parse_formula("(tbl2 0110 x0)"), std::invalid_argument);
  EXPECT_THROW(parse_formula("(mv2 bal4 x0 x1) (and x2 x3)"), ParseError);
}

TEST(ParseTest, CommentsAndExtensions) {
  Formula f = parse_formula("; header\n(or (not x1) ; trailing\n x0)");
  EXPECT_EQ(f.vertex(0).kind, GateKind::kNegatedVariable);
  Formula g = parse_formula("(mdnf3 0,1/2 x0 x1 x2)");
  EXPECT_EQ(g.vertex(g.root()).terms, (std::vector<TermMask>{0b011, 0b100}));
  Formula h = parse_formula("(mv2 bal5 x0 x1)");
  EXPECT_EQ(h.alphabet(), Alphabet::five_valued());
  // Table digits are symbol indices: 4^2 digits make a four-valued gate.
  Formula t = parse_formula("(tbl2 0000111122223333 x0 x1)");
  EXPECT_EQ(t.alphabet(), Alphabet::four_valued());
}

TEST(ParseTest, RoundTripRandomFormulas) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    RandomFormulaOptions opt;
    opt.num_vars = 1 + uniform_below(rng, 30);
    opt.max_arity = 2 + uniform_below(rng, 3);
    opt.mix = static_cast<GateMix>(uniform_below(rng, 3));
    opt.constant_rate = 0.05;
    Formula f = random_formula(rng, opt);
    // Generators may order sibling leaves differently from the parser, so
    // compare text, then require exact equality on the parsed form.
    Formula g = parse_formula(serialize(f));
    ASSERT_EQ(serialize(g), serialize(f));
    ASSERT_EQ(parse_formula(serialize(g)), g) << serialize(f);
  }
  Formula b = random_balancing_tree(rng, Variant::kFiveValuedMonotone, 9);
  EXPECT_EQ(parse_formula(serialize(b)), b);
}

TEST(AssignmentTest, ParseAndFormat) {
  Assignment a = parse_assignment("0 1P F", Alphabet::four_valued());
  EXPECT_EQ(a.size(), 4u);
  EXPECT_EQ(format_assignment(a), "01PF");
  EXPECT_THROW(parse_assignment("01x", Alphabet::boolean()), std::invalid_argument);
  EXPECT_EQ(format_assignment(parse_assignment("0LPH1", Alphabet::five_valued())), "0LPH1");
}

TEST(EvaluateTest, Examples) {
  Formula f = parse_formula("(and x0 x1)");
  EXPECT_EQ(evaluate(f, bool_assignment({1, 1})), 1);
  Formula g = parse_formula("(or (not x0) x1)");
  EXPECT_EQ(evaluate(g, bool_assignment({1, 0})), 0);
  Formula bal = parse_formula("(mv2 bal4 x0 x1)");
  const Alphabet& a4 = Alphabet::four_valued();
  EXPECT_EQ(evaluate(bal, parse_assignment("01", a4)), *a4.find_name("P"));
}

TEST(EvaluateTest, AlphabetMismatchAndShortAssignment) {
  Formula f = parse_formula("(and x0 x1)");
  EXPECT_THROW(evaluate(f, parse_assignment("01", Alphabet::four_valued())),
               std::invalid_argument);
  EXPECT_THROW(evaluate(f, bool_assignment({1})), std::invalid_argument);
}

TEST(EvaluateTest, AgreesWithNaiveEvaluatorExhaustively) {
  Rng rng(12);
  for (int i = 0; i < 60; ++i) {
    RandomFormulaOptions opt;
    opt.num_vars = 1 + uniform_below(rng, 12);
    opt.max_arity = 2 + uniform_below(rng, 3);
    opt.mix = static_cast<GateMix>(i % 3);
    opt.constant_rate = 0.1;
    Formula f = random_formula(rng, opt);
    testing::for_each_assignment(f.alphabet(), f.num_vars(), [&](const Assignment& a) {
      ASSERT_EQ(evaluate(f, a), naive_eval(f, a)) << serialize(f);
    });
  }
}

TEST(EvaluateTest, MultiValuedAgreesWithNaiveEvaluator) {
  Rng rng(13);
  for (Variant v : {Variant::kFourValued, Variant::kFiveValuedMonotone}) {
    for (int i = 0; i < 50; ++i) {
      Formula f = random_balancing_tree(rng, v, 1 + uniform_below(rng, 10));
      testing::for_each_assignment(f.alphabet(), f.num_vars(), [&](const Assignment& a) {
        ASSERT_EQ(evaluate(f, a), naive_eval(f, a));
      });
    }
  }
}

TEST(StatsTest, Examples) {
  Formula single = parse_formula("x0");
  EXPECT_EQ(single.size(), 1u);
  EXPECT_EQ(single.depth(single.root()), 0u);

  Formula tree = parse_formula(
      "(and (and (and x0 x1) (and x2 x3)) (and (and x4 x5) (and x6 x7)))");
  EXPECT_EQ(tree.size(), 8u);
  for (VertexId v = 0; v < tree.num_vertices(); ++v) {
    if (tree.vertex(v).is_leaf()) EXPECT_EQ(tree.depth(v), 3u);
  }
  EXPECT_EQ(tree.stats().formula_depth, 3u);

  Formula f = parse_formula("(and x0 (or x1 x2))");
  EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(f.size(f.vertex(f.root()).children[1]), 2u);
}

TEST(StatsTest, SizesLeavesAndChildSums) {
  Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    RandomFormulaOptions opt;
    opt.num_vars = 1 + uniform_below(rng, 40);
    opt.constant_rate = 0.1;
    Formula f = random_formula(rng, opt);
    std::uint64_t leaves = 0;
    for (const Vertex& v : f.vertices()) leaves += v.is_variable_leaf();
    ASSERT_EQ(leaves, f.size());
    for (VertexId v = 0; v < f.num_vertices(); ++v) {
      const Vertex& x = f.vertex(v);
      std::uint64_t sum = x.is_variable_leaf() ? 1 : 0;
      for (VertexId c : x.children) {
        sum += f.size(c);
        ASSERT_EQ(f.parent(c), v);
        ASSERT_EQ(f.depth(c), f.depth(v) + 1);
      }
      ASSERT_EQ(f.size(v), sum);
      ASSERT_EQ(f.leaves(v).size(), f.size(v));
      for (VertexId leaf : f.leaves(v)) ASSERT_TRUE(f.vertex(leaf).is_variable_leaf());
      if (!x.is_leaf()) {
        const auto sums = f.child_sums(v);
        ASSERT_EQ(sums.size(), x.arity());
        ASSERT_EQ(sums.back(), f.size(v));
        const VertexId heavy = f.heaviest_child(v);
        for (VertexId c : x.children) {
          ASSERT_TRUE(f.size(c) < f.size(heavy) ||
                      (f.size(c) == f.size(heavy) && c >= heavy));
        }
      }
    }
  }
}

TEST(FormulaTest, ValidationRejectsBadShapes) {
  const Alphabet& b = Alphabet::boolean();
  // Child after parent.
  EXPECT_THROW(Formula(b, {Vertex::conjunction({1, 2}), Vertex::variable(0),
                           Vertex::variable(1)}),
               FormulaError);
  // Shared child.
  EXPECT_THROW(Formula(b, {Vertex::variable(0), Vertex::conjunction({0, 0})}),
               FormulaError);
  // Unreachable vertex.
  EXPECT_THROW(Formula(b, {Vertex::variable(0), Vertex::variable(1), Vertex::negation(1)}),
               FormulaError);
  // Multi-valued gate in a Boolean formula.
  EXPECT_THROW(Formula(b, {Vertex::variable(0), Vertex::variable(1),
                           Vertex::multi_valued(NamedGate::kBalancing4, {0, 1})}),
               FormulaError);
  // Comparable mdnf terms.
  EXPECT_THROW(Formula(b, {Vertex::variable(0), Vertex::variable(1),
                           Vertex::mdnf({0b01, 0b11}, {0, 1})}),
               FormulaError);
  // Variable index beyond num_vars.
  EXPECT_THROW(Formula(b, {Vertex::variable(5)}, 3), FormulaError);
}

TEST(ChildrenTest, ThresholdExample) {
  // Children of sizes 999000, 900, 90, 10 under one And; S = 10^6.
  FormulaBuilder b;
  std::vector<VertexId> kids;
  VarIndex next = 0;
  for (std::uint64_t size : {999000u, 900u, 90u, 10u}) {
    std::vector<VertexId> leaves;
    for (std::uint64_t j = 0; j < size; ++j) leaves.push_back(b.add(Vertex::variable(next++)));
    kids.push_back(b.add(Vertex::disjunction(std::move(leaves))));
  }
  b.add(Vertex::conjunction(kids));
  Formula f = std::move(b).build();
  ChildClasses c = classify_children(f, f.root(), 0.5, 2);
  EXPECT_EQ(c.ell, 2u);
  EXPECT_EQ(c.heavy, std::vector<VertexId>{kids[0]});
  EXPECT_EQ(c.light, (std::vector<VertexId>{kids[1], kids[2], kids[3]}));
}

TEST(ChildrenTest, FallbackMakesEveryChildHeavy) {
  Formula f = parse_formula(
      "(and (or x0 x1 x2 x3 x4 x5 x6 x7) (or x8 x9 x10 x11 x12 x13 x14 x15))");
  ChildClasses c = classify_children(f, f.root(), 0.5, 2);
  EXPECT_EQ(c.ell, 3u);
  EXPECT_EQ(c.heavy.size(), 2u);
  EXPECT_TRUE(c.light.empty());
  EXPECT_THROW(classify_children(f, 0, 0.5, 2), FormulaError);
}

TEST(ChildrenTest, TiesGoToSmallerId) {
  Formula f = parse_formula("(or x0 x1 x2)");
  ChildClasses c = classify_children(f, f.root(), 1.0, 2);
  EXPECT_EQ(c.heavy, (std::vector<VertexId>{0, 1, 2}));
}

TEST(ChildrenTest, WeightedSampleSingleChild) {
  Formula f = parse_formula("(not (and x0 x1))");
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(weighted_child_sample(f, f.root(), rng), f.vertex(f.root()).children[0]);
  }
}

TEST(ChildrenTest, WeightedSampleMatchesSizes) {
  struct Case {
    const char* text;
    std::vector<double> probs;
  };
  // Chi-square critical values at p = 0.001 for 1 and 3 degrees of freedom.
  const std::vector<std::pair<Case, double>> cases = {
      {{"(or (and x0 x1 x2) x3)", {0.75, 0.25}}, 10.828},
      {{"(or x0 x1 x2 x3)", {0.25, 0.25, 0.25, 0.25}}, 16.266},
  };
  Rng rng(2);
  for (const auto& [c, critical] : cases) {
    Formula f = parse_formula(c.text);
    const auto& kids = f.vertex(f.root()).children;
    std::vector<std::uint64_t> counts(kids.size());
    for (int i = 0; i < 100000; ++i) {
      const VertexId w = weighted_child_sample(f, f.root(), rng);
      counts[std::find(kids.begin(), kids.end(), w) - kids.begin()]++;
    }
    EXPECT_LT(chi_square(counts, c.probs), critical) << c.text;
  }
}

TEST(OracleTest, CountsEveryQuery) {
  Assignment a = bool_assignment({0, 1, 1});
  CountingOracle o = make_counting_oracle(a);
  EXPECT_EQ(o.query_count(), 0u);
  EXPECT_EQ(o.query(1), 1);
  EXPECT_EQ(o.query(1), 1);
  EXPECT_EQ(o.query_count(), 2u);
  EXPECT_THROW(o.query(3), std::out_of_range);
}

TEST(RandomTest, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(7, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

}  // namespace
}  // namespace rof
