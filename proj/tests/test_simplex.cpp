#include "oracles.hpp"

#include "mincode/errors.hpp"
#include "mincode/lp.hpp"

#include <gtest/gtest.h>

#include <random>

namespace mincode {
namespace {

TEST(Simplex, SmallTextbookProblem) {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36.
  LinearProgram lp;
  const auto x = lp.add_variable("x"), y = lp.add_variable("y");
  lp.add_row("a", {{x, Rational(1)}}, Relation::less_equal, Rational(4));
  lp.add_row("b", {{y, Rational(2)}}, Relation::less_equal, Rational(12));
  lp.add_row("c", {{x, Rational(3)}, {y, Rational(2)}}, Relation::less_equal, Rational(18));
  lp.set_objective(Sense::maximize, {{x, Rational(3)}, {y, Rational(5)}});
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.objective, Rational(36));
  EXPECT_EQ(r.values[x], Rational(2));
  EXPECT_EQ(r.values[y], Rational(6));
}

TEST(Simplex, DetectsInfeasibleAndUnbounded) {
  LinearProgram infeasible;
  const auto x = infeasible.add_variable("x");
  infeasible.add_row("lo", {{x, Rational(1)}}, Relation::greater_equal, Rational(3));
  infeasible.add_row("hi", {{x, Rational(1)}}, Relation::less_equal, Rational(2));
  EXPECT_EQ(solve_lp(infeasible).status, LpStatus::infeasible);

  LinearProgram unbounded;
  const auto u = unbounded.add_variable("u"), v = unbounded.add_variable("v");
  unbounded.add_row("r", {{u, Rational(1)}, {v, Rational(-1)}}, Relation::less_equal, Rational(1));
  unbounded.set_objective(Sense::maximize, {{u, Rational(1)}});
  EXPECT_EQ(solve_lp(unbounded).status, LpStatus::unbounded);
}

TEST(Simplex, FractionalOptimumIsExact) {
  LinearProgram lp;
  const auto x = lp.add_variable("x"), y = lp.add_variable("y");
  lp.add_row("a", {{x, Rational(3)}, {y, Rational(1)}}, Relation::less_equal, Rational(2));
  lp.add_row("b", {{x, Rational(1)}, {y, Rational(3)}}, Relation::less_equal, Rational(2));
  lp.set_objective(Sense::maximize, {{x, Rational(1)}, {y, Rational(1)}});
  const auto r = solve_lp(lp);
  EXPECT_EQ(r.objective, Rational(1));
  EXPECT_EQ(r.values[x], Rational(1, 2));
}

TEST(Simplex, RedundantEqualitiesAndDegeneracy) {
  LinearProgram lp;
  const auto x = lp.add_variable("x"), y = lp.add_variable("y"), z = lp.add_variable("z");
  lp.add_row("e1", {{x, Rational(1)}, {y, Rational(1)}, {z, Rational(1)}}, Relation::equal, Rational(1));
  lp.add_row("e2", {{x, Rational(2)}, {y, Rational(2)}, {z, Rational(2)}}, Relation::equal, Rational(2));
  lp.add_row("d", {{x, Rational(1)}, {y, Rational(-1)}}, Relation::less_equal, Rational(0));
  lp.add_row("d2", {{x, Rational(1)}}, Relation::less_equal, Rational(0));
  lp.set_objective(Sense::minimize, {{z, Rational(1)}, {x, Rational(-1)}});
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.objective, Rational(0));
  EXPECT_TRUE(lp.violations(r.values).empty());
}

TEST(Simplex, MatchesVertexEnumerationOnRandomPrograms) {
  std::mt19937_64 rng(17);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto lp = oracle::random_lp(rng, 6, 5);
    const auto r = solve_lp(lp);
    const auto oracle = oracle::enumerate_vertices(lp);
    ASSERT_NE(r.status, LpStatus::unbounded) << "bounded by construction";
    ASSERT_EQ(r.status == LpStatus::optimal, oracle.feasible) << "trial " << trial;
    if (!oracle.feasible) continue;
    ++optimal;
    EXPECT_EQ(r.objective, oracle.objective) << "trial " << trial;
    EXPECT_TRUE(lp.violations(r.values).empty());
    EXPECT_EQ(lp.objective_value(r.values), r.objective);
  }
  EXPECT_GT(optimal, 100);
}

TEST(Simplex, RejectsIntegralityMarks) {
  LinearProgram lp;
  lp.add_variable("x", true);
  EXPECT_THROW(solve_lp(lp), std::invalid_argument);
}

TEST(BranchAndBound, KnapsackMatchesEnumeration) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> weight(1, 9), value(1, 12);
  for (int trial = 0; trial < 40; ++trial) {
    LinearProgram lp;
    std::vector<int> w, v;
    std::vector<LpTerm> cap, obj;
    for (int j = 0; j < 6; ++j) {
      w.push_back(weight(rng));
      v.push_back(value(rng));
      const auto x = lp.add_variable("x" + std::to_string(j), true);
      lp.add_row("ub" + std::to_string(j), {{x, Rational(1)}}, Relation::less_equal, Rational(2));
      cap.push_back({x, Rational(w.back())});
      obj.push_back({x, Rational(v.back())});
    }
    const int limit = 15;
    lp.add_row("cap", cap, Relation::less_equal, Rational(limit));
    lp.set_objective(Sense::maximize, obj);
    int best = 0;
    for (int code = 0; code < 729; ++code) {
      int c = code, used = 0, gain = 0;
      for (int j = 0; j < 6; ++j, c /= 3) {
        used += (c % 3) * w[j];
        gain += (c % 3) * v[j];
      }
      if (used <= limit) best = std::max(best, gain);
    }
    const auto r = solve_ilp(lp);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_EQ(r.objective, Rational(best)) << "trial " << trial;
    for (const auto& value : r.values) EXPECT_TRUE(is_integral(value));
  }
}

TEST(BranchAndBound, NodeLimitRaises) {
  LinearProgram lp;
  std::vector<LpTerm> row, obj;
  for (int j = 0; j < 12; ++j) {
    const auto x = lp.add_variable("x" + std::to_string(j), true);
    row.push_back({x, Rational(2)});
    obj.push_back({x, Rational(1)});
  }
  lp.add_row("odd", row, Relation::equal, Rational(11));
  lp.set_objective(Sense::maximize, obj);
  EXPECT_THROW(solve_ilp(lp, {.node_limit = 5}), ResourceLimitError);
}

TEST(LpFormat, WritesRationalCoefficients) {
  LinearProgram lp;
  const auto x = lp.add_variable("x"), y = lp.add_variable("y", true);
  lp.add_row("c1", {{x, Rational(1, 2)}, {y, Rational(-3)}}, Relation::greater_equal, Rational(2, 3));
  lp.set_objective(Sense::maximize, {{x, Rational(1)}});
  const auto text = write_lp_format(lp);
  EXPECT_NE(text.find("Maximize"), std::string::npos);
  EXPECT_NE(text.find("1/2 x"), std::string::npos);
  EXPECT_NE(text.find(">= 2/3"), std::string::npos);
  EXPECT_NE(text.find("General"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
}

}  // namespace
}  // namespace mincode
