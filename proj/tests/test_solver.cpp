#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace mimdp;
using namespace testutil;

namespace {

DecompositionTree linear(std::size_t n) { return caterpillar_from_order(identity_order(n)); }

Problem with_objective(Problem p, Objective o) {
  p.objective = o;
  return p;
}

}  // namespace

TEST(RootDecomposition, Shapes) {
  RootedTree two = root_decomposition(linear(2), 2);
  EXPECT_EQ(two.nodes[two.root].children.size(), 2u);
  for (int c : two.nodes[two.root].children) EXPECT_GE(two.nodes[c].vertex, 0);

  RootedTree four = root_decomposition(linear(4), 4);
  std::size_t internal = 0;
  for (const auto& node : four.nodes)
    if (!node.children.empty()) ++internal;
  EXPECT_EQ(internal, 3u);
  EXPECT_EQ(four.nodes[four.root].inside, VertexSet::full(4));
}

TEST(RootDecomposition, LeavesPreserved) {
  std::mt19937_64 rng(41);
  for (std::size_t n = 2; n < 25; ++n) {
    DecompositionTree dec = random_decomposition(n, rng);
    RootedTree t = root_decomposition(dec, n);
    std::vector<int> seen(n, 0);
    for (const auto& node : t.nodes) {
      EXPECT_LE(node.children.size(), 2u);
      if (node.vertex >= 0) {
        EXPECT_TRUE(node.children.empty());
        ++seen[node.vertex];
      }
    }
    for (int s : seen) EXPECT_EQ(s, 1);
    EXPECT_EQ(t.post_order().back(), t.root);
  }
}

TEST(SolveSigmaRho, Examples) {
  Solution p3 = solve_sigma_rho(path(3), linear(3), catalog_lookup("independent-set"));
  ASSERT_TRUE(p3.feasible);
  EXPECT_EQ(*p3.value, 2u);
  EXPECT_EQ(*p3.witness, set_of(3, {0, 2}));

  Solution c5 = solve_sigma_rho(cycle(5), linear(5), catalog_lookup("dominating-set"));
  ASSERT_TRUE(c5.feasible);
  EXPECT_EQ(*c5.value, 2u);

  EXPECT_FALSE(solve_sigma_rho(cycle(5), linear(5), catalog_lookup("perfect-code")).feasible);
  Solution c6 = solve_sigma_rho(cycle(6), linear(6), catalog_lookup("perfect-code"));
  ASSERT_TRUE(c6.feasible);
  EXPECT_FALSE(c6.value.has_value());
  EXPECT_TRUE(verify_witness(cycle(6), catalog_lookup("perfect-code"), 1, *c6.witness));
}

TEST(SolveSigmaRho, SingleVertex) {
  Solution s = solve_sigma_rho(Graph(1), caterpillar_from_order({0}), catalog_lookup("dominating-set"));
  ASSERT_TRUE(s.feasible);
  EXPECT_EQ(*s.value, 1u);
  Solution t = solve_sigma_rho(Graph(1), caterpillar_from_order({0}), catalog_lookup("total-dominating-set"));
  EXPECT_FALSE(t.feasible);
}

TEST(SolveDistanceR, Examples) {
  Solution is2 = solve_distance_r(path(5), linear(5), catalog_lookup("independent-set"), 2);
  ASSERT_TRUE(is2.feasible);
  EXPECT_EQ(*is2.value, 2u);
  Solution ds2 = solve_distance_r(path(5), linear(5), catalog_lookup("dominating-set"), 2);
  ASSERT_TRUE(ds2.feasible);
  EXPECT_EQ(*ds2.value, 1u);
  EXPECT_EQ(*ds2.witness, set_of(5, {2}));
}

TEST(SolveDistanceR, DistanceOneIsIdentity) {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 30; ++it) {
    Graph g = random_graph(8, 35, rng);
    DecompositionTree dec = random_decomposition(8, rng);
    for (const char* name : {"independent-set", "dominating-set", "perfect-code"}) {
      Solution a = solve_sigma_rho(g, dec, catalog_lookup(name));
      Solution b = solve_distance_r(g, dec, catalog_lookup(name), 1);
      EXPECT_EQ(a.feasible, b.feasible);
      EXPECT_EQ(a.value, b.value);
      EXPECT_EQ(a.witness, b.witness);
    }
  }
}

TEST(SolveSigmaRho, MatchesOracleOnRandomCorpus) {
  std::mt19937_64 rng(47);
  for (int it = 0; it < 120; ++it) {
    std::size_t n = 2 + it % 6;
    Graph g = random_graph(n, 40, rng);
    DecompositionTree dec = random_decomposition(n, rng);
    for (const auto& row : catalog()) {
      Problem base = catalog_lookup(row.name);
      for (Objective o : {Objective::min, Objective::max, Objective::exists}) {
        Problem p = with_objective(base, o);
        Solution s = solve_sigma_rho(g, dec, p);
        auto ref = oracle::brute_sigma_rho(g, p);
        ASSERT_EQ(s.feasible, ref.feasible) << row.name;
        if (!s.feasible) continue;
        EXPECT_TRUE(verify_witness(g, p, 1, *s.witness)) << row.name;
        if (o == Objective::min) EXPECT_EQ(*s.value, ref.min_value) << row.name;
        if (o == Objective::max) EXPECT_EQ(*s.value, ref.max_value) << row.name;
        if (o != Objective::exists) EXPECT_EQ(s.witness->size(), *s.value);
      }
    }
  }
}

TEST(SolveSigmaRho, ThreadsAndRepeatsAgree) {
  std::mt19937_64 rng(53);
  for (int it = 0; it < 10; ++it) {
    Graph g = random_graph(12, 30, rng);
    DecompositionTree dec = random_decomposition(12, rng);
    SolverOptions four;
    four.threads = 4;
    Problem p = catalog_lookup("dominating-set");
    Solution a = solve_sigma_rho(g, dec, p), b = solve_sigma_rho(g, dec, p, four), c = solve_sigma_rho(g, dec, p);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.witness, c.witness);
  }
}

TEST(SolveSigmaRho, ClassCap) {
  Graph m = Graph::from_edges(8, {{0, 4}, {1, 5}, {2, 6}, {3, 7}});
  SolverOptions tiny;
  tiny.class_cap = 2;
  EXPECT_THROW(solve_sigma_rho(m, linear(8), catalog_lookup("dominating-set"), tiny), BudgetExceeded);
}

TEST(SolveLcvp, Examples) {
  EXPECT_TRUE(solve_lcvp(cycle(5), linear(5), coloring_matrix(3), PartitionObjective::exists).feasible);
  EXPECT_FALSE(solve_lcvp(cycle(5), linear(5), coloring_matrix(2), PartitionObjective::exists).feasible);
  EXPECT_FALSE(solve_lcvp(path(3), linear(3), coloring_matrix(2, 2), PartitionObjective::exists).feasible);
  Solution c4 = solve_lcvp(cycle(4), linear(4), coloring_matrix(2), PartitionObjective::min_class_one);
  ASSERT_TRUE(c4.feasible);
  EXPECT_EQ(*c4.value, 2u);
  EXPECT_TRUE(verify_witness(cycle(4), coloring_matrix(2), *c4.labels));
}

TEST(SolveLcvp, SigmaRhoEmbeddingAgrees) {
  std::mt19937_64 rng(59);
  for (int it = 0; it < 40; ++it) {
    Graph g = random_graph(6, 40, rng);
    DecompositionTree dec = random_decomposition(6, rng);
    for (const char* name : {"dominating-set", "independent-set", "perfect-code", "total-dominating-set"}) {
      Problem p = catalog_lookup(name);
      Solution a = solve_sigma_rho(g, dec, with_objective(p, Objective::min));
      Solution b = solve_lcvp(g, dec, sigma_rho_matrix(p), PartitionObjective::min_class_one);
      EXPECT_EQ(a.feasible, b.feasible) << name;
      EXPECT_EQ(a.value, b.value) << name;
    }
  }
}

TEST(VerifyWitness, Examples) {
  EXPECT_TRUE(verify_witness(path(3), catalog_lookup("independent-set"), 1, set_of(3, {0, 2})));
  EXPECT_FALSE(verify_witness(complete(2), catalog_lookup("independent-set"), 1, set_of(2, {0, 1})));
  EXPECT_FALSE(verify_witness(cycle(5), coloring_matrix(2), {0, 1, 0, 1, 0}));
  EXPECT_TRUE(verify_witness(cycle(5), coloring_matrix(3), {0, 1, 0, 1, 2}));
}
