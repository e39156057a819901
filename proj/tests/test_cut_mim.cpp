#include <gtest/gtest.h>

#include "mimdp/oracle.hpp"
#include "test_util.hpp"

using namespace mimdp;
using namespace testutil;

TEST(CutMim, CompleteBipartite) {
  Graph k33 = complete_bipartite(3, 3);
  EXPECT_EQ(cut_mim(k33, set_of(6, {0, 1, 2})), 1u);
}

TEST(CutMim, PerfectMatching) {
  Graph m = Graph::from_edges(6, {{0, 3}, {1, 4}, {2, 5}});
  EXPECT_EQ(cut_mim(m, set_of(6, {0, 1, 2})), 3u);
  EXPECT_EQ(cut_mim(m, set_of(6, {0, 3})), 0u);
}

TEST(CutMim, MatchesBruteOnRandomCuts) {
  std::mt19937_64 rng(10);
  for (int it = 0; it < 500; ++it) {
    Graph g = random_graph(10, 40, rng);
    std::vector<Vertex> order = identity_order(10);
    std::shuffle(order.begin(), order.end(), rng);
    VertexSet a(10);
    for (int i = 0; i < 5; ++i) a.insert(order[i]);
    EXPECT_EQ(cut_mim(g, a), oracle::brute_cut_mim(g, a));
  }
}

TEST(CutMim, SymmetricAndBounded) {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 2 + it % 12;
    Graph g = random_graph(n, 35, rng);
    VertexSet a = random_subset(n, rng);
    std::size_t v = cut_mim(g, a);
    EXPECT_EQ(v, cut_mim(g, a.complement()));
    EXPECT_LE(v, std::min(a.size(), n - a.size()));
    EXPECT_LE(v, crossing_edges(g, a).size());
  }
}

TEST(CutMim, BudgetExceeded) {
  // A perfect matching is settled at the root, this one needs branching.
  Graph m = Graph::from_edges(8, {{0, 4}, {1, 5}, {2, 6}, {3, 7}});
  EXPECT_EQ(cut_mim(m, set_of(8, {0, 1, 2, 3}), 1), 4u);
  Graph g = Graph::from_edges(10, {{0, 3}, {0, 6}, {0, 9}, {1, 3}, {1, 5}, {1, 6}, {2, 6}, {2, 9}, {3, 8},
                                   {3, 9}, {4, 5}, {4, 8}, {5, 7}, {5, 8}, {5, 9}, {7, 9}, {8, 9}});
  VertexSet a = set_of(10, {0, 1, 2, 3, 4});
  EXPECT_THROW(cut_mim(g, a, 3), BudgetExceeded);
  EXPECT_EQ(cut_mim(g, a), 2u);
  EXPECT_EQ(oracle::brute_cut_mim(g, a), 2u);
}

TEST(Mimw, Examples) {
  Graph p4 = path(4);
  EXPECT_EQ(mimw_of_dec(p4, caterpillar_from_order(identity_order(4))).mimw, 1u);
  std::mt19937_64 rng(2);
  Graph k5 = complete(5);
  for (int it = 0; it < 5; ++it) EXPECT_EQ(mimw_of_dec(k5, random_decomposition(5, rng)).mimw, 1u);
  // Golden: cut {1,2} | {3,4,5} of C5 has the induced matching {23, 15}.
  CutReport c5 = mimw_of_dec(cycle(5), caterpillar_from_order(identity_order(5)));
  EXPECT_EQ(c5.cuts.size(), 7u);
  EXPECT_EQ(c5.mimw, 2u);
}

TEST(Mimw, ThreadsDoNotChangeReport) {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 20; ++it) {
    Graph g = random_graph(14, 30, rng);
    DecompositionTree dec = random_decomposition(14, rng);
    CutReport one = mimw_of_dec(g, dec, kDefaultNodeBudget, 1);
    CutReport four = mimw_of_dec(g, dec, kDefaultNodeBudget, 4);
    ASSERT_EQ(one.cuts.size(), four.cuts.size());
    for (std::size_t i = 0; i < one.cuts.size(); ++i) EXPECT_EQ(one.cuts[i].cutmim, four.cuts[i].cutmim);
  }
}

TEST(OptimalLinear, Examples) {
  EXPECT_EQ(optimal_linear_mimw(path(5)).width, 1u);
  EXPECT_EQ(optimal_linear_mimw(complete(4)).width, 1u);
  // Golden value, computed once by exhaustive search over all 720 orders.
  LinearWidth c6 = optimal_linear_mimw(cycle(6));
  EXPECT_EQ(c6.width, 2u);
  EXPECT_EQ(mimw_of_dec(cycle(6), c6.dec).mimw, 2u);
  EXPECT_EQ(optimal_linear_mimw(Graph(3)).width, 0u);
  EXPECT_THROW(optimal_linear_mimw(path(10)), InvalidArgument);
}
