#include <gtest/gtest.h>

#include <map>

#include "test_util.hpp"

using namespace mimdp;
using namespace testutil;

namespace {

PartitionedGraph partitioned(std::size_t n, std::vector<Edge> edges, std::vector<std::vector<Vertex>> classes) {
  return PartitionedGraph{Graph::from_edges(n, edges), std::move(classes)};
}

// Parses "z:i:s" / "r:i,j:s,t" role labels (1-based).
struct Role {
  std::string kind;
  std::vector<int> a, b;
};

Role parse_role(const std::string& label) {
  Role r;
  auto first = label.find(':');
  r.kind = label.substr(0, first);
  auto second = label.find(':', first + 1);
  auto nums = [](const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      auto comma = s.find(',', pos);
      out.push_back(std::stoi(s.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  };
  r.a = nums(label.substr(first + 1, second - first - 1));
  if (second != std::string::npos) r.b = nums(label.substr(second + 1));
  return r;
}

// z^i_h ~ r^{(i,j)}_{s,t} iff h != s, z^j_h ~ r iff h != t, and no other z-r edges.
void check_core_adjacency(const GadgetInstance& inst) {
  for (Vertex z : inst.with_prefix("z:"))
    for (Vertex r : inst.with_prefix("r:")) {
      Role zr = parse_role(inst.roles[z]), rr = parse_role(inst.roles[r]);
      int i = zr.a[0], h = zr.b[0];
      bool want = (i == rr.a[0] && h != rr.b[0]) || (i == rr.a[1] && h != rr.b[1]);
      EXPECT_EQ(inst.graph.adjacent(z, r), want) << inst.roles[z] << " " << inst.roles[r];
    }
}

}  // namespace

TEST(PadPartition, Unchanged) {
  auto pg = partitioned(4, {{0, 2}}, {{0, 1}, {2, 3}});
  auto out = pad_partition(pg, PadMode::independent_set);
  EXPECT_EQ(out.graph, pg.graph);
  EXPECT_EQ(out.classes, pg.classes);
}

TEST(PadPartition, CliqueModeIsolated) {
  auto pg = partitioned(3, {{0, 2}}, {{0, 1}, {2}});
  auto out = pad_partition(pg, PadMode::clique);
  ASSERT_EQ(out.graph.n(), 4u);
  EXPECT_EQ(out.classes[1], (std::vector<Vertex>{2, 3}));
  EXPECT_EQ(out.graph.degree(3), 0u);
  EXPECT_EQ(out.graph.m(), 1u);
}

TEST(PadPartition, IsModeSeesOtherClasses) {
  auto src = partitioned(4, {}, {{0, 1, 2}, {3}});
  auto out = pad_partition(src, PadMode::independent_set);
  ASSERT_EQ(out.graph.n(), 6u);
  for (Vertex pad : {4, 5}) {
    for (Vertex v : {0, 1, 2}) EXPECT_TRUE(out.graph.adjacent(pad, v));
    EXPECT_FALSE(out.graph.adjacent(pad, 3));
  }
  EXPECT_FALSE(out.graph.adjacent(4, 5));
}

TEST(PadPartition, IsModePadsOfDifferentClassesAdjacent) {
  auto src = partitioned(4, {}, {{0, 1}, {2}, {3}});
  auto out = pad_partition(src, PadMode::independent_set);
  ASSERT_EQ(out.graph.n(), 6u);
  EXPECT_TRUE(out.graph.adjacent(4, 5));
  EXPECT_FALSE(out.graph.adjacent(4, 2));
  EXPECT_TRUE(out.graph.adjacent(4, 3));
}

TEST(GenCore, OneCrossEdge) {
  auto inst = gen_core(partitioned(4, {{0, 2}}, {{0, 1}, {2, 3}}));
  ASSERT_EQ(inst.graph.n(), 5u);
  Vertex r = inst.with_prefix("r:")[0];
  EXPECT_EQ(inst.roles[r], "r:1,2:1,1");
  std::vector<std::string> z_neighbors;
  for (Vertex u : inst.graph.neighbor_list(r)) z_neighbors.push_back(inst.roles[u]);
  EXPECT_EQ(z_neighbors, (std::vector<std::string>{"z:1:2", "z:2:2"}));
  check_core_adjacency(inst);
}

TEST(GenCore, NoCrossEdges) {
  auto inst = gen_core(partitioned(6, {}, {{0, 1, 2}, {3, 4, 5}}));
  EXPECT_EQ(inst.graph.n(), 6u);
  EXPECT_EQ(inst.graph.m(), 6u);
  EXPECT_FALSE(inst.graph.adjacent(0, 3));
}

TEST(GenCore, CoreAdjacencyOnRandomSources) {
  std::mt19937_64 rng(71);
  for (int it = 0; it < 40; ++it) {
    auto src = random_partitioned(2 + it % 3, 1 + it % 4, 50, rng);
    auto inst = gen_core(src);
    check_core_adjacency(inst);
    for (Vertex z : inst.with_prefix("z:"))
      for (Vertex w : inst.with_prefix("z:"))
        if (z != w) EXPECT_EQ(inst.graph.adjacent(z, w), parse_role(inst.roles[z]).a == parse_role(inst.roles[w]).a);
    for (Vertex r : inst.with_prefix("r:"))
      for (Vertex w : inst.with_prefix("r:"))
        if (r != w) EXPECT_EQ(inst.graph.adjacent(r, w), parse_role(inst.roles[r]).a == parse_role(inst.roles[w]).a);
  }
}

TEST(GenCore, RequiresPadding) { EXPECT_THROW(gen_core(partitioned(3, {}, {{0, 1}, {2}})), InvalidArgument); }

TEST(CliqueGadget, Sizes) {
  std::mt19937_64 rng(73);
  auto src = random_partitioned(3, 2, 50, rng);
  auto d1 = gen_clique_gadget(src, 1);
  EXPECT_EQ(d1.gadget_size, 6u);
  EXPECT_EQ(d1.target, 12u);
  auto d2 = gen_clique_gadget(src, 2);
  EXPECT_EQ(d2.gadget_size, 18u);
  EXPECT_EQ(d2.target, 24u);
  EXPECT_EQ(d2.with_prefix("b1:").size(), 12u);
  EXPECT_EQ(d2.with_prefix("b2:").size(), 6u);
  EXPECT_THROW(gen_clique_gadget(random_partitioned(2, 2, 50, rng), 1), InvalidArgument);
  EXPECT_THROW(gen_clique_gadget(src, 0), InvalidArgument);
}

TEST(CliqueGadget, YesInstanceReachesTarget) {
  auto tri = partitioned(3, {{0, 1}, {0, 2}, {1, 2}}, {{0}, {1}, {2}});
  auto inst = gen_clique_gadget(tri, 1, true);
  auto res = oracle::brute_sigma_rho(inst.graph, certification_problem(inst));
  ASSERT_TRUE(res.feasible);
  EXPECT_GE(res.max_value, inst.target);
  EXPECT_TRUE(res.size_feasible[inst.target]);
}

TEST(CliqueGadget, B1SeesItsGroup) {
  auto tri = partitioned(3, {{0, 1}, {0, 2}, {1, 2}}, {{0}, {1}, {2}});
  auto inst = gen_clique_gadget(tri, 2);
  for (Vertex b : inst.with_prefix("b1:1:")) {
    EXPECT_TRUE(inst.graph.adjacent(b, inst.with_prefix("z:1:")[0]));
    for (Vertex b2 : inst.with_prefix("b2:1:")) EXPECT_TRUE(inst.graph.adjacent(b, b2));
  }
  Vertex r12 = inst.with_prefix("r:1,2:")[0];
  for (Vertex b : inst.with_prefix("b1:1,2:")) EXPECT_TRUE(inst.graph.adjacent(b, r12));
}

TEST(DomsetGadget, Examples) {
  auto yes = pad_partition(partitioned(4, {{0, 2}}, {{0, 1}, {2, 3}}), PadMode::independent_set);
  auto inst = gen_domset_gadget(yes, true);
  EXPECT_EQ(inst.target, 2u);
  auto res = oracle::brute_sigma_rho(inst.graph, certification_problem(inst));
  EXPECT_EQ(res.min_value, 2u);
  for (Vertex b : inst.with_prefix("b:")) EXPECT_EQ(inst.graph.degree(b), 2u);

  auto no = pad_partition(partitioned(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}, {{0, 1}, {2, 3}}), PadMode::independent_set);
  auto inst_no = gen_domset_gadget(no, false);
  EXPECT_GT(oracle::brute_sigma_rho(inst_no.graph, certification_problem(inst_no)).min_value, 2u);
}

TEST(TotalDomGadget, Examples) {
  auto yes = gen_total_dom_gadget(pad_partition(partitioned(4, {{0, 2}}, {{0, 1}, {2, 3}}), PadMode::independent_set));
  EXPECT_EQ(yes.target, 4u);
  for (Vertex c : yes.with_prefix("c:")) EXPECT_EQ(yes.graph.degree(c), 1u);
  EXPECT_TRUE(oracle::brute_sigma_rho(yes.graph, certification_problem(yes)).size_feasible[4]);
  auto no = gen_total_dom_gadget(partitioned(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}, {{0, 1}, {2, 3}}));
  EXPECT_FALSE(oracle::brute_sigma_rho(no.graph, certification_problem(no)).size_feasible[4]);
}

TEST(DDomGadget, Structure) {
  auto src = partitioned(6, {{0, 3}, {1, 4}, {2, 5}, {0, 5}}, {{0, 1, 2}, {3, 4, 5}});
  for (int d : {2, 3}) {
    auto inst = gen_d_dom_gadget(src, d);
    EXPECT_EQ(inst.target, 2u * static_cast<std::size_t>(d + 1));
    EXPECT_EQ(inst.gadget_size, 4u * static_cast<std::size_t>(d));
    auto c1 = inst.with_prefix("c1:");
    for (Vertex r : inst.with_prefix("r:")) {
      std::size_t hits = 0;
      for (Vertex c : c1) hits += inst.graph.adjacent(r, c);
      EXPECT_EQ(hits, static_cast<std::size_t>(d - 1));
    }
    for (int i = 1; i <= 2; ++i) {
      Vertex last = inst.with_prefix("c1:" + std::to_string(i) + ":" + std::to_string(d))[0];
      for (Vertex u : inst.graph.neighbor_list(last)) EXPECT_EQ(inst.roles[u].rfind("c2:" + std::to_string(i) + ":", 0), 0u) << inst.roles[u];
    }
    check_core_adjacency(inst);
  }
  EXPECT_THROW(gen_d_dom_gadget(src, 1), InvalidArgument);
}

TEST(DDomGadget, YesInstance) {
  auto src = partitioned(4, {{0, 2}}, {{0, 1}, {2, 3}});
  auto inst = gen_d_dom_gadget(src, 2, true);
  EXPECT_EQ(inst.target, 6u);
  EXPECT_TRUE(oracle::brute_sigma_rho(inst.graph, certification_problem(inst)).size_feasible[6]);
}

TEST(Metadata, Lines) {
  auto inst = gen_core(partitioned(4, {{0, 2}}, {{0, 1}, {2, 3}}));
  std::string meta = write_metadata(inst);
  EXPECT_NE(meta.find("construction core\n"), std::string::npos);
  EXPECT_NE(meta.find("expected unknown\n"), std::string::npos);
  EXPECT_NE(meta.find("role 5 r:1,2:1,1\n"), std::string::npos);
}

TEST(RandomInterval, Examples) {
  auto one = gen_random_interval(1, 5);
  EXPECT_EQ(one.graph.n(), 1u);
  EXPECT_EQ(one.intervals[0].left, 1);
  EXPECT_EQ(one.intervals[0].right, 2);
  auto a = gen_random_interval(12, 99), b = gen_random_interval(12, 99);
  EXPECT_EQ(a.graph, b.graph);
  std::vector<long long> ends;
  for (auto iv : a.intervals) {
    ends.push_back(iv.left);
    ends.push_back(iv.right);
  }
  std::sort(ends.begin(), ends.end());
  for (std::size_t i = 0; i < ends.size(); ++i) EXPECT_EQ(ends[i], static_cast<long long>(i + 1));
  EXPECT_NO_THROW(check_interval_model(a.graph, a.intervals));
  EXPECT_EQ(mimw_of_dec(a.graph, interval_decomposition(a.graph, a.intervals)).mimw, 1u);
}

TEST(RandomInterval, DisjointIsEmpty) {
  Graph g(3);
  std::vector<Interval> iv = {{1, 2}, {3, 4}, {5, 6}};
  EXPECT_NO_THROW(check_interval_model(g, iv));
  EXPECT_EQ(mimw_of_dec(g, interval_decomposition(g, iv)).mimw, 0u);
}
