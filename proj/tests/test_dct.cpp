#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "dcut/dct.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace dcut;
using dcut::testing::id;
using dcut::testing::parse;

namespace {

// Structural invariants every tree must satisfy for its source graph.
void expect_valid_tree(const DensityConnectedTree& t, const Graph& g) {
  ASSERT_EQ(t.size(), g.num_nodes());
  EXPECT_EQ(t.num_components, oracle::count_components(g));
  EXPECT_EQ(t.edges().size(), g.num_nodes() - t.num_components);
  EXPECT_EQ(t.roots().size(), t.num_components);

  std::vector<NodeId> root(g.num_nodes());
  std::iota(root.begin(), root.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto& e : t.edges()) {
    EXPECT_TRUE(g.has_edge(e.child, e.parent));
    EXPECT_EQ(e.density, oracle::similarity(g, e.child, e.parent));
    EXPECT_EQ(t.component_id[e.child], t.component_id[e.parent]);
    const NodeId a = find(e.child), b = find(e.parent);
    EXPECT_NE(a, b) << "cycle through " << e.child;
    root[a] = b;
  }

  // Replay the insertion order: each non-root insertion attaches to an
  // earlier node and has maximal similarity over the frontier at that step.
  std::vector<char> in_tree(g.num_nodes(), 0);
  ASSERT_EQ(t.insertion_order.size(), g.num_nodes());
  for (NodeId v : t.insertion_order) {
    if (t.parent[v]) {
      EXPECT_TRUE(in_tree[*t.parent[v]]);
      double best = 0.0;
      for (NodeId u = 0; u < g.num_nodes(); ++u) {
        if (!in_tree[u] || t.component_id[u] != t.component_id[v]) continue;
        for (NodeId x : g.adjacent(u)) {
          if (!in_tree[x]) best = std::max(best, oracle::similarity(g, u, x));
        }
      }
      EXPECT_EQ(*t.density[v], best);
    } else {
      // A new component starts only once the previous frontier is empty.
      for (NodeId u = 0; u < g.num_nodes(); ++u) {
        if (!in_tree[u]) continue;
        for (NodeId x : g.adjacent(u)) EXPECT_TRUE(in_tree[x]);
      }
    }
    in_tree[v] = 1;
  }
}

}  // namespace

TEST(BuildDct, WeightedTriangleKeepsTwoHeaviestEdges) {
  const auto g = parse("a b 3\nb c 2\na c 1\n");
  for (auto build : {+[](const Graph& gr) { return build_dct(gr, NodeId{0}); },
                     +[](const Graph& gr) { return build_dct_naive(gr, NodeId{0}); }}) {
    const auto t = build(g);
    const std::set<oracle::EdgeKey> want{oracle::key(id(g, "a"), id(g, "b")),
                                         oracle::key(id(g, "b"), id(g, "c"))};
    EXPECT_EQ(oracle::tree_edges(t), want);
    expect_valid_tree(t, g);
  }
}

TEST(BuildDct, KarateWalkthroughFromNode8) {
  const auto g = dcut::testing::karate();
  const auto t = build_dct(g, id(g, "8"));
  ASSERT_GE(t.insertion_order.size(), 3u);
  EXPECT_EQ(g.label(t.insertion_order[0]), "8");
  EXPECT_EQ(g.label(t.insertion_order[1]), "4");
  EXPECT_EQ(g.label(t.insertion_order[2]), "14");
  EXPECT_EQ(t.parent[id(g, "14")], id(g, "4"));
  EXPECT_EQ(t.parent[id(g, "4")], id(g, "8"));
  expect_valid_tree(t, g);
}

TEST(BuildDct, SingleNode) {
  const auto g = parse("a a\n");
  const auto t = build_dct(g);
  EXPECT_EQ(t.num_components, 1u);
  EXPECT_TRUE(t.edges().empty());
  EXPECT_EQ(t.roots(), std::vector<NodeId>{0});
}

TEST(BuildDct, DisconnectedGraphYieldsForest) {
  const auto g = parse("a b\nb c\na c\nx y 2\ny z\n");
  const auto fast = build_dct(g, id(g, "y"));
  const auto naive = build_dct_naive(g, id(g, "y"));
  EXPECT_EQ(fast.num_components, 2u);
  EXPECT_EQ(fast.parent, naive.parent);
  EXPECT_EQ(fast.insertion_order, naive.insertion_order);
  EXPECT_EQ(fast.component_id, naive.component_id);
  // Started at y; the second tree restarts from the lowest unchecked id (a).
  EXPECT_EQ(fast.roots(), (std::vector<NodeId>{id(g, "y"), id(g, "a")}));
  EXPECT_EQ(fast.component_id[id(g, "b")], 1u);
  expect_valid_tree(fast, g);
}

TEST(BuildDct, StartOutOfRange) {
  const auto g = parse("a b\n");
  EXPECT_THROW(build_dct(g, NodeId{2}), Error);
  EXPECT_THROW(build_dct_naive(g, NodeId{2}), Error);
}

TEST(BuildDct, MatchesNaiveScanIncludingTies) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    const double p = double(1 + rng() % 8) / double(n);
    // Unweighted graphs are full of equal similarities, which exercises the
    // shared tie-break rule.
    const auto g = oracle::random_graph(rng, n, p, trial % 2 == 0);
    const NodeId start = rng() % n;
    const auto fast = build_dct(g, start);
    const auto naive = build_dct_naive(g, start);
    EXPECT_EQ(fast.parent, naive.parent);
    EXPECT_EQ(fast.density, naive.density);
    EXPECT_EQ(fast.insertion_order, naive.insertion_order);
    EXPECT_EQ(fast.component_id, naive.component_id);
    expect_valid_tree(fast, g);
  }
}

TEST(BuildDct, TieBreakPrefersSmallerFrontierThenSmallerTreeNode) {
  // Star: all spokes have equal similarity, so insertion follows node ids.
  const auto g = parse("c x\nc y\nc z\nc w\n");
  const auto t = build_dct(g, id(g, "c"));
  std::vector<NodeId> expected{id(g, "c"), 1, 2, 3, 4};
  EXPECT_EQ(t.insertion_order, expected);
}

TEST(BuildDct, UniqueAndEqualToMaximumSpanningTree) {
  std::mt19937_64 rng(5);
  int tested = 0;
  while (tested < 40) {
    const std::size_t n = 2 + rng() % 99;
    const auto g = oracle::random_graph(rng, n, double(2 + rng() % 6) / double(n), true);
    if (!oracle::similarities_distinct(g)) continue;
    const auto mst = oracle::max_spanning_forest(g);
    for (int s = 0; s < 10; ++s) {
      const auto t = build_dct(g, random_start(g, rng()));
      EXPECT_EQ(oracle::tree_edges(t), mst);
    }
    ++tested;
  }
}

TEST(ExportDot, Shapes) {
  const auto single = parse("a b\n");
  const auto dot = export_dot(build_dct(single), single);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  auto count = [](const std::string& s, const std::string& pat) {
    std::size_t c = 0;
    for (auto pos = s.find(pat); pos != std::string::npos; pos = s.find(pat, pos + 1)) ++c;
    return c;
  };
  EXPECT_EQ(count(dot, "->"), 1u);
  EXPECT_NE(dot.find("\"b\" -> \"a\""), std::string::npos) << dot;

  const auto g = dcut::testing::karate();
  EXPECT_EQ(count(export_dot(build_dct(g), g), "->"), 33u);

  const auto forest = parse("a b\nc d\n");
  const auto fdot = export_dot(build_dct(forest), forest);
  EXPECT_EQ(count(fdot, "doublecircle"), 2u);
  EXPECT_EQ(count(fdot, "->"), 2u);
}

TEST(ExportDot, PenWidthTracksDensity) {
  const auto g = parse("a b 4\nb c 1\n");
  const auto dot = export_dot(build_dct(g), g);
  EXPECT_NE(dot.find("penwidth=5"), std::string::npos) << dot;
}

TEST(ExportDot, MismatchedTreeAndGraph) {
  const auto g = parse("a b\nb c\n");
  const auto other = parse("a b\nc d\nb d\n");
  EXPECT_THROW(export_dot(build_dct(g), other), Error);
  const auto same_size = parse("a b\na c\n");
  EXPECT_THROW(export_dot(build_dct(g), same_size), Error);
}

TEST(WriteTreeTsv, RootHasEmptyParent) {
  const auto g = parse("a b 3\nb c 2\na c 1\n");
  std::ostringstream out;
  write_tree_tsv(build_dct(g), g, out);
  EXPECT_EQ(out.str(), "a\t\t\nb\ta\t3\nc\tb\t2\n");
}
