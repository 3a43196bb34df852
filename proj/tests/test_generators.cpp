#include <gtest/gtest.h>

#include <sstream>

#include "dcut/dct.hpp"
#include "dcut/generators.hpp"
#include "oracles.hpp"

using namespace dcut;

namespace {

GenSpec single(ClusterKind kind, std::size_t size, double param, std::size_t inter = 0) {
  GenSpec s;
  s.kind = kind == ClusterKind::planted       ? GenKind::planted
           : kind == ClusterKind::small_world ? GenKind::small_world
                                              : GenKind::scale_free;
  s.clusters = {{kind, size, param}};
  s.inter_edges = inter;
  s.seed = 17;
  return s;
}

void expect_accounting(const GenSpec& spec, const GenResult& r) {
  std::size_t n = 0;
  for (const auto& c : spec.clusters) n += c.size;
  EXPECT_EQ(r.graph.num_nodes(), n);
  EXPECT_EQ(r.truth.k(), spec.clusters.size());
  const auto sizes = r.truth.sizes();
  for (std::size_t i = 0; i < spec.clusters.size(); ++i) EXPECT_EQ(sizes[i], spec.clusters[i].size);
  EXPECT_EQ(r.intra_edges + r.inter_edges, r.graph.num_edges());
  EXPECT_EQ(r.inter_edges, spec.inter_edges);
  std::size_t inter = 0;
  for (NodeId u = 0; u < r.graph.num_nodes(); ++u) {
    for (NodeId v : r.graph.adjacent(u)) inter += (u < v && r.truth[u] != r.truth[v]);
  }
  EXPECT_EQ(inter, spec.inter_edges);
}

}  // namespace

TEST(Rng, MersenneTwisterReferenceStream) {
  // The 10000th output of a default-seeded mt19937_64 is fixed by the C++
  // standard; Rng must expose that engine unchanged.
  std::mt19937_64 ref;
  for (int i = 1; i < 10000; ++i) ref();
  EXPECT_EQ(ref(), 9981545732273789042ull);
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.below(1000), b.below(1000));
  Rng r(9);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(r.below(7), 7u);
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(GenPlanted, CompleteGraphAtDensityOne) {
  const auto r = gen_planted(single(ClusterKind::planted, 5, 1.0));
  EXPECT_EQ(r.graph.num_edges(), 10u);
  for (NodeId u = 0; u < 5; ++u) EXPECT_EQ(r.graph.degree(u), 4u);
}

TEST(GenPlanted, NoiseDesignEdgeCounts) {
  const auto spec = noise_design(2500, 3);
  const auto r = gen_planted(spec);
  expect_accounting(spec, r);
  // 20 * 0.6 * C(50, 2) = 14700 expected; sd is about 77.
  EXPECT_NEAR(double(r.intra_edges), 14700.0, 500.0);
}

TEST(GenPlanted, DensityLadder) {
  const auto spec = density_design(1);
  ASSERT_EQ(spec.clusters.size(), 10u);
  EXPECT_DOUBLE_EQ(spec.clusters.front().parameter, 0.60);
  EXPECT_DOUBLE_EQ(spec.clusters.back().parameter, 0.15);
  EXPECT_EQ(spec.inter_edges, 5000u);
  const auto r = gen_planted(spec);
  expect_accounting(spec, r);
  EXPECT_DOUBLE_EQ(random_network_design(1).clusters.back().parameter, 0.10);
}

TEST(GenPlanted, Errors) {
  EXPECT_THROW(gen_planted(single(ClusterKind::planted, 5, 0.0)), Error);
  EXPECT_THROW(gen_planted(single(ClusterKind::planted, 5, 1.5)), Error);
  // a single cluster has no cross pairs at all
  EXPECT_THROW(gen_planted(single(ClusterKind::planted, 5, 0.5, 1)), Error);
  GenSpec two = single(ClusterKind::planted, 3, 0.5);
  two.clusters.push_back({ClusterKind::planted, 2, 0.5});
  two.inter_edges = 6;
  EXPECT_NO_THROW(gen_planted(two));  // exactly all 3 * 2 cross pairs
  two.inter_edges = 7;
  EXPECT_THROW(gen_planted(two), Error);
  EXPECT_THROW(gen_small_world(noise_design(10, 1)), Error);  // kind mismatch
}

TEST(GenSmallWorld, RingLatticeWithoutRewiring) {
  auto spec = single(ClusterKind::small_world, 12, 2);
  spec.rewire_probability = 0.0;
  const auto cycle = gen_small_world(spec);
  EXPECT_EQ(cycle.graph.num_edges(), 12u);
  for (NodeId u = 0; u < 12; ++u) {
    EXPECT_EQ(cycle.graph.degree(u), 2u);
    EXPECT_TRUE(cycle.graph.has_edge(u, (u + 1) % 12));
  }
  spec = single(ClusterKind::small_world, 10, 4);
  spec.rewire_probability = 0.0;
  const auto lattice = gen_small_world(spec);
  for (NodeId u = 0; u < 10; ++u) EXPECT_EQ(lattice.graph.degree(u), 4u);
}

TEST(GenSmallWorld, RewiringKeepsEdgeCount) {
  const auto spec = small_world_design(4);
  const auto r = gen_small_world(spec);
  expect_accounting(spec, r);
  std::size_t expected = 0;
  for (int k = 2; k <= 20; k += 2) expected += 100 * k / 2;
  EXPECT_EQ(r.intra_edges, expected);
}

TEST(GenSmallWorld, Errors) {
  EXPECT_THROW(gen_small_world(single(ClusterKind::small_world, 10, 3)), Error);
  EXPECT_THROW(gen_small_world(single(ClusterKind::small_world, 10, 10)), Error);
  EXPECT_THROW(gen_small_world(single(ClusterKind::small_world, 10, 2.5)), Error);
}

TEST(GenScaleFree, TreeGrowthForMOne) {
  const auto r = gen_scale_free(single(ClusterKind::scale_free, 5, 1));
  EXPECT_EQ(r.graph.num_edges(), 4u);
  EXPECT_EQ(oracle::count_components(r.graph), 1u);
}

TEST(GenScaleFree, DesignAndEdgeCount) {
  const auto spec = scale_free_design(2);
  const auto r = gen_scale_free(spec);
  expect_accounting(spec, r);
  std::size_t expected = 0;
  for (std::size_t m = 2; m <= 20; m += 2) expected += m * (m + 1) / 2 + (100 - m - 1) * m;
  EXPECT_EQ(r.intra_edges, expected);
}

TEST(GenScaleFree, MaxDegreeGrowsWithClusterSize) {
  auto mean_max = [](std::size_t size) {
    double total = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto spec = single(ClusterKind::scale_free, size, 2);
      spec.seed = seed;
      const auto r = gen_scale_free(spec);
      std::size_t best = 0;
      for (NodeId u = 0; u < r.graph.num_nodes(); ++u) best = std::max(best, r.graph.degree(u));
      total += double(best);
    }
    return total / 10;
  };
  EXPECT_LT(mean_max(100), mean_max(1000));
}

TEST(GenScaleFree, Errors) {
  EXPECT_THROW(gen_scale_free(single(ClusterKind::scale_free, 3, 3)), Error);
  EXPECT_THROW(gen_scale_free(single(ClusterKind::scale_free, 10, 0)), Error);
}

TEST(GenMixed, MixedDesignComposition) {
  const auto spec = mixed_design(5);
  ASSERT_EQ(spec.clusters.size(), 10u);
  EXPECT_EQ(spec.inter_edges, 5000u);
  std::size_t planted = 0, sw = 0, sf = 0;
  for (const auto& c : spec.clusters) {
    planted += c.kind == ClusterKind::planted;
    sw += c.kind == ClusterKind::small_world;
    sf += c.kind == ClusterKind::scale_free;
  }
  EXPECT_EQ(planted, 2u);
  EXPECT_EQ(sw, 4u);
  EXPECT_EQ(sf, 4u);
  expect_accounting(spec, gen_mixed(spec));
}

TEST(GenMixed, SingleClusterReducesToItsGenerator) {
  auto spec = single(ClusterKind::small_world, 30, 4);
  const auto direct = gen_small_world(spec);
  spec.kind = GenKind::mixed;
  const auto mixed = gen_mixed(spec);
  EXPECT_EQ(mixed.graph, direct.graph);
}

TEST(GenMixed, DisjointClustersGiveForest) {
  GenSpec spec{GenKind::mixed, {{ClusterKind::planted, 20, 1.0}, {ClusterKind::scale_free, 20, 2}}, 0, 1};
  const auto r = gen_mixed(spec);
  EXPECT_EQ(build_dct(r.graph).num_components, 2u);
}

TEST(Generators, DeterministicPerSeed) {
  const auto a = generate(mixed_design(42));
  const auto b = generate(mixed_design(42));
  const auto c = generate(mixed_design(43));
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.truth, b.truth);
  EXPECT_FALSE(a.graph == c.graph);
}

TEST(GenConfig, ParsesClusterListsAndKeys) {
  std::istringstream in(
      "# mixture\nkind = mixed\nclusters=planted:100:0.55*2, sw:100:8, sf:50:3*2\n"
      "inter_edges=400\nseed=18446744073709551615\nrewire=0.1\n");
  const auto spec = parse_gen_config(in);
  EXPECT_EQ(spec.kind, GenKind::mixed);
  ASSERT_EQ(spec.clusters.size(), 5u);
  EXPECT_EQ(spec.clusters[2].kind, ClusterKind::small_world);
  EXPECT_EQ(spec.clusters[4].size, 50u);
  EXPECT_EQ(spec.inter_edges, 400u);
  EXPECT_EQ(spec.seed, 18446744073709551615ull);
  EXPECT_DOUBLE_EQ(spec.rewire_probability, 0.1);

  const auto plain = parse_clusters("50:0.6*20", ClusterKind::planted);
  ASSERT_EQ(plain.size(), 20u);
  EXPECT_EQ(plain[7].size, 50u);

  EXPECT_THROW(parse_clusters("50", ClusterKind::planted), Error);
  EXPECT_THROW(parse_clusters("x:50:1", ClusterKind::planted), Error);
  std::istringstream bad("colour=blue\n");
  EXPECT_THROW(parse_gen_config(bad), Error);
}
