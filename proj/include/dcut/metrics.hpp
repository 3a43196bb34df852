#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dcut/clustering.hpp"
#include "dcut/graph.hpp"

namespace dcut {

/// Counts of nodes per (predicted cluster, true class) pair.
struct ContingencyTable {
  std::vector<std::vector<std::size_t>> counts;  // [cluster][class]
  std::vector<std::size_t> row_sums;
  std::vector<std::size_t> col_sums;
  std::size_t total = 0;

  static ContingencyTable build(const Clustering& pred, const Clustering& truth) {
    if (pred.size() != truth.size()) {
      throw Error(ErrorKind::config, "node-set mismatch: partitions cover " +
                                         std::to_string(pred.size()) + " and " +
                                         std::to_string(truth.size()) + " nodes");
    }
    ContingencyTable t;
    t.counts.assign(pred.k(), std::vector<std::size_t>(truth.k(), 0));
    t.row_sums.assign(pred.k(), 0);
    t.col_sums.assign(truth.k(), 0);
    for (NodeId u = 0; u < pred.size(); ++u) {
      ++t.counts[pred[u]][truth[u]];
      ++t.row_sums[pred[u]];
      ++t.col_sums[truth[u]];
    }
    t.total = pred.size();
    return t;
  }
};

namespace detail {

inline double entropy(const std::vector<std::size_t>& sums, double n) {
  double h = 0.0;
  for (std::size_t c : sums) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

inline double pairs(std::size_t c) {
  return static_cast<double>(c) * static_cast<double>(c > 0 ? c - 1 : 0) / 2.0;
}

}  // namespace detail

/// Normalized mutual information, 2 I(U;V) / (H(U) + H(V)), natural logs.
/// Two single-cluster partitions score 1.
inline double nmi(const Clustering& pred, const Clustering& truth) {
  const auto t = ContingencyTable::build(pred, truth);
  if (t.total == 0) return 1.0;
  const double n = static_cast<double>(t.total);
  const double hu = detail::entropy(t.row_sums, n);
  const double hv = detail::entropy(t.col_sums, n);
  if (hu + hv == 0.0) return 1.0;
  double mi = 0.0;
  for (std::size_t i = 0; i < t.counts.size(); ++i) {
    for (std::size_t j = 0; j < t.col_sums.size(); ++j) {
      const std::size_t c = t.counts[i][j];
      if (c == 0) continue;
      mi += static_cast<double>(c) / n *
            std::log(n * static_cast<double>(c) /
                     (static_cast<double>(t.row_sums[i]) * static_cast<double>(t.col_sums[j])));
    }
  }
  return std::clamp(2.0 * mi / (hu + hv), 0.0, 1.0);
}

/// Hubert-Arabie adjusted Rand index. When the maximum and expected index
/// coincide (e.g. both partitions all-singletons), the score is 1.
inline double ari(const Clustering& pred, const Clustering& truth) {
  const auto t = ContingencyTable::build(pred, truth);
  if (t.total < 2) {
    throw Error(ErrorKind::config, "ARI needs at least two nodes");
  }
  // Pair counts are integers, so the index is formed exactly after scaling
  // numerator and denominator by 2 * C(n, 2).
  using Wide = __int128;
  auto pairs = [](std::size_t c) { return static_cast<Wide>(c) * (c - (c > 0)) / 2; };
  Wide index = 0, a = 0, b = 0;
  for (const auto& row : t.counts) {
    for (std::size_t c : row) index += pairs(c);
  }
  for (std::size_t c : t.row_sums) a += pairs(c);
  for (std::size_t c : t.col_sums) b += pairs(c);
  const Wide n = pairs(t.total);
  const Wide num = 2 * n * index - 2 * a * b;
  const Wide den = n * (a + b) - 2 * a * b;
  if (den == 0) return 1.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

/// Fraction of nodes carrying the majority class of their predicted cluster.
inline double purity(const Clustering& pred, const Clustering& truth) {
  const auto t = ContingencyTable::build(pred, truth);
  if (t.total == 0) return 1.0;
  std::size_t hit = 0;
  for (const auto& row : t.counts) hit += *std::max_element(row.begin(), row.end());
  return static_cast<double>(hit) / static_cast<double>(t.total);
}

/// Mean over clusters of the mean local clustering coefficient, where each
/// node's triangles and triples are counted inside the subgraph induced by
/// its own cluster. Nodes with fewer than two in-cluster neighbors count 0.
inline double clustering_coefficient(const Graph& g, const Clustering& c) {
  if (c.size() != g.num_nodes()) {
    throw Error(ErrorKind::config, "clustering covers " + std::to_string(c.size()) +
                                       " nodes but graph has " + std::to_string(g.num_nodes()));
  }
  if (c.k() == 0) return 0.0;
  std::vector<double> ratio_sum(c.k(), 0.0);
  std::vector<char> mark(g.num_nodes(), 0);
  std::vector<NodeId> local;
  for (NodeId j = 0; j < g.num_nodes(); ++j) {
    local.clear();
    for (NodeId x : g.adjacent(j)) {
      if (c[x] == c[j]) local.push_back(x);
    }
    if (local.size() < 2) continue;
    for (NodeId x : local) mark[x] = 1;
    std::size_t links = 0;  // each in-cluster triangle at j seen twice
    for (NodeId x : local) {
      for (NodeId y : g.adjacent(x)) links += mark[y];
    }
    for (NodeId x : local) mark[x] = 0;
    const double triangles = static_cast<double>(links / 2);
    const double triples = detail::pairs(local.size());
    ratio_sum[c[j]] += triangles / triples;
  }
  const auto sizes = c.sizes();
  double total = 0.0;
  for (std::size_t i = 0; i < c.k(); ++i) total += ratio_sum[i] / static_cast<double>(sizes[i]);
  return total / static_cast<double>(c.k());
}

}  // namespace dcut
