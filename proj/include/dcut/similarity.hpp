#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dcut/graph.hpp"

namespace dcut {

/// One undirected edge annotated with its structural similarity.
struct SimilarityEdge {
  NodeId u;  // u < v
  NodeId v;
  double rho;     // Jaccard coefficient of the closed neighborhoods
  double weight;  // raw edge weight
  double s;       // rho * weight
};

namespace detail {

// Size of the intersection of two sorted open neighborhoods.
inline std::size_t count_common(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

// For adjacent u, v the closed neighborhoods always share u and v, so
// |Γ(u) ∩ Γ(v)| = common + 2 and |Γ(u) ∪ Γ(v)| = (du + 1) + (dv + 1) - (common + 2).
inline double jaccard_unchecked(const Graph& g, NodeId u, NodeId v) {
  auto a = g.adjacent(u);
  auto b = g.adjacent(v);
  const std::size_t inter = count_common(a, b) + 2;
  const std::size_t uni = a.size() + b.size() + 2 - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline void require_adjacent(const Graph& g, NodeId u, NodeId v) {
  if (u == v) {
    throw Error(ErrorKind::config, "similarity requires two distinct nodes");
  }
  if (!g.has_edge(u, v)) {
    throw Error(ErrorKind::config, "similarity is defined only for adjacent nodes; '" +
                                       g.label(u) + "' and '" + g.label(v) + "' are not adjacent");
  }
}

}  // namespace detail

/// Jaccard coefficient of the closed neighborhoods of two adjacent nodes.
inline double jaccard(const Graph& g, NodeId u, NodeId v) {
  detail::require_adjacent(g, u, v);
  return detail::jaccard_unchecked(g, u, v);
}

/// Jaccard coefficient scaled by the edge weight.
inline double node_similarity(const Graph& g, NodeId u, NodeId v) {
  detail::require_adjacent(g, u, v);
  return detail::jaccard_unchecked(g, u, v) * *g.weight(u, v);
}

/// All edges with their similarity, ascending by (u, v).
inline std::vector<SimilarityEdge> all_similarities(const Graph& g) {
  std::vector<SimilarityEdge> out;
  out.reserve(g.num_edges());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    auto adj = g.adjacent(u);
    auto w = g.weights(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (adj[i] <= u) continue;
      const double rho = detail::jaccard_unchecked(g, u, adj[i]);
      out.push_back({u, adj[i], rho, w[i], rho * w[i]});
    }
  }
  return out;
}

/// Similarity per adjacency slot, so that value(u, i) is s(u, adjacent(u)[i]).
/// Each undirected edge is evaluated once and mirrored to both slots.
class SimilarityTable {
 public:
  SimilarityTable() = default;

  explicit SimilarityTable(const Graph& g) : offsets_(g.num_nodes() + 1), values_(g.num_slots()) {
    for (NodeId u = 0; u <= g.num_nodes(); ++u) {
      offsets_[u] = u < g.num_nodes() ? g.slot_offset(u) : g.num_slots();
    }
    // Cursor into each node's list for entries with a smaller neighbor;
    // those are visited in ascending order of the smaller endpoint.
    std::vector<std::size_t> lower(offsets_.begin(), offsets_.end() - 1);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      auto adj = g.adjacent(u);
      auto w = g.weights(u);
      for (std::size_t i = 0; i < adj.size(); ++i) {
        const NodeId v = adj[i];
        if (v <= u) continue;
        const double s = detail::jaccard_unchecked(g, u, v) * w[i];
        values_[offsets_[u] + i] = s;
        values_[lower[v]++] = s;
      }
    }
  }

  double value(NodeId u, std::size_t slot) const { return values_[offsets_[u] + slot]; }
  std::span<const double> row(NodeId u) const {
    return {values_.data() + offsets_[u], values_.data() + offsets_[u + 1]};
  }
  std::size_t num_slots() const noexcept { return values_.size(); }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
};

}  // namespace dcut
