#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dcut/graph.hpp"
#include "dcut/similarity.hpp"

namespace dcut {

struct TreeEdge {
  NodeId child;
  NodeId parent;
  double density;
};

/// Spanning forest in which every non-root node links to the most similar
/// neighbor that was already in the tree when it was inserted.
struct DensityConnectedTree {
  std::vector<std::optional<NodeId>> parent;
  std::vector<std::optional<double>> density;  // s(v, parent(v))
  std::vector<NodeId> insertion_order;
  std::vector<std::uint32_t> component_id;  // in order of discovery
  std::size_t num_components = 0;

  std::size_t size() const noexcept { return parent.size(); }
  std::size_t num_edges() const noexcept { return size() - num_components; }

  std::vector<NodeId> roots() const {
    std::vector<NodeId> out;
    for (NodeId v : insertion_order) {
      if (!parent[v]) out.push_back(v);
    }
    return out;
  }

  /// Tree edges ordered by child id.
  std::vector<TreeEdge> edges() const {
    std::vector<TreeEdge> out;
    out.reserve(num_edges());
    for (NodeId v = 0; v < size(); ++v) {
      if (parent[v]) out.push_back({v, *parent[v], *density[v]});
    }
    return out;
  }
};

namespace detail {

// Attachment candidate: frontier node joins the tree through tree_node.
// Larger s wins; ties go to the smaller frontier id, then the smaller tree id.
struct Attachment {
  double s;
  NodeId frontier;
  NodeId tree_node;

  bool beats(const Attachment& o) const {
    if (s != o.s) return s > o.s;
    if (frontier != o.frontier) return frontier < o.frontier;
    return tree_node < o.tree_node;
  }
};

struct AttachmentLess {
  bool operator()(const Attachment& a, const Attachment& b) const { return b.beats(a); }
};

inline DensityConnectedTree empty_tree(std::size_t n) {
  DensityConnectedTree t;
  t.parent.assign(n, std::nullopt);
  t.density.assign(n, std::nullopt);
  t.component_id.assign(n, 0);
  t.insertion_order.reserve(n);
  return t;
}

inline void check_start(const Graph& g, std::optional<NodeId> start) {
  if (g.num_nodes() == 0) {
    throw Error(ErrorKind::config, "cannot build a tree over an empty graph");
  }
  if (start && *start >= g.num_nodes()) {
    throw Error(ErrorKind::config, "start node " + std::to_string(*start) + " out of range");
  }
}

}  // namespace detail

/// Greedy density-connected tree using a lazy max-heap of attachments.
/// The first tree grows from `start` (node 0 by default); once a component is
/// exhausted, construction restarts from the lowest-id node not yet inserted.
inline DensityConnectedTree build_dct(const Graph& g, const SimilarityTable& sims,
                                      std::optional<NodeId> start = std::nullopt) {
  detail::check_start(g, start);
  const std::size_t n = g.num_nodes();
  auto t = detail::empty_tree(n);
  std::vector<char> checked(n, 0);
  std::priority_queue<detail::Attachment, std::vector<detail::Attachment>, detail::AttachmentLess>
      heap;

  auto insert = [&](NodeId v) {
    checked[v] = 1;
    t.component_id[v] = static_cast<std::uint32_t>(t.num_components - 1);
    t.insertion_order.push_back(v);
    auto adj = g.adjacent(v);
    auto row = sims.row(v);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (!checked[adj[i]]) heap.push({row[i], adj[i], v});
    }
  };

  NodeId next_seed = 0;
  std::optional<NodeId> seed = start.value_or(0);
  while (seed) {
    ++t.num_components;
    insert(*seed);
    while (!heap.empty()) {
      auto best = heap.top();
      heap.pop();
      if (checked[best.frontier]) continue;
      t.parent[best.frontier] = best.tree_node;
      t.density[best.frontier] = best.s;
      insert(best.frontier);
    }
    seed.reset();
    while (next_seed < n && checked[next_seed]) ++next_seed;
    if (next_seed < n) seed = next_seed;
  }
  return t;
}

inline DensityConnectedTree build_dct(const Graph& g, std::optional<NodeId> start = std::nullopt) {
  return build_dct(g, SimilarityTable(g), start);
}

/// Same contract as build_dct, computed with the quadratic scan: every step
/// rescans all tree nodes and their unchecked neighbors for the best pair.
inline DensityConnectedTree build_dct_naive(const Graph& g,
                                            std::optional<NodeId> start = std::nullopt) {
  detail::check_start(g, start);
  const std::size_t n = g.num_nodes();
  auto t = detail::empty_tree(n);
  std::vector<char> checked(n, 0);
  std::vector<NodeId> tree;  // nodes of the component under construction

  auto seed_component = [&](NodeId u) {
    ++t.num_components;
    checked[u] = 1;
    t.component_id[u] = static_cast<std::uint32_t>(t.num_components - 1);
    t.insertion_order.push_back(u);
    tree.assign(1, u);
  };

  seed_component(start.value_or(0));
  while (t.insertion_order.size() < n) {
    std::optional<detail::Attachment> best;
    for (NodeId u : tree) {
      for (NodeId v : g.adjacent(u)) {
        if (checked[v]) continue;
        detail::Attachment cand{node_similarity(g, u, v), v, u};
        if (!best || cand.beats(*best)) best = cand;
      }
    }
    if (!best) {
      NodeId lowest = 0;
      while (checked[lowest]) ++lowest;
      seed_component(lowest);
      continue;
    }
    checked[best->frontier] = 1;
    t.parent[best->frontier] = best->tree_node;
    t.density[best->frontier] = best->s;
    t.component_id[best->frontier] = static_cast<std::uint32_t>(t.num_components - 1);
    t.insertion_order.push_back(best->frontier);
    tree.push_back(best->frontier);
  }
  return t;
}

/// Uniformly random start node for robustness experiments.
inline NodeId random_start(const Graph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return static_cast<NodeId>(rng() % g.num_nodes());
}

namespace detail {

inline void check_tree_matches(const DensityConnectedTree& t, const Graph& g) {
  if (t.size() != g.num_nodes()) {
    throw Error(ErrorKind::config, "tree has " + std::to_string(t.size()) +
                                       " nodes but graph has " + std::to_string(g.num_nodes()));
  }
  for (NodeId v = 0; v < t.size(); ++v) {
    if (t.parent[v] && !g.has_edge(v, *t.parent[v])) {
      throw Error(ErrorKind::config, "tree edge (" + g.label(v) + ", " + g.label(*t.parent[v]) +
                                         ") is not an edge of the graph");
    }
  }
}

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace detail

/// DOT digraph with arrows from child to parent. Pen width grows linearly
/// with density, from 1 up to 5 for the densest edge; roots are drawn as
/// double circles.
inline std::string export_dot(const DensityConnectedTree& t, const Graph& g) {
  detail::check_tree_matches(t, g);
  double max_density = 0.0;
  for (const auto& d : t.density) {
    if (d) max_density = std::max(max_density, *d);
  }
  std::ostringstream out;
  out << "digraph dct {\n";
  for (NodeId r : t.roots()) {
    out << "  " << detail::dot_quote(g.label(r)) << " [shape=doublecircle];\n";
  }
  for (const auto& e : t.edges()) {
    const double width = max_density > 0.0 ? 1.0 + 4.0 * e.density / max_density : 1.0;
    out << "  " << detail::dot_quote(g.label(e.child)) << " -> "
        << detail::dot_quote(g.label(e.parent)) << " [penwidth=" << format_double(width)
        << ", label=" << detail::dot_quote(format_double(e.density)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

/// "node<TAB>parent<TAB>density" per node in id order; roots have empty
/// parent and density fields.
inline void write_tree_tsv(const DensityConnectedTree& t, const Graph& g, std::ostream& out) {
  detail::check_tree_matches(t, g);
  for (NodeId v = 0; v < t.size(); ++v) {
    out << g.label(v) << '\t';
    if (t.parent[v]) out << g.label(*t.parent[v]) << '\t' << format_double(*t.density[v]);
    else out << '\t';
    out << '\n';
  }
}

}  // namespace dcut
