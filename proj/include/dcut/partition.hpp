#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dcut/clustering.hpp"
#include "dcut/dct.hpp"
#include "dcut/graph.hpp"
#include "dcut/similarity.hpp"

namespace dcut {

/// How the connection strength d(C1, C2) between the two sides of a
/// candidate cut is measured.
enum class DcutMode {
  tree_edge,  // density of the removed tree edge (default)
  cross_sum,  // sum of similarities of all graph edges crossing the cut
};

inline std::string_view to_string(DcutMode mode) {
  return mode == DcutMode::tree_edge ? "tree-edge" : "cross-sum";
}

inline DcutMode parse_dcut_mode(std::string_view s) {
  if (s == "tree-edge") return DcutMode::tree_edge;
  if (s == "cross-sum") return DcutMode::cross_sum;
  throw Error(ErrorKind::config,
              "unknown dcut mode '" + std::string(s) + "' (expected tree-edge or cross-sum)");
}

/// One removed tree edge. edge_density holds the d(C1, C2) that was used,
/// so dcut_value == edge_density / size_small always holds.
struct CutRecord {
  NodeId child;
  NodeId parent;
  double edge_density;
  std::size_t size_small;
  std::size_t size_large;
  double dcut_value;

  friend bool operator==(const CutRecord&, const CutRecord&) = default;
};

struct CutResult {
  Clustering clustering;
  std::vector<CutRecord> cuts;
};

/// Density connecting two parts, normalized by the smaller part.
inline double dcut_value(double density, std::size_t n1, std::size_t n2) {
  if (n1 == 0 || n2 == 0) {
    throw Error(ErrorKind::config, "dcut_value needs two non-empty parts");
  }
  if (!(density > 0.0)) {
    throw Error(ErrorKind::config, "dcut_value needs a positive density");
  }
  return density / static_cast<double>(std::min(n1, n2));
}

namespace detail {

struct CutCandidate {
  double value;
  NodeId child;
  double density;
  std::size_t small;
  std::size_t large;

  bool beats(const CutCandidate& o) const {
    if (value != o.value) return value < o.value;
    return child < o.child;
  }
};

inline void check_cut_k(const DensityConnectedTree& t, std::size_t k) {
  if (k < std::max<std::size_t>(t.num_components, 1) || k > t.size()) {
    throw Error(ErrorKind::config, "k=" + std::to_string(k) + " out of range [" +
                                       std::to_string(std::max<std::size_t>(t.num_components, 1)) +
                                       ", " + std::to_string(t.size()) + "]");
  }
}

inline CutRecord to_record(const DensityConnectedTree& t, const CutCandidate& c) {
  return {c.child, *t.parent[c.child], c.density, c.small, c.large, c.value};
}

// Greedy cutter with per-component bookkeeping. Each component keeps its
// best candidate cached; a cut re-evaluates only the two resulting parts.
class TreeCutter {
 public:
  TreeCutter(const DensityConnectedTree& t, const Graph& g, DcutMode mode)
      : t_(t), g_(g), mode_(mode), n_(t.size()), adj_(n_), removed_(n_, 0), comp_of_(n_, 0),
        dfs_parent_(n_), sub_(n_), acc_(n_), depth_(n_) {
    for (NodeId v = 0; v < n_; ++v) {
      if (t.parent[v]) {
        adj_[v].push_back(*t.parent[v]);
        adj_[*t.parent[v]].push_back(v);
      }
    }
    if (mode_ == DcutMode::cross_sum) {
      sims_ = SimilarityTable(g);
      log_ = std::max<std::size_t>(1, std::bit_width(n_));
      up_.assign(log_, std::vector<NodeId>(n_));
    }
    comps_.resize(t.num_components);
    for (NodeId v : t.insertion_order) {
      comp_of_[v] = t.component_id[v];
      comps_[t.component_id[v]].nodes.push_back(v);
    }
    for (std::size_t c = 0; c < comps_.size(); ++c) evaluate(c);
  }

  CutResult run(std::size_t k) {
    std::vector<CutRecord> cuts;
    while (comps_.size() < k) {
      std::optional<std::size_t> pick;
      for (std::size_t c = 0; c < comps_.size(); ++c) {
        if (comps_[c].best && (!pick || comps_[c].best->beats(*comps_[*pick].best))) pick = c;
      }
      const CutCandidate chosen = *comps_[*pick].best;
      cuts.push_back(to_record(t_, chosen));
      split(*pick, chosen.child);
    }
    return {Clustering::canonical(comp_of_), std::move(cuts)};
  }

 private:
  struct Component {
    std::vector<NodeId> nodes;
    std::optional<CutCandidate> best;
  };

  bool linked(NodeId a, NodeId b) const {
    // Tree edge between a and b, identified by its child endpoint.
    NodeId child = (t_.parent[a] && *t_.parent[a] == b) ? a : b;
    return !removed_[child];
  }

  NodeId edge_child(NodeId a, NodeId b) const {
    return (t_.parent[a] && *t_.parent[a] == b) ? a : b;
  }

  // Orders the component depth-first from its first node; fills dfs_parent_.
  std::vector<NodeId> dfs_order(NodeId root) {
    std::vector<NodeId> order;
    std::vector<NodeId> stack{root};
    dfs_parent_[root] = root;
    depth_[root] = 0;
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      order.push_back(x);
      for (NodeId y : adj_[x]) {
        if (y == dfs_parent_[x] && x != root) continue;
        if (!linked(x, y)) continue;
        dfs_parent_[y] = x;
        depth_[y] = depth_[x] + 1;
        stack.push_back(y);
      }
    }
    return order;
  }

  NodeId lca(NodeId a, NodeId b) const {
    if (depth_[a] < depth_[b]) std::swap(a, b);
    std::size_t diff = depth_[a] - depth_[b];
    for (std::size_t j = 0; diff; ++j, diff >>= 1) {
      if (diff & 1) a = up_[j][a];
    }
    if (a == b) return a;
    for (std::size_t j = log_; j-- > 0;) {
      if (up_[j][a] != up_[j][b]) {
        a = up_[j][a];
        b = up_[j][b];
      }
    }
    return up_[0][a];
  }

  // Sum of crossing similarities for the edge above each node, left in acc_.
  void accumulate_crossings(std::size_t c, const std::vector<NodeId>& order) {
    for (NodeId x : order) {
      up_[0][x] = dfs_parent_[x];
      acc_[x] = 0.0;
    }
    for (std::size_t j = 1; j < log_; ++j) {
      for (NodeId x : order) up_[j][x] = up_[j - 1][up_[j - 1][x]];
    }
    for (NodeId x : order) {
      auto adj = g_.adjacent(x);
      auto row = sims_.row(x);
      for (std::size_t i = 0; i < adj.size(); ++i) {
        const NodeId y = adj[i];
        if (y <= x || comp_of_[y] != c) continue;
        acc_[x] += row[i];
        acc_[y] += row[i];
        acc_[lca(x, y)] -= 2.0 * row[i];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (*it != order.front()) acc_[dfs_parent_[*it]] += acc_[*it];
    }
  }

  void evaluate(std::size_t c) {
    auto& comp = comps_[c];
    comp.best.reset();
    if (comp.nodes.size() < 2) return;
    const auto order = dfs_order(comp.nodes.front());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      sub_[*it] = 1;
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (*it != order.front()) sub_[dfs_parent_[*it]] += sub_[*it];
    }
    if (mode_ == DcutMode::cross_sum) accumulate_crossings(c, order);
    const std::size_t total = order.size();
    for (NodeId x : order) {
      if (x == order.front()) continue;
      const NodeId child = edge_child(x, dfs_parent_[x]);
      const double d = mode_ == DcutMode::tree_edge ? *t_.density[child] : acc_[x];
      const std::size_t a = sub_[x];
      const std::size_t b = total - a;
      CutCandidate cand{dcut_value(d, a, b), child, d, std::min(a, b), std::max(a, b)};
      if (!comp.best || cand.beats(*comp.best)) comp.best = cand;
    }
  }

  void split(std::size_t c, NodeId child) {
    removed_[child] = 1;
    const std::size_t fresh = comps_.size();
    comps_.emplace_back();
    auto side = dfs_order(child);
    for (NodeId x : side) comp_of_[x] = static_cast<std::uint32_t>(fresh);
    std::erase_if(comps_[c].nodes, [&](NodeId x) { return comp_of_[x] != c; });
    comps_[fresh].nodes = std::move(side);
    evaluate(c);
    evaluate(fresh);
  }

  const DensityConnectedTree& t_;
  const Graph& g_;
  DcutMode mode_;
  std::size_t n_;
  std::vector<std::vector<NodeId>> adj_;
  std::vector<char> removed_;
  std::vector<std::uint32_t> comp_of_;
  std::vector<Component> comps_;
  std::vector<NodeId> dfs_parent_;
  std::vector<std::size_t> sub_;
  std::vector<double> acc_;
  std::vector<std::size_t> depth_;
  SimilarityTable sims_;
  std::size_t log_ = 0;
  std::vector<std::vector<NodeId>> up_;
};

}  // namespace detail

/// Removes k - #components tree edges, each time the one with the globally
/// smallest Dcut value (ties: smaller child id). Cluster ids are ordered by
/// decreasing size, then smallest member.
inline CutResult cut_tree(const DensityConnectedTree& t, const Graph& g, std::size_t k,
                          DcutMode mode = DcutMode::tree_edge) {
  detail::check_tree_matches(t, g);
  detail::check_cut_k(t, k);
  return detail::TreeCutter(t, g, mode).run(k);
}

inline constexpr std::size_t kExhaustiveMaxNodes = 64;

/// Reference implementation of cut_tree: every round recomputes components
/// and, for every remaining edge, the side sizes by explicit traversal.
inline CutResult cut_tree_exhaustive(const DensityConnectedTree& t, const Graph& g, std::size_t k,
                                     DcutMode mode = DcutMode::tree_edge) {
  detail::check_tree_matches(t, g);
  if (t.size() > kExhaustiveMaxNodes) {
    throw Error(ErrorKind::config, "cut_tree_exhaustive is limited to " +
                                       std::to_string(kExhaustiveMaxNodes) + " nodes");
  }
  detail::check_cut_k(t, k);
  const std::size_t n = t.size();
  std::vector<char> removed(n, 0);

  // Nodes reachable from `from` over remaining edges, never crossing `blocked`.
  auto reach = [&](NodeId from, std::optional<NodeId> blocked) {
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (NodeId y = 0; y < n; ++y) {
        if (seen[y]) continue;
        NodeId child;
        if (t.parent[x] && *t.parent[x] == y) child = x;
        else if (t.parent[y] && *t.parent[y] == x) child = y;
        else continue;
        if (removed[child] || (blocked && child == *blocked)) continue;
        seen[y] = 1;
        stack.push_back(y);
      }
    }
    return seen;
  };

  std::vector<CutRecord> cuts;
  std::size_t components = t.num_components;
  while (components < k) {
    std::optional<detail::CutCandidate> best;
    for (NodeId c = 0; c < n; ++c) {
      if (!t.parent[c] || removed[c]) continue;
      const auto whole = reach(c, std::nullopt);
      const auto side = reach(c, c);
      std::size_t a = 0, total = 0;
      for (NodeId x = 0; x < n; ++x) {
        a += side[x];
        total += whole[x];
      }
      double d = *t.density[c];
      if (mode == DcutMode::cross_sum) {
        d = 0.0;
        for (NodeId x = 0; x < n; ++x) {
          if (!side[x]) continue;
          for (NodeId y : g.adjacent(x)) {
            if (whole[y] && !side[y]) d += node_similarity(g, x, y);
          }
        }
      }
      detail::CutCandidate cand{dcut_value(d, a, total - a), c, d, std::min(a, total - a),
                                std::max(a, total - a)};
      if (!best || cand.beats(*best)) best = cand;
    }
    removed[best->child] = 1;
    cuts.push_back(detail::to_record(t, *best));
    ++components;
  }

  std::vector<std::int64_t> label(n, -1);
  std::int64_t next = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (label[v] >= 0) continue;
    const auto seen = reach(v, std::nullopt);
    for (NodeId x = 0; x < n; ++x) {
      if (seen[x]) label[x] = next;
    }
    ++next;
  }
  return {Clustering::canonical(label), std::move(cuts)};
}

/// Audit trail: "child<TAB>parent<TAB>density<TAB>n_small<TAB>n_large<TAB>dcut".
inline void write_cut_audit(const std::vector<CutRecord>& cuts, const Graph& g, std::ostream& out) {
  for (const auto& c : cuts) {
    out << g.label(c.child) << '\t' << g.label(c.parent) << '\t' << format_double(c.edge_density)
        << '\t' << c.size_small << '\t' << c.size_large << '\t' << format_double(c.dcut_value)
        << '\n';
  }
}

}  // namespace dcut
