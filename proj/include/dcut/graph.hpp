#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dcut/error.hpp"

namespace dcut {

using NodeId = std::uint32_t;

/// Immutable undirected weighted graph in compressed adjacency form.
///
/// Every undirected edge {u,v} is stored twice, once in each endpoint's
/// neighbor list. Neighbor lists are sorted by NodeId, contain no self-loops
/// and no duplicates, and all weights are strictly positive. Nodes carry the
/// string label they were ingested with; ids are dense and follow
/// first-appearance order.
class Graph {
 public:
  Graph() = default;

  std::size_t num_nodes() const noexcept { return labels_.size(); }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  /// Open neighborhood of u (u itself excluded), sorted ascending.
  std::span<const NodeId> adjacent(NodeId u) const {
    check(u);
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }

  /// Weights parallel to adjacent(u).
  std::span<const double> weights(NodeId u) const {
    check(u);
    return {weights_.data() + offsets_[u], weights_.data() + offsets_[u + 1]};
  }

  std::size_t degree(NodeId u) const {
    check(u);
    return offsets_[u + 1] - offsets_[u];
  }

  /// Closed neighborhood: adjacent nodes plus u itself, sorted ascending.
  std::vector<NodeId> neighbors(NodeId u) const {
    auto adj = adjacent(u);
    std::vector<NodeId> out;
    out.reserve(adj.size() + 1);
    auto split = std::lower_bound(adj.begin(), adj.end(), u);
    out.insert(out.end(), adj.begin(), split);
    out.push_back(u);
    out.insert(out.end(), split, adj.end());
    return out;
  }

  /// Position of v inside u's neighbor list, if adjacent.
  std::optional<std::size_t> find_slot(NodeId u, NodeId v) const {
    auto adj = adjacent(u);
    check(v);
    auto it = std::lower_bound(adj.begin(), adj.end(), v);
    if (it == adj.end() || *it != v) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - adj.begin());
  }

  bool has_edge(NodeId u, NodeId v) const { return find_slot(u, v).has_value(); }

  std::optional<double> weight(NodeId u, NodeId v) const {
    auto slot = find_slot(u, v);
    if (!slot) {
      return std::nullopt;
    }
    return weights_[offsets_[u] + *slot];
  }

  /// Global index of the first adjacency slot of u; slots of u are
  /// [slot_offset(u), slot_offset(u + 1)).
  std::size_t slot_offset(NodeId u) const { return offsets_[u]; }
  std::size_t num_slots() const noexcept { return targets_.size(); }

  const std::string& label(NodeId u) const {
    check(u);
    return labels_[u];
  }
  std::span<const std::string> labels() const noexcept { return labels_; }

  std::optional<NodeId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.offsets_ == b.offsets_ &&
           a.targets_ == b.targets_ && a.weights_ == b.weights_;
  }

 private:
  friend class GraphBuilder;

  void check(NodeId u) const {
    if (u >= labels_.size()) {
      throw Error(ErrorKind::config, "node id " + std::to_string(u) +
                                         " out of range (graph has " +
                                         std::to_string(labels_.size()) + " nodes)");
    }
  }

  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

/// Accumulates labeled edges and produces a Graph. Duplicate undirected
/// edges have their weights summed in insertion order; self-loops register
/// the node but are otherwise dropped.
class GraphBuilder {
 public:
  NodeId add_node(std::string_view label) {
    auto [it, inserted] =
        index_.try_emplace(std::string(label), static_cast<NodeId>(labels_.size()));
    if (inserted) {
      labels_.emplace_back(label);
    }
    return it->second;
  }

  void add_edge(std::string_view u, std::string_view v, double w = 1.0) {
    NodeId a = add_node(u);
    NodeId b = add_node(v);
    add_edge(a, b, w);
  }

  void add_edge(NodeId u, NodeId v, double w = 1.0) {
    if (u >= labels_.size() || v >= labels_.size()) {
      throw Error(ErrorKind::config, "edge endpoint not registered with builder");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::parse, "edge weight must be a positive finite number");
    }
    if (u == v) {
      ++self_loops_;
      return;
    }
    edges_.push_back({std::min(u, v), std::max(u, v), w});
  }

  std::size_t num_nodes() const noexcept { return labels_.size(); }
  std::size_t self_loops_dropped() const noexcept { return self_loops_; }

  Graph build() && {
    std::stable_sort(edges_.begin(), edges_.end(), [](const Pending& a, const Pending& b) {
      return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    std::vector<Pending> merged;
    merged.reserve(edges_.size());
    for (const auto& e : edges_) {
      if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
        merged.back().w += e.w;
      } else {
        merged.push_back(e);
      }
    }

    Graph g;
    const std::size_t n = labels_.size();
    std::vector<std::size_t> deg(n, 0);
    for (const auto& e : merged) {
      ++deg[e.u];
      ++deg[e.v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      g.offsets_[i + 1] = g.offsets_[i] + deg[i];
    }
    g.targets_.resize(g.offsets_[n]);
    g.weights_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // First pass places each node's lower neighbors, second its higher ones;
    // merged is sorted by (u, v), so both passes append in ascending order.
    for (const auto& e : merged) {
      g.targets_[cursor[e.v]] = e.u;
      g.weights_[cursor[e.v]++] = e.w;
    }
    for (const auto& e : merged) {
      g.targets_[cursor[e.u]] = e.v;
      g.weights_[cursor[e.u]++] = e.w;
    }
    g.labels_ = std::move(labels_);
    g.index_ = std::move(index_);
    return g;
  }

 private:
  struct Pending {
    NodeId u;
    NodeId v;
    double w;
  };

  std::vector<Pending> edges_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::size_t self_loops_ = 0;
};

struct LoadStats {
  std::size_t lines = 0;
  std::size_t self_loops_dropped = 0;
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<double> parse_double(std::string_view s) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace detail

/// Reads a whitespace-separated edge list ("u v" or "u v w" per line).
/// Lines whose first non-blank character is '#' and blank lines are skipped.
inline Graph read_edgelist(std::istream& in, std::string_view source = "<stream>",
                           LoadStats* stats = nullptr) {
  GraphBuilder builder;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = detail::split_fields(line);
    if (fields.empty() || fields.front().front() == '#') {
      continue;
    }
    auto where = [&] { return std::string(source) + ":" + std::to_string(lineno) + ": "; };
    if (fields.size() != 2 && fields.size() != 3) {
      throw Error(ErrorKind::parse, where() + "expected 'u v' or 'u v w', got " +
                                        std::to_string(fields.size()) + " fields");
    }
    double w = 1.0;
    if (fields.size() == 3) {
      auto parsed = detail::parse_double(fields[2]);
      if (!parsed) {
        throw Error(ErrorKind::parse, where() + "malformed weight '" + std::string(fields[2]) + "'");
      }
      if (!(*parsed > 0.0) || !std::isfinite(*parsed)) {
        throw Error(ErrorKind::parse,
                    where() + "weight must be positive, got '" + std::string(fields[2]) + "'");
      }
      w = *parsed;
    }
    builder.add_edge(fields[0], fields[1], w);
  }
  if (in.bad()) {
    throw Error(ErrorKind::io, std::string(source) + ": read failed");
  }
  if (builder.num_nodes() == 0) {
    throw Error(ErrorKind::parse, std::string(source) + ": empty graph (no edges)");
  }
  if (stats) {
    stats->lines = lineno;
    stats->self_loops_dropped = builder.self_loops_dropped();
  }
  return std::move(builder).build();
}

inline Graph load_graph(const std::filesystem::path& path, LoadStats* stats = nullptr) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open '" + path.string() + "'");
  }
  return read_edgelist(in, path.string(), stats);
}

/// Writes g so that read_edgelist reproduces it exactly, including the
/// label-to-id order. A node with no lower-id neighbor is introduced with a
/// "x x" line, which the reader registers and then drops as a self-loop.
inline void write_edgelist(const Graph& g, std::ostream& out) {
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    auto adj = g.adjacent(v);
    auto w = g.weights(v);
    if (adj.empty() || adj.front() > v) {
      out << g.label(v) << ' ' << g.label(v) << '\n';
    }
    for (std::size_t i = 0; i < adj.size() && adj[i] < v; ++i) {
      out << g.label(v) << ' ' << g.label(adj[i]) << ' ' << format_double(w[i]) << '\n';
    }
  }
}

}  // namespace dcut
