#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dcut/error.hpp"
#include "dcut/graph.hpp"

namespace dcut {

using ClusterId = std::uint32_t;

/// Total assignment of nodes to cluster ids in [0, k), every id non-empty.
class Clustering {
 public:
  Clustering() = default;

  explicit Clustering(std::vector<ClusterId> assignment) : assignment_(std::move(assignment)) {
    if (assignment_.empty()) {
      return;
    }
    k_ = *std::max_element(assignment_.begin(), assignment_.end()) + std::size_t{1};
    std::vector<std::size_t> sizes(k_, 0);
    for (ClusterId c : assignment_) ++sizes[c];
    for (std::size_t c = 0; c < k_; ++c) {
      if (sizes[c] == 0) {
        throw Error(ErrorKind::config, "cluster id " + std::to_string(c) + " has no members");
      }
    }
  }

  /// Builds a clustering from arbitrary integer labels, relabeling so ids
  /// are ordered by decreasing cluster size, then by smallest member.
  template <typename Label>
  static Clustering canonical(std::span<const Label> labels) {
    std::unordered_map<Label, std::size_t> dense;
    std::vector<std::size_t> first;
    std::vector<std::size_t> size;
    std::vector<std::size_t> raw(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [it, inserted] = dense.try_emplace(labels[i], first.size());
      if (inserted) {
        first.push_back(i);
        size.push_back(0);
      }
      raw[i] = it->second;
      ++size[it->second];
    }
    std::vector<std::size_t> order(first.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (size[a] != size[b]) return size[a] > size[b];
      return first[a] < first[b];
    });
    std::vector<ClusterId> rank(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<ClusterId>(r);
    std::vector<ClusterId> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out[i] = rank[raw[i]];
    return Clustering(std::move(out));
  }

  template <typename Label>
  static Clustering canonical(const std::vector<Label>& labels) {
    return canonical(std::span<const Label>(labels));
  }

  std::size_t size() const noexcept { return assignment_.size(); }
  std::size_t k() const noexcept { return k_; }
  ClusterId operator[](NodeId u) const { return assignment_.at(u); }
  std::span<const ClusterId> assignment() const noexcept { return assignment_; }

  std::vector<std::vector<NodeId>> members() const {
    std::vector<std::vector<NodeId>> out(k_);
    for (NodeId u = 0; u < assignment_.size(); ++u) out[assignment_[u]].push_back(u);
    return out;
  }

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out(k_, 0);
    for (ClusterId c : assignment_) ++out[c];
    return out;
  }

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<ClusterId> assignment_;
  std::size_t k_ = 0;
};

/// "label<TAB>cluster_id" per node, in dense-id order.
inline void write_clustering(const Graph& g, const Clustering& c, std::ostream& out) {
  if (c.size() != g.num_nodes()) {
    throw Error(ErrorKind::config, "clustering covers " + std::to_string(c.size()) +
                                       " nodes but graph has " + std::to_string(g.num_nodes()));
  }
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    out << g.label(u) << '\t' << c[u] << '\n';
  }
}

/// A label file as read from disk: node labels with their class strings.
/// Class strings need not be integers (e.g. "liberal", "neutral").
struct LabeledPartition {
  std::vector<std::string> nodes;
  std::vector<std::string> classes;
};

inline LabeledPartition read_labels(std::istream& in, std::string_view source = "<stream>") {
  LabeledPartition out;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = detail::split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() != 2) {
      throw Error(ErrorKind::parse, std::string(source) + ":" + std::to_string(lineno) +
                                        ": expected 'label<TAB>cluster'");
    }
    if (!seen.emplace(std::string(fields[0]), out.nodes.size()).second) {
      throw Error(ErrorKind::parse, std::string(source) + ":" + std::to_string(lineno) +
                                        ": duplicate node '" + std::string(fields[0]) + "'");
    }
    out.nodes.emplace_back(fields[0]);
    out.classes.emplace_back(fields[1]);
  }
  return out;
}

inline LabeledPartition read_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "'");
  return read_labels(in, path.string());
}

/// Expresses `labels` as a Clustering over `node_order`. Every node in the
/// order must appear in the file and vice versa.
inline Clustering align(const LabeledPartition& labels, std::span<const std::string> node_order) {
  if (labels.nodes.size() != node_order.size()) {
    throw Error(ErrorKind::config, "node-set mismatch: " + std::to_string(labels.nodes.size()) +
                                       " labeled nodes vs " + std::to_string(node_order.size()));
  }
  std::unordered_map<std::string_view, std::size_t> pos;
  for (std::size_t i = 0; i < labels.nodes.size(); ++i) pos.emplace(labels.nodes[i], i);
  std::vector<std::string> classes;
  classes.reserve(node_order.size());
  for (const auto& node : node_order) {
    auto it = pos.find(node);
    if (it == pos.end()) {
      throw Error(ErrorKind::config, "node-set mismatch: '" + node + "' has no label");
    }
    classes.push_back(labels.classes[it->second]);
  }
  return Clustering::canonical(classes);
}

}  // namespace dcut
