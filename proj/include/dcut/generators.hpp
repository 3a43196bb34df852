#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dcut/clustering.hpp"
#include "dcut/graph.hpp"

namespace dcut {

enum class ClusterKind { planted, small_world, scale_free };
enum class GenKind { planted, small_world, scale_free, mixed };

/// One planted cluster. `parameter` is the intra-edge probability for
/// planted clusters, the even ring degree k for small-world clusters and the
/// attachment count m for scale-free clusters.
struct ClusterSpec {
  ClusterKind kind = ClusterKind::planted;
  std::size_t size = 0;
  double parameter = 0.0;
};

struct GenSpec {
  GenKind kind = GenKind::planted;
  std::vector<ClusterSpec> clusters;
  std::size_t inter_edges = 0;
  std::uint64_t seed = 0;
  double rewire_probability = 0.2;  // small-world clusters only
};

struct GenResult {
  Graph graph;
  Clustering truth;
  std::size_t intra_edges = 0;
  std::size_t inter_edges = 0;
};

/// Portable random stream: std::mt19937_64 (bit-exact across standard
/// libraries) with bounded integers by rejection sampling and doubles from
/// the top 53 bits, so no implementation-defined distribution is involved.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= limit) return x % bound;
    }
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

inline std::string_view to_string(ClusterKind k) {
  switch (k) {
    case ClusterKind::planted: return "planted";
    case ClusterKind::small_world: return "small_world";
    case ClusterKind::scale_free: return "scale_free";
  }
  return "?";
}

inline std::string_view to_string(GenKind k) {
  switch (k) {
    case GenKind::planted: return "planted";
    case GenKind::small_world: return "small_world";
    case GenKind::scale_free: return "scale_free";
    case GenKind::mixed: return "mixed";
  }
  return "?";
}

inline ClusterKind parse_cluster_kind(std::string_view s) {
  if (s == "planted" || s == "random") return ClusterKind::planted;
  if (s == "small_world" || s == "small-world" || s == "sw") return ClusterKind::small_world;
  if (s == "scale_free" || s == "scale-free" || s == "sf") return ClusterKind::scale_free;
  throw Error(ErrorKind::config, "unknown cluster kind '" + std::string(s) + "'");
}

inline GenKind parse_gen_kind(std::string_view s) {
  if (s == "mixed") return GenKind::mixed;
  switch (parse_cluster_kind(s)) {
    case ClusterKind::planted: return GenKind::planted;
    case ClusterKind::small_world: return GenKind::small_world;
    case ClusterKind::scale_free: return GenKind::scale_free;
  }
  return GenKind::mixed;
}

namespace detail {

inline std::uint64_t pair_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline std::size_t integral_parameter(const ClusterSpec& c) {
  if (c.parameter < 1.0 || c.parameter != std::floor(c.parameter)) {
    throw Error(ErrorKind::config, std::string(to_string(c.kind)) +
                                       " parameter must be a positive integer, got " +
                                       format_double(c.parameter));
  }
  return static_cast<std::size_t>(c.parameter);
}

inline std::size_t cross_pairs(const GenSpec& spec) {
  std::size_t n = 0, same = 0;
  for (const auto& c : spec.clusters) {
    n += c.size;
    same += c.size * c.size;
  }
  return (n * n - same) / 2;
}

inline void validate(const GenSpec& spec) {
  if (spec.clusters.empty()) throw Error(ErrorKind::config, "generator needs at least one cluster");
  if (!(spec.rewire_probability >= 0.0 && spec.rewire_probability <= 1.0)) {
    throw Error(ErrorKind::config, "rewire probability must lie in [0, 1]");
  }
  for (const auto& c : spec.clusters) {
    if (spec.kind != GenKind::mixed &&
        static_cast<int>(c.kind) != static_cast<int>(spec.kind)) {
      throw Error(ErrorKind::config, "cluster kind " + std::string(to_string(c.kind)) +
                                         " in a " + std::string(to_string(spec.kind)) + " spec");
    }
    if (c.size < 1) throw Error(ErrorKind::config, "cluster size must be at least 1");
    switch (c.kind) {
      case ClusterKind::planted:
        if (!(c.parameter > 0.0 && c.parameter <= 1.0)) {
          throw Error(ErrorKind::config,
                      "planted density must lie in (0, 1], got " + format_double(c.parameter));
        }
        break;
      case ClusterKind::small_world: {
        const auto k = integral_parameter(c);
        if (k % 2 != 0) throw Error(ErrorKind::config, "small-world ring degree must be even");
        if (k >= c.size) {
          throw Error(ErrorKind::config, "small-world ring degree " + std::to_string(k) +
                                             " needs more than " + std::to_string(c.size) +
                                             " nodes");
        }
        break;
      }
      case ClusterKind::scale_free: {
        const auto m = integral_parameter(c);
        if (c.size < m + 1) {
          throw Error(ErrorKind::config, "scale-free m=" + std::to_string(m) + " needs at least " +
                                             std::to_string(m + 1) + " nodes per cluster");
        }
        break;
      }
    }
  }
  if (spec.inter_edges > cross_pairs(spec)) {
    throw Error(ErrorKind::config, std::to_string(spec.inter_edges) +
                                       " inter-cluster edges requested but only " +
                                       std::to_string(cross_pairs(spec)) + " node pairs exist");
  }
}

// Each generator appends intra-cluster edges over local ids [0, size).
using EdgeSet = std::set<std::pair<NodeId, NodeId>>;

inline void add_local(EdgeSet& edges, NodeId a, NodeId b) {
  edges.emplace(std::min(a, b), std::max(a, b));
}

inline EdgeSet planted_edges(const ClusterSpec& c, Rng& rng) {
  EdgeSet edges;
  for (NodeId i = 0; i < c.size; ++i) {
    for (NodeId j = i + 1; j < c.size; ++j) {
      if (rng.bernoulli(c.parameter)) edges.emplace(i, j);
    }
  }
  return edges;
}

// Watts-Strogatz: ring lattice, then each lattice edge (u, u+j) has its far
// endpoint moved with probability p to a uniform node not already linked to u.
inline EdgeSet small_world_edges(const ClusterSpec& c, double p, Rng& rng) {
  const auto n = static_cast<NodeId>(c.size);
  const std::size_t half = integral_parameter(c) / 2;
  EdgeSet edges;
  std::vector<std::size_t> degree(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= half; ++j) {
      add_local(edges, u, static_cast<NodeId>((u + j) % n));
    }
  }
  for (NodeId u = 0; u < n; ++u) degree[u] = 2 * half;
  auto linked = [&](NodeId a, NodeId b) { return edges.count({std::min(a, b), std::max(a, b)}) > 0; };
  for (std::size_t j = 1; j <= half; ++j) {
    for (NodeId u = 0; u < n; ++u) {
      if (!rng.bernoulli(p)) continue;
      const auto v = static_cast<NodeId>((u + j) % n);
      if (degree[u] >= n - 1 || !linked(u, v)) continue;
      NodeId w;
      do {
        w = static_cast<NodeId>(rng.below(n));
      } while (w == u || linked(u, w));
      edges.erase({std::min(u, v), std::max(u, v)});
      add_local(edges, u, w);
      --degree[v];
      ++degree[w];
    }
  }
  return edges;
}

// Barabasi-Albert growth on a fully connected core of m + 1 nodes.
inline EdgeSet scale_free_edges(const ClusterSpec& c, Rng& rng) {
  const std::size_t m = integral_parameter(c);
  const auto n = static_cast<NodeId>(c.size);
  EdgeSet edges;
  std::vector<NodeId> endpoints;  // each node once per incident edge
  for (NodeId i = 0; i <= m; ++i) {
    for (NodeId j = i + 1; j <= m; ++j) {
      edges.emplace(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }
  for (auto t = static_cast<NodeId>(m + 1); t < n; ++t) {
    std::set<NodeId> targets;
    while (targets.size() < m) {
      targets.insert(endpoints[rng.below(endpoints.size())]);
    }
    for (NodeId target : targets) {
      edges.emplace(target, t);
      endpoints.push_back(target);
      endpoints.push_back(t);
    }
  }
  return edges;
}

}  // namespace detail

/// Builds the graph described by `spec`. Clusters occupy consecutive node ids
/// in spec order and are generated in that order from one random stream,
/// followed by the inter-cluster edges. Node labels are the decimal ids.
inline GenResult generate(const GenSpec& spec) {
  detail::validate(spec);
  Rng rng(spec.seed);
  GraphBuilder builder;
  std::vector<ClusterId> truth;
  std::size_t n = 0;
  for (const auto& c : spec.clusters) n += c.size;
  for (std::size_t i = 0; i < n; ++i) builder.add_node(std::to_string(i));

  GenResult out;
  NodeId base = 0;
  for (std::size_t ci = 0; ci < spec.clusters.size(); ++ci) {
    const auto& c = spec.clusters[ci];
    detail::EdgeSet local;
    switch (c.kind) {
      case ClusterKind::planted: local = detail::planted_edges(c, rng); break;
      case ClusterKind::small_world:
        local = detail::small_world_edges(c, spec.rewire_probability, rng);
        break;
      case ClusterKind::scale_free: local = detail::scale_free_edges(c, rng); break;
    }
    for (const auto& [a, b] : local) builder.add_edge(base + a, base + b);
    out.intra_edges += local.size();
    truth.insert(truth.end(), c.size, static_cast<ClusterId>(ci));
    base += static_cast<NodeId>(c.size);
  }

  std::unordered_set<std::uint64_t> inter;
  inter.reserve(spec.inter_edges * 2);
  while (inter.size() < spec.inter_edges) {
    const auto u = static_cast<NodeId>(rng.below(n));
    const auto v = static_cast<NodeId>(rng.below(n));
    if (truth[u] == truth[v]) continue;
    if (!inter.insert(detail::pair_key(u, v)).second) continue;
    builder.add_edge(u, v);
  }
  out.inter_edges = inter.size();
  out.graph = std::move(builder).build();
  out.truth = Clustering(std::move(truth));
  return out;
}

namespace detail {

inline GenResult generate_as(const GenSpec& spec, GenKind kind) {
  if (spec.kind != kind) {
    throw Error(ErrorKind::config, "expected a " + std::string(to_string(kind)) + " spec, got " +
                                       std::string(to_string(spec.kind)));
  }
  return generate(spec);
}

}  // namespace detail

inline GenResult gen_planted(const GenSpec& spec) { return detail::generate_as(spec, GenKind::planted); }
inline GenResult gen_small_world(const GenSpec& spec) {
  return detail::generate_as(spec, GenKind::small_world);
}
inline GenResult gen_scale_free(const GenSpec& spec) {
  return detail::generate_as(spec, GenKind::scale_free);
}
inline GenResult gen_mixed(const GenSpec& spec) { return detail::generate_as(spec, GenKind::mixed); }

// Experiment designs -------------------------------------------------------

/// 20 clusters of 50 nodes at intra density 0.6 plus `noise` inter edges.
inline GenSpec noise_design(std::size_t noise, std::uint64_t seed) {
  GenSpec s{GenKind::planted, {}, noise, seed};
  s.clusters.assign(20, {ClusterKind::planted, 50, 0.6});
  return s;
}

/// 10 clusters of 100 nodes whose densities step down by 0.05 from `top`.
inline GenSpec density_ladder(double top, std::uint64_t seed) {
  GenSpec s{GenKind::planted, {}, 5000, seed};
  for (int i = 0; i < 10; ++i) {
    s.clusters.push_back({ClusterKind::planted, 100, std::round((top - 0.05 * i) * 100.0) / 100.0});
  }
  return s;
}

inline GenSpec density_design(std::uint64_t seed) { return density_ladder(0.60, seed); }
inline GenSpec random_network_design(std::uint64_t seed) { return density_ladder(0.55, seed); }

inline GenSpec small_world_design(std::uint64_t seed) {
  GenSpec s{GenKind::small_world, {}, 5000, seed};
  for (int k = 2; k <= 20; k += 2) s.clusters.push_back({ClusterKind::small_world, 100, double(k)});
  return s;
}

inline GenSpec scale_free_design(std::uint64_t seed) {
  GenSpec s{GenKind::scale_free, {}, 5000, seed};
  for (int m = 2; m <= 20; m += 2) s.clusters.push_back({ClusterKind::scale_free, 100, double(m)});
  return s;
}

/// Two random, four small-world and four scale-free clusters of 100 nodes.
inline GenSpec mixed_design(std::uint64_t seed) {
  GenSpec s{GenKind::mixed, {}, 5000, seed};
  s.clusters.push_back({ClusterKind::planted, 100, 0.55});
  s.clusters.push_back({ClusterKind::planted, 100, 0.45});
  for (int k : {8, 12, 16, 20}) s.clusters.push_back({ClusterKind::small_world, 100, double(k)});
  for (int m : {8, 12, 16, 20}) s.clusters.push_back({ClusterKind::scale_free, 100, double(m)});
  return s;
}

/// Runtime design: clusters of 100 nodes at density 0.3, with 1% of all
/// inter-cluster node pairs linked.
inline GenSpec runtime_design(std::size_t num_clusters, std::uint64_t seed) {
  GenSpec s{GenKind::planted, {}, 0, seed};
  s.clusters.assign(num_clusters, {ClusterKind::planted, 100, 0.3});
  s.inter_edges = static_cast<std::size_t>(std::llround(0.01 * double(detail::cross_pairs(s))));
  return s;
}

// Text form ------------------------------------------------------------------

/// Parses "[kind:]size:param[*count]" items separated by commas, e.g.
/// "50:0.6*20" or "planted:100:0.55*2,sw:100:8,sf:100:8".
inline std::vector<ClusterSpec> parse_clusters(std::string_view text, ClusterKind default_kind) {
  std::vector<ClusterSpec> out;
  auto bad = [&](std::string_view item) {
    return Error(ErrorKind::config, "malformed cluster item '" + std::string(item) +
                                        "' (expected [kind:]size:param[*count])");
  };
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) continue;

    std::size_t count = 1;
    if (auto star = item.find('*'); star != std::string_view::npos) {
      auto c = detail::parse_double(item.substr(star + 1));
      if (!c || *c < 1 || *c != std::floor(*c)) throw bad(item);
      count = static_cast<std::size_t>(*c);
      item = item.substr(0, star);
    }
    std::vector<std::string_view> parts;
    for (std::size_t pos = 0;;) {
      auto colon = item.find(':', pos);
      parts.push_back(item.substr(pos, colon == std::string_view::npos ? colon : colon - pos));
      if (colon == std::string_view::npos) break;
      pos = colon + 1;
    }
    ClusterSpec c{default_kind, 0, 0.0};
    if (parts.size() == 3) {
      c.kind = parse_cluster_kind(parts[0]);
      parts.erase(parts.begin());
    }
    if (parts.size() != 2) throw bad(item);
    auto size = detail::parse_double(parts[0]);
    auto param = detail::parse_double(parts[1]);
    if (!size || !param || *size < 1 || *size != std::floor(*size)) throw bad(item);
    c.size = static_cast<std::size_t>(*size);
    c.parameter = *param;
    out.insert(out.end(), count, c);
  }
  return out;
}

inline ClusterKind default_cluster_kind(GenKind k) {
  switch (k) {
    case GenKind::small_world: return ClusterKind::small_world;
    case GenKind::scale_free: return ClusterKind::scale_free;
    default: return ClusterKind::planted;
  }
}

/// key=value lines: kind, clusters, inter_edges, seed, rewire. '#' starts a
/// comment line.
inline GenSpec parse_gen_config(std::istream& in) {
  GenSpec spec;
  std::string clusters_text;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view v = line;
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\r' || v.back() == '\t')) v.remove_suffix(1);
    if (v.empty() || v.front() == '#') continue;
    auto eq = v.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::parse, "config line without '=': " + std::string(v));
    }
    auto key = v.substr(0, eq);
    auto value = v.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.remove_suffix(1);
    while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    auto number = [&]() {
      auto d = detail::parse_double(value);
      if (!d) throw Error(ErrorKind::parse, "bad number for " + std::string(key));
      return *d;
    };
    if (key == "kind") spec.kind = parse_gen_kind(value);
    else if (key == "clusters") clusters_text = value;
    else if (key == "inter_edges") spec.inter_edges = static_cast<std::size_t>(number());
    else if (key == "seed") {
      std::uint64_t seed = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
      if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw Error(ErrorKind::parse, "bad seed '" + std::string(value) + "'");
      }
      spec.seed = seed;
    } else if (key == "rewire") spec.rewire_probability = number();
    else throw Error(ErrorKind::parse, "unknown config key '" + std::string(key) + "'");
  }
  spec.clusters = parse_clusters(clusters_text, default_cluster_kind(spec.kind));
  return spec;
}

}  // namespace dcut
