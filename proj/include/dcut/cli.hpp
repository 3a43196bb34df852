#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dcut/bench.hpp"
#include "dcut/dcut.hpp"
#include "dcut/generators.hpp"

// Command implementations behind the `dcut` executable. Each returns the
// process exit status: 0 on success, 2 for I/O errors, 3 for malformed input
// files and 4 for invalid options.
namespace dcut::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;

struct RunConfig {
  std::filesystem::path input;
  std::size_t k = 2;
  std::filesystem::path output;     // labels; empty means the output stream
  std::filesystem::path tree_out;   // DOT
  std::filesystem::path audit_out;  // cut audit TSV
  DcutMode mode = DcutMode::tree_edge;
  std::optional<std::uint64_t> seed;  // random start node when set
};

inline void validate(const RunConfig& cfg) {
  if (cfg.input.empty()) throw Error(ErrorKind::config, "--input is required");
  if (cfg.k < 1) throw Error(ErrorKind::config, "--k must be at least 1");
  std::set<std::filesystem::path> seen{cfg.input.lexically_normal()};
  for (const auto* p : {&cfg.output, &cfg.tree_out, &cfg.audit_out}) {
    if (p->empty()) continue;
    if (!seen.insert(p->lexically_normal()).second) {
      throw Error(ErrorKind::config, "path '" + p->string() + "' is used twice");
    }
  }
}

namespace detail {

inline int guarded(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const Error& e) {
    err << "dcut: error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    err << "dcut: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

// Writes through `fill` into `path`, or into `fallback` when path is empty.
inline void emit(const std::filesystem::path& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& fill) {
  if (path.empty()) {
    fill(fallback);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path.string() + "'");
  fill(out);
  out.flush();
  if (!out) throw Error(ErrorKind::io, "write to '" + path.string() + "' failed");
}

inline Graph load_reporting(const std::filesystem::path& path, std::ostream& err) {
  LoadStats stats;
  Graph g = load_graph(path, &stats);
  if (stats.self_loops_dropped > 0) {
    err << "dcut: warning: dropped " << stats.self_loops_dropped << " self-loop(s) from "
        << path.string() << '\n';
  }
  return g;
}

}  // namespace detail

/// load -> similarities -> tree -> cut; writes labels and optional extras.
inline int cmd_cluster(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    validate(cfg);
    const Graph g = detail::load_reporting(cfg.input, err);
    DcutOptions opts{cfg.k, cfg.mode, std::nullopt};
    if (cfg.seed) opts.start = random_start(g, *cfg.seed);
    const auto run = run_dcut(g, opts);
    detail::emit(cfg.output, out,
                 [&](std::ostream& o) { write_clustering(g, run.cut.clustering, o); });
    if (!cfg.tree_out.empty()) {
      detail::emit(cfg.tree_out, out, [&](std::ostream& o) { o << export_dot(run.tree, g); });
    }
    if (!cfg.audit_out.empty()) {
      detail::emit(cfg.audit_out, out,
                   [&](std::ostream& o) { write_cut_audit(run.cut.cuts, g, o); });
    }
  });
}

struct EvalConfig {
  std::filesystem::path predicted;
  std::filesystem::path truth;
  std::filesystem::path graph;  // needed for "cc"
  std::vector<std::string> metrics;
};

/// Prints "metric<TAB>value" for each requested metric.
inline int cmd_eval(const EvalConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (cfg.predicted.empty()) throw Error(ErrorKind::config, "--input (predicted labels) is required");
    std::vector<std::string> metrics = cfg.metrics;
    if (metrics.empty()) {
      if (!cfg.truth.empty()) metrics = {"nmi", "ari", "purity"};
      if (!cfg.graph.empty()) metrics.push_back("cc");
    }
    if (metrics.empty()) throw Error(ErrorKind::config, "nothing to evaluate: give --truth or --graph");

    const auto pred_labels = read_labels(cfg.predicted);
    std::optional<Graph> g;
    std::vector<std::string> order = pred_labels.nodes;
    if (!cfg.graph.empty()) {
      g = detail::load_reporting(cfg.graph, err);
      order.assign(g->labels().begin(), g->labels().end());
    }
    const Clustering pred = align(pred_labels, order);
    std::optional<Clustering> truth;
    if (!cfg.truth.empty()) truth = align(read_labels(cfg.truth), order);

    for (const auto& m : metrics) {
      double value = 0.0;
      if (m == "cc") {
        if (!g) throw Error(ErrorKind::config, "metric cc needs --graph");
        value = clustering_coefficient(*g, pred);
      } else if (m == "nmi" || m == "ari" || m == "purity") {
        if (!truth) throw Error(ErrorKind::config, "metric " + m + " needs --truth");
        value = m == "nmi" ? nmi(pred, *truth) : m == "ari" ? ari(pred, *truth) : purity(pred, *truth);
      } else {
        throw Error(ErrorKind::config, "unknown metric '" + m + "' (nmi, ari, purity, cc)");
      }
      out << m << '\t' << format_double(value) << '\n';
    }
  });
}

struct GenConfig {
  GenSpec spec;
  std::filesystem::path output;     // edge list
  std::filesystem::path truth_out;  // ground-truth labels
};

inline int cmd_gen(const GenConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (!cfg.output.empty() && cfg.output == cfg.truth_out) {
      throw Error(ErrorKind::config, "edge list and truth outputs must differ");
    }
    const auto data = generate(cfg.spec);
    detail::emit(cfg.output, out, [&](std::ostream& o) {
      o << "# " << to_string(cfg.spec.kind) << " clusters=" << cfg.spec.clusters.size()
        << " intra_edges=" << data.intra_edges << " inter_edges=" << data.inter_edges
        << " seed=" << cfg.spec.seed << '\n';
      write_edgelist(data.graph, o);
    });
    if (!cfg.truth_out.empty()) {
      detail::emit(cfg.truth_out, out,
                   [&](std::ostream& o) { write_clustering(data.graph, data.truth, o); });
    }
  });
}

struct DumpConfig {
  std::filesystem::path input;
  std::filesystem::path output;
  bool dot = false;
  std::optional<std::uint64_t> seed;
};

/// Tree as "node<TAB>parent<TAB>density" TSV, or DOT with `dot`.
inline int cmd_dump_tree(const DumpConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (cfg.input.empty()) throw Error(ErrorKind::config, "--input is required");
    const Graph g = detail::load_reporting(cfg.input, err);
    std::optional<NodeId> start;
    if (cfg.seed) start = random_start(g, *cfg.seed);
    const auto tree = build_dct(g, start);
    detail::emit(cfg.output, out, [&](std::ostream& o) {
      if (cfg.dot) o << export_dot(tree, g);
      else write_tree_tsv(tree, g, o);
    });
  });
}

/// "u v rho w s" per edge, tab separated.
inline int cmd_dump_sim(const DumpConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (cfg.input.empty()) throw Error(ErrorKind::config, "--input is required");
    const Graph g = detail::load_reporting(cfg.input, err);
    detail::emit(cfg.output, out, [&](std::ostream& o) {
      for (const auto& e : all_similarities(g)) {
        o << g.label(e.u) << '\t' << g.label(e.v) << '\t' << format_double(e.rho) << '\t'
          << format_double(e.weight) << '\t' << format_double(e.s) << '\n';
      }
    });
  });
}

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::optional<std::size_t> k;
  std::uint64_t seed = 1;
  std::size_t reps = 10;
  std::filesystem::path output;
};

inline int cmd_bench(const BenchConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto rows = run_bench(cfg.sizes, cfg.k, cfg.seed, cfg.reps);
    detail::emit(cfg.output, out, [&](std::ostream& o) { write_bench_tsv(rows, o); });
    if (rows.size() >= 2) {
      err << "dcut: log-log runtime exponent " << format_double(loglog_slope(rows)) << '\n';
    }
  });
}

}  // namespace dcut::cli
