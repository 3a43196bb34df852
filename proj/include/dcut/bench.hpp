#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "dcut/dcut.hpp"
#include "dcut/generators.hpp"

namespace dcut {

struct BenchRow {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t reps = 0;
  double mean_seconds = 0.0;
  double stddev_seconds = 0.0;
};

/// Times the clustering pipeline on runtime_design graphs. Each size is a
/// node count and must be a positive multiple of 100 (one cluster per 100
/// nodes); k defaults to the planted cluster count.
inline std::vector<BenchRow> run_bench(std::span<const std::size_t> sizes,
                                       std::optional<std::size_t> k, std::uint64_t seed,
                                       std::size_t reps = 10) {
  if (reps == 0) throw Error(ErrorKind::config, "bench needs at least one repetition");
  std::vector<BenchRow> rows;
  for (std::size_t nodes : sizes) {
    if (nodes == 0 || nodes % 100 != 0) {
      throw Error(ErrorKind::config,
                  "bench size " + std::to_string(nodes) + " is not a positive multiple of 100");
    }
    const auto data = generate(runtime_design(nodes / 100, seed));
    const DcutOptions opts{k.value_or(nodes / 100), DcutMode::tree_edge, std::nullopt};
    std::vector<double> times;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      auto run = run_dcut(data.graph, opts);
      const auto t1 = std::chrono::steady_clock::now();
      if (run.cut.clustering.k() != opts.k) throw Error(ErrorKind::config, "bench run lost clusters");
      times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    double mean = 0.0;
    for (double t : times) mean += t;
    mean /= double(times.size());
    double var = 0.0;
    for (double t : times) var += (t - mean) * (t - mean);
    const double sd = times.size() > 1 ? std::sqrt(var / double(times.size() - 1)) : 0.0;
    rows.push_back({nodes, data.graph.num_edges(), reps, mean, sd});
  }
  return rows;
}

/// Least-squares slope of log(mean time) against log(size).
inline double loglog_slope(std::span<const BenchRow> rows, bool by_edges = false) {
  if (rows.size() < 2) throw Error(ErrorKind::config, "slope needs at least two sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(double(by_edges ? r.edges : r.nodes));
    const double y = std::log(r.mean_seconds);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = double(rows.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline void write_bench_tsv(std::span<const BenchRow> rows, std::ostream& out) {
  out << "nodes\tedges\treps\tmean_s\tstddev_s\n";
  for (const auto& r : rows) {
    out << r.nodes << '\t' << r.edges << '\t' << r.reps << '\t' << format_double(r.mean_seconds)
        << '\t' << format_double(r.stddev_seconds) << '\n';
  }
}

}  // namespace dcut
