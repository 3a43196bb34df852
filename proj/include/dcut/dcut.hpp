#pragma once

#include <optional>

#include "dcut/clustering.hpp"
#include "dcut/dct.hpp"
#include "dcut/graph.hpp"
#include "dcut/metrics.hpp"
#include "dcut/partition.hpp"
#include "dcut/similarity.hpp"

namespace dcut {

struct DcutOptions {
  std::size_t k = 2;
  DcutMode mode = DcutMode::tree_edge;
  std::optional<NodeId> start;
};

struct DcutRun {
  DensityConnectedTree tree;
  CutResult cut;
};

/// Similarities, density-connected tree, then k-way cut.
inline DcutRun run_dcut(const Graph& g, const DcutOptions& opts) {
  const SimilarityTable sims(g);
  auto tree = build_dct(g, sims, opts.start);
  auto cut = cut_tree(tree, g, opts.k, opts.mode);
  return {std::move(tree), std::move(cut)};
}

}  // namespace dcut
