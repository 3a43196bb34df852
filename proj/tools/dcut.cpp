#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "dcut/cli.hpp"

namespace {

dcut::GenSpec preset_spec(const std::string& name, std::size_t noise, std::uint64_t seed) {
  using namespace dcut;
  if (name == "noise") return noise_design(noise, seed);
  if (name == "density") return density_design(seed);
  if (name == "random") return random_network_design(seed);
  if (name == "small-world") return small_world_design(seed);
  if (name == "scale-free") return scale_free_design(seed);
  if (name == "mixed") return mixed_design(seed);
  throw Error(ErrorKind::config, "unknown preset '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density-cut graph clustering"};
  app.footer(
      "Exit codes: 0 success, 1 internal error, 2 I/O error, 3 malformed input, "
      "4 invalid options.");
  app.require_subcommand(1);

  dcut::cli::RunConfig run;
  std::string mode = "tree-edge";
  std::optional<std::uint64_t> run_seed;
  auto* cluster = app.add_subcommand("cluster", "Cluster an edge list into k groups");
  cluster->add_option("--input", run.input, "Edge list (u v [w] per line)")->required();
  cluster->add_option("--k", run.k, "Number of clusters")->required();
  cluster->add_option("--output", run.output, "Label file (default: stdout)");
  cluster->add_option("--tree-out", run.tree_out, "Write the tree as DOT");
  cluster->add_option("--audit-out", run.audit_out, "Write the cut audit TSV");
  cluster->add_option("--dcut-mode", mode, "tree-edge (default) or cross-sum");
  cluster->add_option("--seed", run_seed, "Start the tree from a random node");

  dcut::cli::EvalConfig eval;
  std::string metrics;
  auto* evalc = app.add_subcommand("eval", "Score a label file");
  evalc->add_option("--input", eval.predicted, "Predicted labels (label<TAB>cluster)")->required();
  evalc->add_option("--truth", eval.truth, "Ground-truth labels");
  evalc->add_option("--graph", eval.graph, "Edge list, required for the cc metric");
  evalc->add_option("--metrics", metrics, "Comma-separated: nmi,ari,purity,cc");

  dcut::cli::GenConfig gen;
  std::string kind = "planted", clusters, preset, config;
  std::size_t inter = 0;
  std::uint64_t gen_seed = 1;
  double rewire = 0.2;
  auto* genc = app.add_subcommand("gen", "Generate a synthetic clustered graph");
  genc->add_option("--kind", kind, "planted, small_world, scale_free or mixed");
  genc->add_option("--clusters", clusters, "[kind:]size:param[*count], comma separated");
  genc->add_option("--inter-edges", inter, "Number of inter-cluster edges");
  genc->add_option("--seed", gen_seed, "Random seed");
  genc->add_option("--rewire", rewire, "Small-world rewiring probability");
  genc->add_option("--config", config, "key=value spec file (overrides the flags above)");
  genc->add_option("--preset", preset, "noise, density, random, small-world, scale-free, mixed");
  genc->add_option("--output", gen.output, "Edge list (default: stdout)");
  genc->add_option("--truth", gen.truth_out, "Ground-truth label file");

  dcut::cli::DumpConfig dump;
  std::optional<std::uint64_t> dump_seed;
  auto* tree = app.add_subcommand("dump-tree", "Print the density-connected tree");
  tree->add_option("--input", dump.input, "Edge list")->required();
  tree->add_option("--output", dump.output, "Destination (default: stdout)");
  tree->add_flag("--dot", dump.dot, "Emit DOT instead of TSV");
  tree->add_option("--seed", dump_seed, "Start the tree from a random node");

  dcut::cli::DumpConfig sim;
  auto* simc = app.add_subcommand("dump-sim", "Print per-edge similarities (u v rho w s)");
  simc->add_option("--input", sim.input, "Edge list")->required();
  simc->add_option("--output", sim.output, "Destination (default: stdout)");

  dcut::cli::BenchConfig bench;
  std::optional<std::size_t> bench_k;
  auto* benchc = app.add_subcommand("bench", "Time the pipeline on synthetic graphs");
  benchc->add_option("--sizes", bench.sizes, "Node counts (multiples of 100)");
  benchc->add_option("--k", bench_k, "Clusters to cut (default: planted count)");
  benchc->add_option("--seed", bench.seed, "Random seed");
  benchc->add_option("--reps", bench.reps, "Repetitions per size");
  benchc->add_option("--output", bench.output, "Destination (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(dcut::ErrorKind::config);
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (*cluster) {
    try {
      run.mode = dcut::parse_dcut_mode(mode);
    } catch (const dcut::Error& e) {
      err << "dcut: error: " << e.what() << '\n';
      return static_cast<int>(e.kind());
    }
    run.seed = run_seed;
    return dcut::cli::cmd_cluster(run, out, err);
  }
  if (*evalc) {
    for (std::size_t pos = 0; pos < metrics.size();) {
      auto comma = metrics.find(',', pos);
      if (comma == std::string::npos) comma = metrics.size();
      if (comma > pos) eval.metrics.push_back(metrics.substr(pos, comma - pos));
      pos = comma + 1;
    }
    return dcut::cli::cmd_eval(eval, out, err);
  }
  if (*genc) {
    try {
      if (!config.empty()) {
        std::ifstream in(config);
        if (!in) throw dcut::Error(dcut::ErrorKind::io, "cannot open '" + config + "'");
        gen.spec = dcut::parse_gen_config(in);
      } else if (!preset.empty()) {
        gen.spec = preset_spec(preset, inter, gen_seed);
      } else {
        gen.spec.kind = dcut::parse_gen_kind(kind);
        gen.spec.clusters = dcut::parse_clusters(clusters, dcut::default_cluster_kind(gen.spec.kind));
        gen.spec.inter_edges = inter;
        gen.spec.seed = gen_seed;
        gen.spec.rewire_probability = rewire;
      }
    } catch (const dcut::Error& e) {
      err << "dcut: error: " << e.what() << '\n';
      return static_cast<int>(e.kind());
    }
    return dcut::cli::cmd_gen(gen, out, err);
  }
  if (*tree) {
    dump.seed = dump_seed;
    return dcut::cli::cmd_dump_tree(dump, out, err);
  }
  if (*simc) return dcut::cli::cmd_dump_sim(sim, out, err);
  if (*benchc) {
    bench.k = bench_k;
    return dcut::cli::cmd_bench(bench, out, err);
  }
  return dcut::cli::kExitInternal;
}
