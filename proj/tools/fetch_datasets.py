#!/usr/bin/env python3
"""Download the real-world benchmark graphs and convert them for the acceptance suite.

Writes into data/ (or --dest):
  football.edgelist, football_truth.tsv   conference of each team
  polbooks.edgelist, polbooks_truth.tsv   l / n / c political leaning
  netscience.edgelist                     coauthorship network
  power.edgelist                          western US power grid

Alternatively pass --from DIR holding the original .gml files (or the
.zip archives) to convert without network access.
"""

import argparse
import io
import pathlib
import sys
import urllib.request
import zipfile

import networkx as nx

BASE = "http://www-personal.umich.edu/~mejn/netdata/"
DATASETS = {
    # name: (archive, label attribute used as ground truth or None)
    "football": ("football.zip", "value"),
    "polbooks": ("polbooks.zip", "value"),
    "netscience": ("netscience.zip", None),
    "power": ("power.zip", None),
}


def gml_text(name, archive, source):
    if source is not None:
        gml = source / f"{name}.gml"
        if gml.exists():
            return gml.read_text(errors="replace")
        raw = (source / archive).read_bytes()
    else:
        with urllib.request.urlopen(BASE + archive, timeout=60) as r:
            raw = r.read()
    with zipfile.ZipFile(io.BytesIO(raw)) as z:
        member = next(n for n in z.namelist() if n.endswith(".gml"))
        return z.read(member).decode("utf-8", errors="replace")


def parse(text):
    # Some of these files list an edge twice; read as a multigraph and collapse.
    if "multigraph" not in text:
        text = text.replace("graph\n[", "graph\n[\n  multigraph 1", 1).replace(
            "graph [", "graph [\n  multigraph 1", 1)
    g = nx.parse_gml(text, label="id")
    return nx.Graph(g)


def convert(name, truth_attr, text, dest):
    g = parse(text)
    g.remove_edges_from(list(nx.selfloop_edges(g)))
    with open(dest / f"{name}.edgelist", "w") as f:
        f.write(f"# {name}: {g.number_of_nodes()} nodes, {g.number_of_edges()} edges\n")
        for u, v in sorted((min(a, b), max(a, b)) for a, b in g.edges()):
            f.write(f"{u} {v}\n")
    if truth_attr is not None:
        with open(dest / f"{name}_truth.tsv", "w") as f:
            for n in sorted(g.nodes()):
                f.write(f"{n}\t{g.nodes[n][truth_attr]}\n")
    print(f"{name}: {g.number_of_nodes()} nodes, {g.number_of_edges()} edges")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    root = pathlib.Path(__file__).resolve().parent.parent
    ap.add_argument("--dest", type=pathlib.Path, default=root / "data")
    ap.add_argument("--from", dest="source", type=pathlib.Path, help="directory with local .gml/.zip files")
    ap.add_argument("names", nargs="*", default=list(DATASETS), help="subset of datasets")
    args = ap.parse_args()
    args.dest.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in args.names:
        if name not in DATASETS:
            ap.error(f"unknown dataset {name!r}")
        archive, truth = DATASETS[name]
        try:
            convert(name, truth, gml_text(name, archive, args.source), args.dest)
        except Exception as e:  # keep going; the suite skips what is missing
            print(f"{name}: failed ({e})", file=sys.stderr)
            failed += 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
