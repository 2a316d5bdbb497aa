#!/usr/bin/env python3
"""Convert a multiplex edge list (e.g. the CS-Aarhus social network) to the
multilayer text format read by the mlgl CLI (see docs/FORMAT.md).

The edge file has one edge per line: <node> <node> <layer>, comma- or
whitespace-separated; extra columns (weights) are ignored. The optional
attribute file has one <node> <group> row per node and becomes the `labels`
line. Node order in the output is the sorted order of the node ids; layer
order is first appearance in the edge file unless --layer-order is given.

The dataset itself is not bundled; download it from its publishers and run,
for example:

    tools/aucs_to_mlg.py --edges aucs_edgelist.txt --attrs aucs_attrs.txt \
        --drop-unlabeled --out data/aucs.mlg
"""

import argparse
import sys


def split_row(line):
    line = line.split("#", 1)[0].strip().strip('"')
    if not line:
        return None
    fields = [f.strip().strip('"') for f in
              (line.split(",") if "," in line else line.split())]
    return [f for f in fields if f]


def read_edges(path):
    edges = []  # (node, node, layer)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            fields = split_row(raw)
            if fields is None:
                continue
            if len(fields) < 3:
                sys.exit(f"{path}:{lineno}: expected <node> <node> <layer>")
            edges.append((fields[0], fields[1], fields[2]))
    if not edges:
        sys.exit(f"{path}: no edges found")
    return edges


def read_attrs(path):
    groups = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            fields = split_row(raw)
            if fields is None:
                continue
            if len(fields) < 2:
                sys.exit(f"{path}:{lineno}: expected <node> <group>")
            groups[fields[0]] = fields[1]
    return groups


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--edges", required=True, help="multiplex edge list")
    ap.add_argument("--attrs", help="node-to-group table (optional)")
    ap.add_argument("--layer-order",
                    help="comma-separated layer names fixing the output order")
    ap.add_argument("--drop-unlabeled", action="store_true",
                    help="with --attrs, drop nodes that have no group "
                         "(or whose group is 'NA') instead of failing")
    ap.add_argument("--out", required=True, help="output .mlg path")
    args = ap.parse_args()

    edges = read_edges(args.edges)
    groups = read_attrs(args.attrs) if args.attrs else None

    nodes = sorted({u for u, v, _ in edges} | {v for u, v, _ in edges})
    if groups is not None:
        labeled = {n for n in nodes if groups.get(n, "NA") != "NA"}
        if len(labeled) < len(nodes):
            missing = sorted(set(nodes) - labeled)
            if not args.drop_unlabeled:
                sys.exit(f"{len(missing)} nodes have no group "
                         f"(e.g. {missing[:5]}); rerun with --drop-unlabeled "
                         "or complete the attribute table")
            nodes = [n for n in nodes if n in labeled]
            if not nodes:
                sys.exit("no labeled nodes left")

    index = {n: i for i, n in enumerate(nodes)}

    if args.layer_order:
        layer_names = [s.strip() for s in args.layer_order.split(",") if s.strip()]
    else:
        layer_names = []
        for _, _, name in edges:
            if name not in layer_names:
                layer_names.append(name)

    layers = {name: set() for name in layer_names}
    dropped = 0
    for u, v, name in edges:
        if name not in layers:
            sys.exit(f"edge layer '{name}' missing from --layer-order")
        if u not in index or v not in index:
            dropped += 1
            continue
        i, j = index[u], index[v]
        if i == j:
            continue  # self-loops have no place in a simple graph
        layers[name].add((min(i, j), max(i, j)))

    with open(args.out, "w", encoding="utf-8") as out:
        out.write(f"# converted from {args.edges}\n")
        out.write(f"# node order: {' '.join(nodes)}\n")
        out.write(f"nodes {len(nodes)}\n")
        if groups is not None:
            distinct = sorted({groups[n] for n in nodes})
            dense = {name: i for i, name in enumerate(distinct)}
            out.write("labels " + " ".join(str(dense[groups[n]]) for n in nodes) + "\n")
        for name in layer_names:
            out.write(f"layer {name}\n")
            for i, j in sorted(layers[name]):
                out.write(f"edge {i} {j}\n")

    note = f", dropped {dropped} edges at unlabeled nodes" if dropped else ""
    print(f"wrote {len(nodes)} nodes, {len(layer_names)} layers to {args.out}{note}")


if __name__ == "__main__":
    main()
