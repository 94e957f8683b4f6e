"""Convert a GML network (e.g. the dolphin or political-blog files) to a plain edge list.

Directions and multi-edges are dropped; node labels become tokens.
Needs networkx, which the package itself does not depend on.
"""

import argparse
import re

import networkx as nx


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("gml")
    ap.add_argument("out")
    args = ap.parse_args()
    with open(args.gml) as fh:
        text = fh.read()
    if "multigraph" not in text:
        # some published files repeat edges without declaring it, which networkx rejects
        text = re.sub(r"\bgraph\s*\[", "graph [\n  multigraph 1", text, count=1)
    g = nx.Graph(nx.parse_gml(text, label="id"))
    with open(args.out, "w") as fh:
        for u, v in g.edges():
            if u != v:
                fh.write(f"{u} {v}\n")


if __name__ == "__main__":
    main()
