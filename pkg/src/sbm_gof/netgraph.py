"""Undirected simple graphs stored as dense 0/1 adjacency matrices.

Also handles edge-list ingestion, connected components and degree summaries
for the real-network workflows.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


class GraphError(ValueError):
    """Invalid adjacency matrix or unreadable edge list."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on ``n`` nodes.

    ``adjacency`` is a read-only ``int8`` array, symmetric with zero diagonal.
    ``node_names`` keeps the original identifiers when the graph came from a
    file.
    """

    adjacency: np.ndarray
    node_names: tuple[str, ...] | None = None

    def __post_init__(self):
        a = np.array(self.adjacency, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise GraphError(f"adjacency must be a non-empty square matrix, got shape {a.shape}")
        if not np.isin(a, (0, 1)).all():
            raise GraphError("adjacency entries must be 0 or 1")
        a = a.astype(np.int8)
        if not np.array_equal(a, a.T):
            raise GraphError("adjacency must be symmetric")
        if a.diagonal().any():
            raise GraphError("self-loops are not allowed (diagonal must be zero)")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)
        if self.node_names is not None:
            names = tuple(str(x) for x in self.node_names)
            if len(names) != a.shape[0]:
                raise GraphError("node_names length does not match adjacency size")
            object.__setattr__(self, "node_names", names)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def n_edges(self) -> int:
        return int(np.triu(self.adjacency, 1).sum())

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(i, j)`` index pairs with ``i < j``, row-major order."""
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(i.tolist(), j.tolist()))

    def subgraph(self, nodes) -> Graph:
        idx = np.asarray(nodes, dtype=int)
        names = None if self.node_names is None else tuple(self.node_names[i] for i in idx)
        return Graph(self.adjacency[np.ix_(idx, idx)], names)

    def permute(self, perm) -> Graph:
        """Relabel nodes so that new node ``i`` is old node ``perm[i]``."""
        return self.subgraph(perm)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency) and self.node_names == other.node_names

    __hash__ = None


def from_edges(n: int, edges, node_names=None) -> Graph:
    """Build a graph from index pairs; duplicates collapse, self-loops are dropped."""
    a = np.zeros((n, n), dtype=np.int8)
    for i, j in edges:
        if i != j:
            a[i, j] = a[j, i] = 1
    return Graph(a, node_names)


def read_edge_list(path) -> Graph:
    """Parse a whitespace-separated edge list.

    Lines starting with ``#`` and blank lines are skipped. Node tokens are
    arbitrary strings, indexed in order of first appearance.
    """
    index: dict[str, int] = {}
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            tokens = s.split()
            if len(tokens) != 2:
                raise GraphError(f"{path}:{lineno}: expected 2 node tokens, got {len(tokens)}")
            for tok in tokens:
                if tok not in index:
                    index[tok] = len(index)
            pairs.append((index[tokens[0]], index[tokens[1]]))
    if not pairs:
        raise GraphError(f"{path}: no edges")
    return from_edges(len(index), pairs, node_names=list(index))


def write_edge_list(g: Graph, path) -> None:
    """Write one ``i j`` line per edge with ``i < j``, using node names if present."""
    names = g.node_names or tuple(str(i) for i in range(g.n))
    with open(path, "w", encoding="utf-8") as fh:
        for i, j in g.edges():
            fh.write(f"{names[i]} {names[j]}\n")


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component.

    Ties go to the component containing the smallest node index. Node order
    within the component is preserved.
    """
    _, comp = connected_components(csr_matrix(g.adjacency), directed=False)
    sizes = np.bincount(comp)
    first = np.full(sizes.size, g.n)
    np.minimum.at(first, comp, np.arange(g.n))
    best = min(range(sizes.size), key=lambda c: (-sizes[c], first[c]))
    return g.subgraph(np.flatnonzero(comp == best))


@dataclass(frozen=True)
class DegreeHistogram:
    degrees: tuple[int, ...]
    counts: dict[int, int] = field(default_factory=dict)

    def to_csv(self, path_or_file) -> None:
        rows = sorted(self.counts.items())
        if isinstance(path_or_file, (str, Path)):
            with open(path_or_file, "w", newline="", encoding="utf-8") as fh:
                _write_counts(fh, rows)
        else:
            _write_counts(path_or_file, rows)


def _write_counts(fh, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["degree", "count"])
    w.writerows(rows)


def degree_histogram(g: Graph) -> DegreeHistogram:
    degrees = g.adjacency.sum(axis=1, dtype=np.int64).tolist()
    return DegreeHistogram(tuple(degrees), dict(Counter(degrees)))
