"""Spanner edge sets: bottom-layer cliques plus half-cluster matchings.

The graph over a layout contains, deduplicated into one edge set:

* a clique inside every layer-1 cluster,
* for each layer ``i >= 2`` cluster, a matching between every pair of
  layer ``i-1`` half-clusters it fully contains,
* a matching between every pair of top-layer half-clusters.

Matchings pair points by rank (k-th smallest with k-th smallest); when
the two halves differ in size the smaller side is matched completely.
In complete-graph mode the edge set is simply all pairs.
"""

from __future__ import annotations

import json
from itertools import combinations
from pathlib import Path

import numpy as np

from .core import PointSet
from .scheme import HalfClusterRef, LayeredScheme


class SchemeMismatch(ValueError):
    """A graph, point set, or scheme disagree on the number of vertices."""


class OverlappingHalves(ValueError):
    """Matchings are only defined between disjoint half-clusters."""


class SpannerGraph:
    """Undirected graph on vertices 0..n-1 with a deduplicated edge set.

    Edge weights are never stored; any consumer derives them from point
    coordinates. ``provenance`` (optional) maps an edge to the first
    construction rule that produced it.
    """

    def __init__(self, n: int, edges, provenance: dict | None = None):
        self.n = int(n)
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise SchemeMismatch(f"edge ({u}, {v}) outside vertex range [0, {self.n})")
            seen.add((u, v) if u < v else (v, u))
        arr = np.array(sorted(seen), dtype=np.int64).reshape(len(seen), 2)
        arr.flags.writeable = False
        self._edges = arr
        self.provenance = provenance
        self._adjacency = None

    @property
    def edge_count(self) -> int:
        return int(self._edges.shape[0])

    @property
    def edges(self) -> np.ndarray:
        """Edges as a read-only (E, 2) array, u < v, lexicographically sorted."""
        return self._edges

    @property
    def edge_set(self) -> frozenset:
        return frozenset(map(tuple, self._edges.tolist()))

    @property
    def adjacency(self) -> tuple:
        """Per-vertex sorted neighbour lists (plain tuples)."""
        if self._adjacency is None:
            nbrs = [[] for _ in range(self.n)]
            for u, v in self._edges.tolist():
                nbrs[u].append(v)
                nbrs[v].append(u)
            self._adjacency = tuple(tuple(sorted(a)) for a in nbrs)
        return self._adjacency

    def neighbors(self, v: int) -> tuple:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SpannerGraph)
            and self.n == other.n
            and np.array_equal(self._edges, other._edges)
        )

    def __repr__(self) -> str:
        return f"SpannerGraph(n={self.n}, edges={self.edge_count})"


def match_halves(a: HalfClusterRef, b: HalfClusterRef) -> list:
    """Rank-aligned matching between two disjoint half-clusters."""
    if a.lo < b.hi and b.lo < a.hi:
        raise OverlappingHalves(
            f"half-clusters [{a.lo}, {a.hi}) and [{b.lo}, {b.hi}) overlap"
        )
    pairs = []
    for k in range(min(a.size, b.size)):
        u, v = a.lo + k, b.lo + k
        pairs.append((u, v) if u < v else (v, u))
    return pairs


def build_spanner(
    ps: PointSet, scheme: LayeredScheme, with_provenance: bool = False
) -> SpannerGraph:
    """Assemble the deduplicated edge set for a point set and its layout."""
    if ps.n != scheme.n:
        raise SchemeMismatch(f"point set has n={ps.n} but scheme was built for n={scheme.n}")
    n = scheme.n
    edges = set()
    prov = {} if with_provenance else None

    def add(u, v, tag):
        e = (u, v) if u < v else (v, u)
        edges.add(e)
        if prov is not None and e not in prov:
            prov[e] = tag

    if scheme.complete_mode:
        for u, v in combinations(range(n), 2):
            add(u, v, "complete")
        return SpannerGraph(n, edges, prov)

    for c in scheme.layers[0]:
        for u in range(c.lo, c.hi):
            for v in range(u + 1, c.hi):
                add(u, v, "clique-layer-1")

    for layer in range(2, scheme.ell + 1):
        below = scheme.halves[layer - 2]
        tag = f"matching-layer-{layer}"
        for c in scheme.layers[layer - 1]:
            contained = [h for h in below if c.lo <= h.lo and h.hi <= c.hi]
            for ha, hb in combinations(contained, 2):
                for u, v in match_halves(ha, hb):
                    add(u, v, tag)

    for ha, hb in combinations(scheme.halves[scheme.ell - 1], 2):
        for u, v in match_halves(ha, hb):
            add(u, v, "matching-top")

    return SpannerGraph(n, edges, prov)


def edge_count_bound(n: int, ell: int) -> float:
    """Target edge budget ell * n**((ell+2)/(ell+1)) for a depth-ell build."""
    return float(ell) * float(n) ** ((ell + 2) / (ell + 1))


def write_edge_list(graph: SpannerGraph, path: str | Path) -> None:
    """One ``u v`` pair per line, sorted; blank lines and # comments allowed."""
    lines = [f"{u} {v}" for u, v in graph.edges.tolist()]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def read_edge_list(path: str | Path, n: int | None = None) -> SpannerGraph:
    """Read a ``u v`` per line file; n defaults to 1 + the largest endpoint."""
    edges = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        u, v = line.split()
        edges.append((int(u), int(v)))
    if n is None:
        n = 1 + max((max(u, v) for u, v in edges), default=-1)
    return SpannerGraph(n, edges)


def write_graph_json(graph: SpannerGraph, path: str | Path) -> None:
    doc = {"n": graph.n, "edges": [[int(u), int(v)] for u, v in graph.edges.tolist()]}
    Path(path).write_text(json.dumps(doc))


def read_graph_json(path: str | Path) -> SpannerGraph:
    doc = json.loads(Path(path).read_text())
    return SpannerGraph(doc["n"], doc["edges"])
