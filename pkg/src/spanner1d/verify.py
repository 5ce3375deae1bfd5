"""Exactness verification under failures.

On sorted coordinates a path realises the true distance between two
vertices exactly when its vertex indices move strictly monotonically
(every detour adds at least one doubled gap). The primary check is
therefore purely combinatorial: after deleting failed vertices, every
surviving pair outside the ignored set must be joined by an
index-monotone path. A weighted shortest-path oracle (independent
numeric route) cross-checks sampled pairs and prices violations.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .builder import SchemeMismatch, SpannerGraph
from .closure import compute_closure, within_spec_bound
from .core import PointSet, check_failures
from .scheme import LayeredScheme

ORACLE_RELATIVE_TOLERANCE = 1e-12


class TooLarge(ValueError):
    """The brute-force oracle refuses instances past its size guard."""


class VertexRemoved(ValueError):
    """A removed vertex was used as a query source."""


@dataclass(frozen=True)
class AliveView:
    """Read-only view of a graph with a set of vertices deleted."""

    graph: SpannerGraph
    removed: frozenset

    @property
    def n(self) -> int:
        return self.graph.n

    def alive(self, v: int) -> bool:
        return v not in self.removed

    def neighbors(self, v: int) -> tuple:
        return tuple(w for w in self.graph.adjacency[v] if w not in self.removed)


def exact_reach_from(view: AliveView, x: int) -> set:
    """All alive vertices reachable from x along index-monotone paths."""
    if not view.alive(x):
        raise VertexRemoved(f"vertex {x} is removed")
    removed = view.removed
    adjacency = view.graph.adjacency
    out = {x}
    for increasing in (True, False):
        stack = [x]
        seen = {x}
        while stack:
            v = stack.pop()
            for w in adjacency[v]:
                if (w > v) == increasing and w != v and w not in removed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        out |= seen
    return out


def _directional_adjacency(graph: SpannerGraph):
    """Cache per-vertex higher-neighbour lists on the graph instance."""
    cached = getattr(graph, "_adj_high", None)
    if cached is None:
        cached = [[] for _ in range(graph.n)]
        for u, v in graph.edges.tolist():
            cached[u].append(v)
        graph._adj_high = cached
    return cached


def _forward_reach(graph: SpannerGraph, alive) -> list:
    """Bitset per vertex of everything reachable by increasing-index paths."""
    adj_high = _directional_adjacency(graph)
    reach = [0] * graph.n
    for x in range(graph.n - 1, -1, -1):
        if not alive[x]:
            continue
        r = 1 << x
        for w in adj_high[x]:
            if alive[w]:
                r |= reach[w]
        reach[x] = r
    return reach


def _bits(value: int):
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


def _oracle_arrays(graph: SpannerGraph):
    cached = getattr(graph, "_oracle_uv", None)
    if cached is None:
        cached = (graph.edges[:, 0].copy(), graph.edges[:, 1].copy())
        graph._oracle_uv = cached
    return cached


def _dijkstra_rows(graph: SpannerGraph, ps: PointSet, removed: frozenset, sources):
    """Shortest-path lengths from each source in the alive subgraph.

    Returns an array of shape (len(sources), n); removed columns are inf.
    """
    u, v = _oracle_arrays(graph)
    if removed:
        dead = np.zeros(graph.n, dtype=bool)
        dead[sorted(removed)] = True
        keep = ~(dead[u] | dead[v])
        u, v = u[keep], v[keep]
    w = np.abs(ps.coords[v] - ps.coords[u])
    mat = csr_matrix(
        (np.concatenate([w, w]), (np.concatenate([u, v]), np.concatenate([v, u]))),
        shape=(graph.n, graph.n),
    )
    return dijkstra(mat, directed=True, indices=np.asarray(sources, dtype=np.int64))


def brute_force_oracle(
    graph: SpannerGraph, ps: PointSet, failures, limit: int = 512
) -> dict:
    """Exact shortest-path length for every alive pair (u < v), inf allowed."""
    if graph.n != ps.n:
        raise SchemeMismatch(f"graph n={graph.n} vs point set n={ps.n}")
    if graph.n > limit:
        raise TooLarge(f"oracle guard: n={graph.n} exceeds limit={limit}")
    fs = check_failures(failures, graph.n)
    alive = [v for v in range(graph.n) if v not in fs]
    if not alive:
        return {}
    rows = _dijkstra_rows(graph, ps, fs, alive)
    out = {}
    for i, x in enumerate(alive):
        row = rows[i]
        for y in alive[i + 1 :]:
            out[(x, y)] = float(row[y])
    return out


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one robustness check; PASS means no violations and bounds hold."""

    n: int
    seed: int
    f_size: int
    f_star_size: int
    pairs_checked: int
    exact_pairs: int
    violations: tuple
    oracle_checked: int
    oracle_mismatches: tuple
    max_stretch_over_ignored: float
    bound_ok: bool
    exhaustive: bool
    strong_variant_ok: bool | None

    @property
    def passed(self) -> bool:
        return not self.violations and not self.oracle_mismatches and self.bound_ok

    def to_json(self) -> str:
        def enc(x):
            if x is None or (isinstance(x, float) and math.isnan(x)):
                return None
            if isinstance(x, float) and math.isinf(x):
                return "inf"
            return x

        doc = {
            "n": self.n,
            "seed": self.seed,
            "f_size": self.f_size,
            "f_star_size": self.f_star_size,
            "pairs_checked": self.pairs_checked,
            "exact_pairs": self.exact_pairs,
            "violations": [[u, v, enc(d)] for u, v, d in self.violations],
            "oracle_checked": self.oracle_checked,
            "oracle_mismatches": [[u, v, enc(d)] for u, v, d in self.oracle_mismatches],
            "max_stretch_over_ignored": enc(self.max_stretch_over_ignored),
            "bound_ok": self.bound_ok,
            "exhaustive": self.exhaustive,
            "strong_variant_ok": self.strong_variant_ok,
            "pass": self.passed,
        }
        return json.dumps(doc, indent=2)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{verdict} n={self.n} seed={self.seed} |F|={self.f_size} "
            f"|F*|={self.f_star_size} pairs={self.pairs_checked} "
            f"violations={len(self.violations)} bound_ok={self.bound_ok}"
        )


def _sample_pairs(rng, pool, count):
    """Seeded distinct-endpoint pairs drawn uniformly from ``pool``."""
    t = len(pool)
    pairs = []
    while len(pairs) < count:
        need = count - len(pairs)
        a = rng.integers(0, t, size=2 * need + 8)
        b = rng.integers(0, t, size=2 * need + 8)
        for i, j in zip(a.tolist(), b.tolist()):
            if i != j:
                x, y = pool[i], pool[j]
                pairs.append((x, y) if x < y else (y, x))
                if len(pairs) == count:
                    break
    return pairs


def _price_pairs(graph, ps, removed, pairs):
    """Shortest-path length per pair, via one multi-source run."""
    sources = sorted({u for u, _ in pairs})
    rows = _dijkstra_rows(graph, ps, removed, sources)
    index = {s: i for i, s in enumerate(sources)}
    return [float(rows[index[u]][v]) for u, v in pairs]


def _check_pairs_exhaustive(reach, targets):
    """Scan all target pairs; returns (pairs, exact, missing_pairs)."""
    pairs = 0
    exact = 0
    missing = []
    mask_above = 0
    for x in reversed(targets):
        pairs += mask_above.bit_count()
        hit = reach[x] & mask_above
        exact += hit.bit_count()
        gone = mask_above & ~reach[x]
        if gone:
            missing.extend((x, y) for y in _bits(gone))
        mask_above |= 1 << x
    return pairs, exact, missing


def verify_robust_spanner(
    graph: SpannerGraph,
    ps: PointSet,
    scheme: LayeredScheme,
    failures,
    *,
    exhaustive_limit: int = 512,
    pair_sample: int = 20_000,
    oracle_sample: int = 500,
    seed: int = 0,
    strong_check: bool = True,
) -> VerificationReport:
    """Check that survivors outside the ignored set keep exact paths.

    All pairs are checked when n <= exhaustive_limit, otherwise
    ``pair_sample`` seeded random pairs. ``oracle_sample`` pairs are
    additionally priced by the numeric oracle and must agree with the
    monotone criterion to within a 1e-12 relative tolerance.
    """
    if not (graph.n == ps.n == scheme.n):
        raise SchemeMismatch(
            f"size mismatch: graph n={graph.n}, points n={ps.n}, scheme n={scheme.n}"
        )
    n = graph.n
    fs = check_failures(failures, n)
    trace = compute_closure(scheme, fs)
    f_star = trace.f_star
    bound_ok = within_spec_bound(trace)

    alive = [v not in fs for v in range(n)]
    targets = [v for v in range(n) if v not in f_star]
    reach = _forward_reach(graph, alive)
    rng = np.random.default_rng(seed)

    exhaustive = n <= exhaustive_limit
    if exhaustive:
        pairs_checked, exact_pairs, missing = _check_pairs_exhaustive(reach, targets)
        strong_pairs = None
    else:
        strong_pairs = (
            _sample_pairs(rng, targets, pair_sample) if len(targets) >= 2 else []
        )
        pairs_checked = len(strong_pairs)
        exact_pairs = 0
        missing = []
        for x, y in strong_pairs:
            if (reach[x] >> y) & 1:
                exact_pairs += 1
            else:
                missing.append((x, y))

    violations = []
    if missing:
        priced = _price_pairs(graph, ps, fs, missing[:512])
        for (x, y), d in zip(missing[:512], priced):
            violations.append((x, y, None if math.isinf(d) else d))
        violations.extend((x, y, None) for x, y in missing[512:])

    oracle_checked = 0
    oracle_mismatches = []
    if oracle_sample > 0 and len(targets) >= 2:
        sample = _sample_pairs(rng, targets, min(oracle_sample, 4 * len(targets)))
        priced = _price_pairs(graph, ps, fs, sample)
        for (x, y), found in zip(sample, priced):
            oracle_checked += 1
            want = float(ps.coords[y] - ps.coords[x])
            numeric_exact = math.isfinite(found) and abs(found - want) <= (
                ORACLE_RELATIVE_TOLERANCE * want
            )
            mono_exact = bool((reach[x] >> y) & 1)
            if mono_exact != numeric_exact:
                oracle_mismatches.append((x, y, found))

    ignored_alive = sorted(f_star - fs)
    max_stretch = math.nan
    if ignored_alive and oracle_sample > 0:
        others = [v for v in range(n) if v not in fs]
        pairs = []
        k = min(oracle_sample, 4 * len(ignored_alive))
        a = rng.integers(0, len(ignored_alive), size=k)
        b = rng.integers(0, len(others), size=k)
        for i, j in zip(a.tolist(), b.tolist()):
            x, y = ignored_alive[i], others[j]
            if x != y:
                pairs.append((x, y) if x < y else (y, x))
        if pairs:
            priced = _price_pairs(graph, ps, fs, pairs)
            ratios = [
                d / (ps.coords[y] - ps.coords[x]) for (x, y), d in zip(pairs, priced)
            ]
            max_stretch = float(max(ratios))

    strong_ok = None
    if strong_check:
        alive2 = [v not in f_star for v in range(n)]
        reach2 = _forward_reach(graph, alive2)
        if exhaustive:
            _, exact2, missing2 = _check_pairs_exhaustive(reach2, targets)
            strong_ok = not missing2
        else:
            strong_ok = all((reach2[x] >> y) & 1 for x, y in strong_pairs)

    return VerificationReport(
        n=n,
        seed=seed,
        f_size=len(fs),
        f_star_size=len(f_star),
        pairs_checked=pairs_checked,
        exact_pairs=exact_pairs,
        violations=tuple(violations),
        oracle_checked=oracle_checked,
        oracle_mismatches=tuple(oracle_mismatches),
        max_stretch_over_ignored=max_stretch,
        bound_ok=bound_ok,
        exhaustive=exhaustive,
        strong_variant_ok=strong_ok,
    )


@dataclass(frozen=True)
class StretchSummary:
    """Stretch distribution split by ignored-set involvement."""

    target_pairs: int
    target_max_stretch: float
    ignored_pairs: int
    ignored_max_stretch: float
    ignored_unreachable: int


def stretch_statistics(
    graph: SpannerGraph,
    ps: PointSet,
    scheme: LayeredScheme,
    failures,
    limit: int = 512,
) -> StretchSummary:
    """Exact stretch over all alive pairs, partitioned by the ignored set."""
    fs = check_failures(failures, graph.n)
    f_star = compute_closure(scheme, fs).f_star
    lengths = brute_force_oracle(graph, ps, fs, limit=limit)
    t_count = t_max = 0
    i_count = i_unreachable = 0
    i_max = 0.0
    for (x, y), d in lengths.items():
        ratio = d / (ps.coords[y] - ps.coords[x])
        if x in f_star or y in f_star:
            i_count += 1
            if math.isinf(ratio):
                i_unreachable += 1
            else:
                i_max = max(i_max, ratio)
        else:
            t_count += 1
            t_max = max(t_max, ratio)
    return StretchSummary(
        target_pairs=t_count,
        target_max_stretch=float(t_max),
        ignored_pairs=i_count,
        ignored_max_stretch=float(i_max),
        ignored_unreachable=i_unreachable,
    )
