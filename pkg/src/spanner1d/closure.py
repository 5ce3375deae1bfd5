"""Failure-set closure: grow F into the ignored set F* layer by layer.

Layer ``i`` looks at the failure set accumulated through layer ``i-1``
(a snapshot; additions made at layer ``i`` never feed back into the same
layer's triggers). Any half-cluster that lost at least half of its
points, counted against its actual size with the odd case rounded up,
drags every layer-``i`` cluster containing it into the ignored set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import IgnoredSet, check_failures
from .scheme import LayeredScheme, containing_clusters


@dataclass(frozen=True)
class TriggerEvent:
    """One half-cluster crossing its failure threshold at one layer."""

    layer: int
    half: object
    clusters: tuple

    @property
    def added(self) -> frozenset:
        out = set()
        for c in self.clusters:
            out.update(range(c.lo, c.hi))
        return frozenset(out)


@dataclass(frozen=True)
class ClosureTrace:
    """Snapshots F_0 .. F_ell of the growing ignored set plus all triggers."""

    per_layer: tuple
    triggered: tuple

    @property
    def failures(self) -> frozenset:
        return self.per_layer[0]

    @property
    def f_star(self) -> frozenset:
        return self.per_layer[-1]

    @property
    def ell(self) -> int:
        return len(self.per_layer) - 1

    def ignored_set(self) -> IgnoredSet:
        return IgnoredSet(self.f_star, self.failures)


def half_threshold(size: int) -> int:
    """Failure count at which a half-cluster of ``size`` points triggers."""
    return (size + 1) // 2


def compute_closure(scheme: LayeredScheme, failures) -> ClosureTrace:
    """Run the per-layer majority rule and record every snapshot."""
    fs = check_failures(failures, scheme.n)
    if scheme.complete_mode:
        # No cluster structure: nothing beyond the failures is ignored.
        return ClosureTrace((fs,) * (scheme.ell + 1), ())

    per_layer = [fs]
    triggered = []
    current = set(fs)
    for layer in range(1, scheme.ell + 1):
        mask = np.zeros(scheme.n, dtype=np.int64)
        if current:
            mask[sorted(current)] = 1
        csum = np.concatenate(([0], np.cumsum(mask)))
        additions = set()
        for half in scheme.halves[layer - 1]:
            count = int(csum[half.hi] - csum[half.lo])
            if count >= half_threshold(half.size):
                owners = containing_clusters(scheme, layer, half.lo, half.hi)
                triggered.append(TriggerEvent(layer, half, owners))
                for c in owners:
                    additions.update(range(c.lo, c.hi))
        current |= additions
        per_layer.append(frozenset(current))
    return ClosureTrace(tuple(per_layer), tuple(triggered))


def within_spec_bound(trace: ClosureTrace) -> bool:
    """True iff |F*| <= 6**ell * |F|, the guaranteed growth bound."""
    return len(trace.f_star) <= 6**trace.ell * len(trace.failures)


def closure_bound_check(trace: ClosureTrace) -> bool:
    """Stricter diagnostic: every layer grew at most 6x, and the total bound.

    Tail layouts can push a single layer past 6x while the total stays
    within 6**ell; use within_spec_bound for the guaranteed property.
    """
    sizes = [len(layer) for layer in trace.per_layer]
    for prev, cur in zip(sizes, sizes[1:]):
        if cur > 6 * prev:
            return False
    return within_spec_bound(trace)


def trace_to_json(trace: ClosureTrace) -> str:
    layers = []
    for i in range(1, len(trace.per_layer)):
        added = [
            {"layer": ev.layer, "ordinal": c.ordinal, "lo": c.lo, "hi": c.hi}
            for ev in trace.triggered
            if ev.layer == i
            for c in ev.clusters
        ]
        layers.append({"added_clusters": added, "f_size": len(trace.per_layer[i])})
    doc = {"layers": layers, "f_star": sorted(trace.f_star)}
    return json.dumps(doc, indent=2)
