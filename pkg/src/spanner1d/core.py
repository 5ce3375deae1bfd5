"""Point sets on a line and the vertex bookkeeping shared by every module.

Everything in this package speaks in zero-based vertex indices into one
sorted coordinate array. Coordinates only matter through their order and
pairwise gaps, so this module stays small: a validated array wrapper,
failure-set helpers, and the two plain-text file formats (one coordinate
per line for points, a comma-separated index list for failures).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

VertexId = int
FailureSet = frozenset


class EmptyInput(ValueError):
    """A point source yielded no coordinates."""


class DuplicateCoordinate(ValueError):
    """Two input coordinates compare exactly equal."""


class IndexOutOfRange(ValueError):
    """A vertex index falls outside [0, n)."""


@dataclass(frozen=True, eq=False)
class PointSet:
    """Strictly increasing coordinates of n >= 1 points on the real line.

    The constructor expects coordinates already sorted; use
    :func:`make_point_set` to sort arbitrary input and reject duplicates.
    """

    coords: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coords, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise EmptyInput("a point set needs at least one coordinate")
        gaps = np.diff(arr)
        if np.any(gaps == 0.0):
            raise DuplicateCoordinate("coordinates must be pairwise distinct")
        if np.any(gaps < 0.0):
            raise ValueError("coordinates must be sorted increasingly")
        arr.flags.writeable = False
        object.__setattr__(self, "coords", arr)

    @property
    def n(self) -> int:
        return int(self.coords.size)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and np.array_equal(self.coords, other.coords)

    def __hash__(self) -> int:
        return hash(self.coords.tobytes())

    def __repr__(self) -> str:
        return f"PointSet(n={self.n})"


def make_point_set(coords: Iterable[float]) -> PointSet:
    """Sort ``coords`` and wrap them; duplicates and empty input are errors."""
    arr = np.asarray(list(coords), dtype=np.float64)
    if arr.size == 0:
        raise EmptyInput("a point set needs at least one coordinate")
    return PointSet(np.sort(arr))


def distance(ps: PointSet, a: VertexId, b: VertexId) -> float:
    """Absolute coordinate gap between vertices ``a`` and ``b``."""
    check_vertex(ps.n, a)
    check_vertex(ps.n, b)
    return float(abs(ps.coords[b] - ps.coords[a]))


def check_vertex(n: int, v: int) -> int:
    if not 0 <= v < n:
        raise IndexOutOfRange(f"vertex {v} outside [0, {n})")
    return v


def check_failures(members: Iterable[int], n: int) -> frozenset:
    """Validate a failure set against a point count and freeze it."""
    fs = frozenset(int(v) for v in members)
    for v in fs:
        check_vertex(n, v)
    return fs


@dataclass(frozen=True)
class IgnoredSet:
    """Vertices exempt from the spanner guarantee, a superset of the failures."""

    members: frozenset
    source_failures: frozenset

    def __post_init__(self):
        if not self.source_failures <= self.members:
            raise ValueError("failures must be contained in the ignored set")


def parse_points(text: str) -> PointSet:
    """Parse one decimal coordinate per line; ``#`` starts a comment."""
    values = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            values.append(float(line))
    return make_point_set(values)


def load_points(path: str | Path) -> PointSet:
    return parse_points(Path(path).read_text())


def parse_failures(text: str, n: int) -> frozenset:
    """Parse a comma-separated list of zero-based vertex indices."""
    stripped = text.split("#", 1)[0].strip()
    if not stripped:
        return frozenset()
    return check_failures((int(tok) for tok in stripped.split(",")), n)


def load_failures(path: str | Path, n: int) -> frozenset:
    return parse_failures(Path(path).read_text(), n)


def write_points(ps: PointSet, path: str | Path) -> None:
    """One coordinate per line, at round-trip precision."""
    lines = [format(float(c), ".17g") for c in ps.coords]
    Path(path).write_text("\n".join(lines) + "\n")
