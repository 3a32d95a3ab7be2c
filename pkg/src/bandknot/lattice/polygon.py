"""Self-avoiding polygons in the simple cubic lattice.

Vertices are integer triples; a polygon is a cyclic sequence of vertices
with unit steps between consecutive ones (cyclically) and no repeats. The
text format is one vertex per line as `x y z`, preceded by a header
comment carrying the knot name, length and any run parameters;
conformations are separated by blank lines.
"""

from __future__ import annotations

import io
from typing import Iterable, Iterator, Sequence

import numpy as np

Point3 = tuple[int, int, int]


class PolygonError(ValueError):
    pass


class NotClosed(PolygonError):
    pass


class NotUnitStep(PolygonError):
    pass


class SelfIntersecting(PolygonError):
    pass


class OddLength(PolygonError):
    pass


class LatticePolygon:
    """Immutable validated lattice polygon."""

    __slots__ = ("v",)

    def __init__(self, vertices: np.ndarray):
        self.v = vertices  # (n, 3) int64, already validated

    @property
    def length(self) -> int:
        return self.v.shape[0]

    def vertices(self) -> np.ndarray:
        return self.v

    def edges(self) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        n = self.length
        for i in range(n):
            yield self.v[i], self.v[(i + 1) % n]

    def edge_vectors(self) -> np.ndarray:
        return np.roll(self.v, -1, axis=0) - self.v

    def translated(self, offset) -> "LatticePolygon":
        return LatticePolygon(self.v + np.asarray(offset, dtype=np.int64))

    def canonical(self) -> "LatticePolygon":
        """Translate so the minimum corner is the origin, rotate the vertex
        list to start at the lexicographically smallest vertex, and orient
        the traversal deterministically."""
        w = self.v - self.v.min(axis=0)
        keys = [tuple(p) for p in w]
        start = min(range(len(keys)), key=lambda i: keys[i])
        w = np.roll(w, -start, axis=0)
        if tuple(w[1]) > tuple(w[-1]):
            w = np.roll(w[::-1], 1, axis=0)
        return LatticePolygon(w)

    def __eq__(self, other):
        return (isinstance(other, LatticePolygon)
                and self.v.shape == other.v.shape
                and bool((self.v == other.v).all()))

    def __hash__(self):
        return hash(self.v.tobytes())

    def __repr__(self):
        return f"<LatticePolygon length={self.length}>"


def validate_polygon(vertices: Sequence | np.ndarray) -> LatticePolygon:
    """Validate vertices as a closed self-avoiding unit-step cycle."""
    v = np.asarray(list(vertices) if not isinstance(vertices, np.ndarray) else vertices,
                   dtype=np.int64)
    if v.ndim != 2 or v.shape[1] != 3 or v.shape[0] == 0:
        raise PolygonError("expected a nonempty sequence of integer triples")
    n = v.shape[0]
    if n % 2 == 1:
        raise OddLength(f"closed lattice polygons have even length, got {n}")
    if n < 4:
        raise NotClosed(f"length {n} < 4 cannot close")
    steps = np.roll(v, -1, axis=0) - v
    if not (np.abs(steps).sum(axis=1) == 1).all():
        bad = int(np.argmax(np.abs(steps).sum(axis=1) != 1))
        if (steps[bad] == 0).all():
            raise SelfIntersecting(f"repeated vertex at position {bad}")
        raise NotUnitStep(f"step {steps[bad]} at position {bad} is not a unit step")
    # self-avoidance: all vertices distinct
    seen = set(map(tuple, v.tolist()))
    if len(seen) != n:
        raise SelfIntersecting("vertices are not pairwise distinct")
    return LatticePolygon(v)


def unit_square() -> LatticePolygon:
    return LatticePolygon(np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]],
                                   dtype=np.int64))


# -- text format -------------------------------------------------------------

def write_polygons(stream: io.TextIOBase, polys: Iterable[tuple[str, LatticePolygon]],
                   params: dict | None = None) -> None:
    """Write conformations; header `# knot=<name> length=<n>` plus params."""
    first = True
    for name, p in polys:
        if not first:
            stream.write("\n")
        first = False
        stream.write(f"# knot={name} length={p.length}\n")
        if params:
            for k in sorted(params):
                stream.write(f"# {k}={params[k]}\n")
        for x, y, z in p.v.tolist():
            stream.write(f"{x} {y} {z}\n")


def read_polygons(stream: io.TextIOBase) -> list[tuple[str, LatticePolygon]]:
    out = []
    name = "?"
    buf: list[tuple[int, int, int]] = []

    def flush():
        nonlocal buf
        if buf:
            out.append((name, validate_polygon(buf)))
            buf = []

    for line in stream:
        line = line.strip()
        if not line:
            flush()
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                if tok.startswith("knot="):
                    name = tok[5:]
            continue
        parts = line.split()
        if len(parts) != 3:
            raise PolygonError(f"bad vertex line: {line!r}")
        buf.append((int(parts[0]), int(parts[1]), int(parts[2])))
    flush()
    return out
