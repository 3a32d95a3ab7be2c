"""Reconnection sites and band surgery on lattice polygons.

A site is a pair of polygon edges forming opposite sides of a unit lattice
square whose other two sides are absent from the polygon. Reconnection
deletes the pair and inserts the other two sides: parallel sites (equal
edge direction under traversal, i.e. inverted repeats) keep one component
and invert the intervening arc; antiparallel sites (direct repeats) split
the polygon in two.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice.polygon import LatticePolygon, validate_polygon


class ReplacementCollision(Exception):
    """A replacement edge already belongs to the polygon (excluded by find_sites)."""


@dataclass(frozen=True)
class SitePair:
    edge_a: int
    edge_b: int
    square: tuple                  # the 4 lattice points spanned
    alignment: str                 # 'parallel' | 'antiparallel'


@dataclass(frozen=True)
class ReconnectionOutcome:
    products: tuple
    kind: str                      # 'non-coherent' | 'coherent'


def _edge_set(p: LatticePolygon) -> set[frozenset]:
    n = p.length
    v = p.v
    return {frozenset((tuple(v[i]), tuple(v[(i + 1) % n]))) for i in range(n)}


def find_sites(p: LatticePolygon, count_excluded: bool = False):
    """All usable reconnection sites, optionally with the excluded count.

    Excluded pairs are opposite sides of a unit square whose replacement
    edges already belong to the polygon (reconnection there would pinch
    off a degenerate loop).
    """
    n = p.length
    v = p.v
    index_of = {tuple(pt): i for i, pt in enumerate(v.tolist())}
    edges = _edge_set(p)
    dirs = np.roll(v, -1, axis=0) - v
    sites = []
    excluded = 0
    seen = set()
    units = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0],
                      [0, 0, 1], [0, 0, -1]], dtype=np.int64)
    for i in range(n):
        a0 = v[i]
        a1 = v[(i + 1) % n]
        d = dirs[i]
        for u in units:
            if abs(int(u @ d)) == 1:
                continue  # not perpendicular to the edge
            b0t = tuple((a0 + u).tolist())
            b1t = tuple((a1 + u).tolist())
            j0 = index_of.get(b0t)
            if j0 is None or index_of.get(b1t) is None:
                continue
            # partner edge must be exactly (b0, b1) in some traversal order
            jnext = (j0 + 1) % n
            jprev = (j0 - 1) % n
            if tuple(v[jnext].tolist()) == b1t:
                j, parallel = j0, True
            elif tuple(v[jprev].tolist()) == b1t:
                j, parallel = jprev, False
            else:
                continue
            key = (min(i, j), max(i, j))
            if key in seen:
                continue
            seen.add(key)
            side1 = frozenset((tuple(a0.tolist()), b0t))
            side2 = frozenset((tuple(a1.tolist()), b1t))
            if side1 in edges or side2 in edges:
                excluded += 1
                continue
            square = (tuple(a0.tolist()), tuple(a1.tolist()), b1t, b0t)
            sites.append(SitePair(edge_a=key[0], edge_b=key[1], square=square,
                                  alignment="parallel" if parallel else "antiparallel"))
    sites.sort(key=lambda s: (s.edge_a, s.edge_b))
    if count_excluded:
        return sites, excluded
    return sites


def reconnect(p: LatticePolygon, site: SitePair) -> ReconnectionOutcome:
    """Perform band surgery at a site found on p."""
    n = p.length
    v = p.v
    i, j = site.edge_a, site.edge_b
    if not (0 <= i < j < n):
        raise ValueError("site edges out of range")
    vi, vi1 = tuple(v[i].tolist()), tuple(v[(i + 1) % n].tolist())
    vj, vj1 = tuple(v[j].tolist()), tuple(v[(j + 1) % n].tolist())
    di = v[(i + 1) % n] - v[i]
    dj = v[(j + 1) % n] - v[j]
    parallel = bool((di == dj).all())
    if parallel != (site.alignment == "parallel"):
        raise ValueError("site alignment does not match polygon")
    edges = _edge_set(p)
    if parallel:
        new1 = frozenset((vi, vj))
        new2 = frozenset((vi1, vj1))
    else:
        new1 = frozenset((vi, vj1))
        new2 = frozenset((vi1, vj))
    if new1 in edges or new2 in edges:
        raise ReplacementCollision("replacement edge already present")
    if parallel:
        # one product: ... v_i, [v_j .. v_{i+1} reversed], v_{j+1} ...
        middle = v[i + 1:j + 1][::-1]
        out = np.concatenate([v[:i + 1], middle, v[j + 1:]])
        prod = (validate_polygon(out),)
        kind = "non-coherent"
    else:
        # two products: v_{i+1}..v_j and v_{j+1}..v_i
        first = v[i + 1:j + 1]
        second = np.concatenate([v[j + 1:], v[:i + 1]])
        prod = (validate_polygon(first), validate_polygon(second))
        kind = "coherent"
    return ReconnectionOutcome(products=prod, kind=kind)
