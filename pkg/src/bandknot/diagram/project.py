"""Generic projection of lattice polygons to planar diagrams.

The polygon is mapped through a random unimodular integer matrix (a
product of shears drawn from the seed); the first two coordinates become
the diagram plane and the third the viewing depth. All incidence tests
are exact integer arithmetic, so degeneracies (collinear overlaps,
endpoint touches, triple points) are detected reliably and trigger a
retry with the next matrix. Coordinates stay far inside int64 range.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
from numba import njit

from ..lattice.polygon import LatticePolygon
from .pdcode import Diagram


class NoGenericDirection(Exception):
    """No generic projection found within the retry cap (indicates a bug)."""


@njit(cache=True)
def _find_crossings(px, py, pz, starts, out):
    """Exact pairwise segment intersection over all polygon edges.

    px/py/pz: projected coordinates per vertex, concatenated per polygon;
    starts: polygon boundary offsets (k polygons -> k+1 entries).
    out: (cap, 8) int64 buffer for (ei, ej, tn, td, un, ud, over1, 0).
    Returns number of crossings, or -1 on degeneracy.
    """
    n_total = len(px)
    n_polys = len(starts) - 1
    # consecutive-edge overlap check (anti-parallel projections)
    for p in range(n_polys):
        lo, hi = starts[p], starts[p + 1]
        m = hi - lo
        for k in range(m):
            a = lo + k
            b = lo + (k + 1) % m
            c = lo + (k + 2) % m
            r1x = px[b] - px[a]
            r1y = py[b] - py[a]
            r2x = px[c] - px[b]
            r2y = py[c] - py[b]
            if r1x * r2y - r1y * r2x == 0 and r1x * r2x + r1y * r2y < 0:
                return -1
            if r1x == 0 and r1y == 0:
                return -1  # edge projects to a point (impossible for shears)
    count = 0
    for p in range(n_polys):
        lo, hi = starts[p], starts[p + 1]
        m = hi - lo
        for k1 in range(m):
            i1 = lo + k1
            j1 = lo + (k1 + 1) % m
            ax, ay = px[i1], py[i1]
            bx, by = px[j1], py[j1]
            rx, ry = bx - ax, by - ay
            # against later edges of the same polygon
            for k2 in range(k1 + 1, m):
                if k2 == k1 + 1 or (k1 == 0 and k2 == m - 1):
                    continue  # adjacent edges share a vertex
                i2 = lo + k2
                j2 = lo + (k2 + 1) % m
                res = _pair(px, py, pz, i1, j1, i2, j2, ax, ay, rx, ry, out, count)
                if res < 0:
                    return -1
                count = res
            # against all edges of later polygons
            for p2 in range(p + 1, n_polys):
                lo2, hi2 = starts[p2], starts[p2 + 1]
                m2 = hi2 - lo2
                for k2 in range(m2):
                    i2 = lo2 + k2
                    j2 = lo2 + (k2 + 1) % m2
                    res = _pair(px, py, pz, i1, j1, i2, j2, ax, ay, rx, ry, out, count)
                    if res < 0:
                        return -1
                    count = res
    return count


@njit(cache=True, inline="always")
def _pair(px, py, pz, i1, j1, i2, j2, ax, ay, rx, ry, out, count):
    cx, cy = px[i2], py[i2]
    dx, dy = px[j2], py[j2]
    sx, sy = dx - cx, dy - cy
    rxs = rx * sy - ry * sx
    qx, qy = cx - ax, cy - ay
    if rxs == 0:
        if qx * ry - qy * rx != 0:
            return count  # parallel, different lines
        # collinear: overlap iff projections of parameter ranges intersect
        t0 = qx * rx + qy * ry
        t1 = (qx + sx) * rx + (qy + sy) * ry
        rr = rx * rx + ry * ry
        lo = min(t0, t1)
        hi = max(t0, t1)
        if hi < 0 or lo > rr:
            return count
        return -1  # collinear overlap or touch
    tn = qx * sy - qy * sx
    un = qx * ry - qy * rx
    if rxs < 0:
        tn, un, td = -tn, -un, -rxs
    else:
        td = rxs
    if tn <= 0 or tn >= td or un <= 0 or un >= td:
        if (tn == 0 or tn == td) and 0 <= un <= td:
            return -1  # endpoint of one edge on the other
        if (un == 0 or un == td) and 0 <= tn <= td:
            return -1
        return count
    # proper crossing; compare depths at the point (common denominator td)
    z1 = pz[i1] * td + tn * (pz[j1] - pz[i1])
    z2 = pz[i2] * td + un * (pz[j2] - pz[i2])
    if z1 == z2:
        return -1  # would be a 3D intersection: numerical impossibility
    if count >= out.shape[0]:
        return -1
    out[count, 0] = i1
    out[count, 1] = i2
    out[count, 2] = tn
    out[count, 3] = td
    out[count, 4] = un
    out[count, 5] = td
    out[count, 6] = 1 if z1 > z2 else 0
    count += 1
    return count


def _shear_matrix(rng: random.Random) -> np.ndarray:
    m = np.eye(3, dtype=np.int64)
    for _ in range(7):
        i = rng.randrange(3)
        j = rng.randrange(3)
        while j == i:
            j = rng.randrange(3)
        lam = rng.choice((-3, -2, -1, 1, 2, 3))
        m[i] = m[i] + lam * m[j]
        if np.abs(m).max() > 40:
            m = np.eye(3, dtype=np.int64)
    return m


def project(polys: LatticePolygon | list[LatticePolygon], direction_seed: int = 0,
            max_retries: int = 64) -> Diagram:
    """Project one or more disjoint polygons to an oriented diagram.

    Retries new random directions on any degeneracy; raises
    NoGenericDirection after the cap.
    """
    if isinstance(polys, LatticePolygon):
        polys = [polys]
    rng = random.Random(direction_seed)
    starts = np.zeros(len(polys) + 1, dtype=np.int64)
    for k, p in enumerate(polys):
        starts[k + 1] = starts[k] + p.length
    allv = np.concatenate([p.v for p in polys], axis=0)
    allv = allv - allv.min(axis=0)
    cap = max(64, 12 * allv.shape[0])
    out = np.zeros((cap, 8), dtype=np.int64)
    for _ in range(max_retries):
        m = _shear_matrix(rng)
        w = allv @ m.T
        px = np.ascontiguousarray(w[:, 0])
        py = np.ascontiguousarray(w[:, 1])
        pz = np.ascontiguousarray(w[:, 2])
        n = _find_crossings(px, py, pz, starts, out)
        if n < 0:
            continue
        # triple-point check: same edge, equal parameter
        seen = set()
        tripled = False
        for c in range(n):
            ei, ej = int(out[c, 0]), int(out[c, 1])
            t = Fraction(int(out[c, 2]), int(out[c, 3]))
            u = Fraction(int(out[c, 4]), int(out[c, 5]))
            if (ei, t) in seen or (ej, u) in seen:
                tripled = True
                break
            seen.add((ei, t))
            seen.add((ej, u))
        if tripled:
            continue
        return _build_diagram(polys, px, py, starts, out, n)
    raise NoGenericDirection(f"no generic projection in {max_retries} tries")


def _build_diagram(polys, px, py, starts, out, n_cross) -> Diagram:
    d = Diagram()
    # per-edge crossing lists: (parameter, crossing index, this-edge side flag)
    per_edge: dict[int, list] = {}
    cids = []
    for c in range(n_cross):
        ei, ej = int(out[c, 0]), int(out[c, 1])
        t = Fraction(int(out[c, 2]), int(out[c, 3]))
        u = Fraction(int(out[c, 4]), int(out[c, 5]))
        over1 = bool(out[c, 6])
        # line 0-2 = first edge's strand, entering at slot 0; slot 1 holds
        # whichever port of the second edge is CCW-adjacent after slot 0.
        j1 = _edge_head(ei, starts)
        j2 = _edge_head(ej, starts)
        rx, ry = int(px[j1] - px[ei]), int(py[j1] - py[ei])
        sx, sy = int(px[j2] - px[ej]), int(py[j2] - py[ej])
        # port at slot 1: direction X in {+s, -s} with cross(-r, X) > 0
        cross_neg_r_s = (-rx) * sy - (-ry) * sx
        slot1_is_out = cross_neg_r_s > 0  # slot 1 = +s port (outgoing)
        in13 = 3 if slot1_is_out else 1
        cid = d.new_crossing(over02=over1, in02=0, in13=in13)
        cids.append(cid)
        per_edge.setdefault(ei, []).append((t, c, True))
        per_edge.setdefault(ej, []).append((u, c, False))
    # stitch arcs along each polygon
    for p in range(len(starts) - 1):
        lo, hi = int(starts[p]), int(starts[p + 1])
        ports = []  # sequence of (out_dart, in_dart) per crossing along the walk
        for e in range(lo, hi):
            if e not in per_edge:
                continue
            for (_t, c, is_first) in sorted(per_edge[e]):
                cid = cids[c]
                if is_first:
                    ports.append(((cid, 2), (cid, 0)))
                else:
                    in13 = d.x[cid].in13
                    ports.append(((cid, (in13 + 2) % 4), (cid, in13)))
        if not ports:
            d.free_circles += 1
            continue
        for k in range(len(ports)):
            out_dart = ports[k][0]
            in_dart = ports[(k + 1) % len(ports)][1]
            d.connect(out_dart, in_dart)
    d.check()
    return d


def _edge_head(e: int, starts) -> int:
    for p in range(len(starts) - 1):
        if starts[p] <= e < starts[p + 1]:
            lo, hi = int(starts[p]), int(starts[p + 1])
            return lo + (e - lo + 1) % (hi - lo)
    raise AssertionError
