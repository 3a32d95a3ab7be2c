"""Lattice realizations of braid words with configurable closures.

Wires run along +x at y = 2i, z = 0; each braid letter occupies an x-slab
of width 4 in which the two strands of adjacent wires exchange heights,
the over strand detouring through z = 1. Closures connect wire ends with
arcs at z = -1 (trace), straight verticals (adjacent pairs) or over-the-top
arcs at z = 2 (wrap pair), so arcs never collide with the braid block.

The same braid words fed to construct.braid_closure give reference
diagrams, which pins the sign convention: letter (i, +1) here builds the
same crossing braid_closure assigns to sigma_i^+1.
"""

from __future__ import annotations

import numpy as np

from .polygon import LatticePolygon, validate_polygon


def _gadget(x0: int, yb: int, ascend_over: bool):
    """Crossing between wires at y=yb and y=yb+2 inside slab [x0, x0+4].

    Returns (path_from_lower, path_from_upper); the lower path ends on the
    upper wire and vice versa. ascend_over lifts the ascending strand.
    """
    up = [(x0, yb, 0), (x0 + 1, yb, 0), (x0 + 1, yb, 1), (x0 + 2, yb, 1),
          (x0 + 2, yb + 1, 1), (x0 + 2, yb + 2, 1), (x0 + 3, yb + 2, 1),
          (x0 + 3, yb + 2, 0), (x0 + 4, yb + 2, 0)]
    down_flat = [(x0, yb + 2, 0), (x0 + 1, yb + 2, 0), (x0 + 2, yb + 2, 0),
                 (x0 + 2, yb + 1, 0), (x0 + 2, yb, 0), (x0 + 3, yb, 0),
                 (x0 + 4, yb, 0)]
    if ascend_over:
        return up, down_flat
    # mirror in z: descending strand takes the lift instead
    up_flat = [(x0, yb, 0), (x0 + 1, yb, 0), (x0 + 2, yb, 0),
               (x0 + 2, yb + 1, 0), (x0 + 2, yb + 2, 0), (x0 + 3, yb + 2, 0),
               (x0 + 4, yb + 2, 0)]
    down = [(x0, yb + 2, 0), (x0 + 1, yb + 2, 0), (x0 + 1, yb + 2, 1),
            (x0 + 2, yb + 2, 1), (x0 + 2, yb + 1, 1), (x0 + 2, yb, 1),
            (x0 + 3, yb, 1), (x0 + 3, yb, 0), (x0 + 4, yb, 0)]
    return up_flat, down


def braid_lattice(word: list[tuple[int, int]], n_strands: int,
                  closure: str = "trace",
                  right_pairs: list[tuple[int, int]] | None = None,
                  left_pairs: list[tuple[int, int]] | None = None) -> list[LatticePolygon]:
    """Embed a braid word in the lattice and close it.

    closure: 'trace' (returns under the braid at z=-1), or 'pairs' with
    explicit right/left matchings of wire indices; adjacent pairs (i, i+1)
    close with straight verticals, the pair (max_wire, 0) wraps over the
    top at z=2. Returns the closed cycles as polygons (knots: one cycle).
    """
    # forward pass: per-strand polylines through the braid block
    paths = {w: [(0, 2 * w, 0)] for w in range(n_strands)}
    x0 = 0
    for (i, s) in word:
        if not (0 <= i < n_strands - 1) or s not in (1, -1):
            raise ValueError(f"bad letter {(i, s)}")
        lo_path, hi_path = _gadget(x0, 2 * i, ascend_over=(s == -1))
        a, b = paths[i], paths[i + 1]
        a.extend(lo_path[1:] if a[-1] == lo_path[0] else lo_path)
        b.extend(hi_path[1:] if b[-1] == hi_path[0] else hi_path)
        paths[i], paths[i + 1] = b, a
        for w in range(n_strands):
            if w not in (i, i + 1):
                paths[w].append((x0 + 4, 2 * w, 0))
        x0 += 4
    xe = x0 + 1
    for w in range(n_strands):
        paths[w].append((xe, 2 * w, 0))

    segments = []
    for w in range(n_strands):
        segments.append(_dedup(paths[w]))

    arcs = []
    if closure == "trace":
        for w in range(n_strands):
            arc = [(xe, 2 * w, 0), (xe, 2 * w, -1)]
            arc += [(x, 2 * w, -1) for x in range(xe - 1, -2, -1)]
            arc += [(-1, 2 * w, 0), (0, 2 * w, 0)]
            arcs.append(arc)
    elif closure == "pairs":
        for side, pairs, x in (("R", right_pairs, xe), ("L", left_pairs, 0)):
            for (a, b) in pairs:
                lo, hi = min(a, b), max(a, b)
                if hi == lo + 1:
                    arc = [(x, 2 * lo, 0), (x, 2 * lo + 1, 0), (x, 2 * hi, 0)]
                elif lo == 0 and hi == n_strands - 1:
                    arc = [(x, 2 * hi, 0), (x, 2 * hi, 1), (x, 2 * hi, 2)]
                    arc += [(x, y, 2) for y in range(2 * hi - 1, -1, -1)]
                    arc += [(x, 0, 1), (x, 0, 0)]
                else:
                    raise ValueError(f"unsupported closure pair {(a, b)}")
                if side == "L":
                    arc = arc[::-1]
                arcs.append(arc)
    else:
        raise ValueError(f"unknown closure {closure!r}")

    return _stitch(segments + [_dedup(a) for a in arcs])


def _dedup(path):
    """Drop repeated points and interpolate axis-aligned runs to unit steps."""
    out = [path[0]]
    for p in path[1:]:
        q = out[-1]
        if p == q:
            continue
        d = (p[0] - q[0], p[1] - q[1], p[2] - q[2])
        nz = [k for k in range(3) if d[k] != 0]
        if len(nz) != 1:
            raise AssertionError(f"non-axis gap {q} -> {p}")
        axis, span = nz[0], d[nz[0]]
        step = 1 if span > 0 else -1
        for _ in range(abs(span)):
            q = list(q)
            q[axis] += step
            out.append(tuple(q))
    return out


def _stitch(pieces) -> list[LatticePolygon]:
    """Join open polylines end-to-end into closed cycles."""
    by_end: dict[tuple, list[int]] = {}
    for k, piece in enumerate(pieces):
        for pt in (piece[0], piece[-1]):
            by_end.setdefault(pt, []).append(k)
    for pt, ks in by_end.items():
        if len(ks) != 2:
            raise AssertionError(f"endpoint {pt} has degree {len(ks)}")
    used = [False] * len(pieces)
    cycles = []
    for k0 in range(len(pieces)):
        if used[k0]:
            continue
        cycle = list(pieces[k0])
        used[k0] = True
        while True:
            tail = cycle[-1]
            nxt = [k for k in by_end[tail] if not used[k]]
            if not nxt:
                break
            k = nxt[0]
            used[k] = True
            piece = pieces[k]
            if piece[0] == tail:
                cycle.extend(piece[1:])
            elif piece[-1] == tail:
                cycle.extend(piece[-2::-1])
            else:
                raise AssertionError("stitching mismatch")
        if cycle[0] != cycle[-1]:
            raise AssertionError("open cycle after stitching")
        cycles.append(validate_polygon(np.array(cycle[:-1], dtype=np.int64)))
    return cycles


def torus_lattice(n: int) -> LatticePolygon:
    """Lattice conformation of the torus knot T(2, n) (n odd)."""
    if n % 2 == 0:
        raise ValueError("use braid_lattice directly for even torus links")
    sign = 1 if n > 0 else -1
    (poly,) = braid_lattice([(0, sign)] * abs(n), 2)
    return poly


def fourplat_word(conway: list[int]) -> list[tuple[int, int]]:
    """4-plat braid word of an all-positive integer continued fraction.

    Twist regions alternate between the middle strand pair and the lower
    pair with alternating sign, which renders positive continued fractions
    as alternating diagrams (crossing number = sum of the entries). The
    plat closure needs an odd number of twist regions, so even-length
    fractions are first rewritten via [..., a] = [..., a-1, 1].
    """
    cf = [int(a) for a in conway if a != 0]
    if any(a < 0 for a in cf):
        raise ValueError("expected an all-positive continued fraction")
    if len(cf) % 2 == 0:
        if cf[-1] == 1:
            cf = cf[:-2] + [cf[-2] + 1]
        else:
            cf = cf[:-1] + [cf[-1] - 1, 1]
    word = []
    for k, a in enumerate(cf):
        if k % 2 == 0:
            gen, s = 1, 1
        else:
            gen, s = 0, -1
        word += [(gen, s)] * a
    return word


def fourplat_lattice(conway: list[int]) -> LatticePolygon:
    """Lattice 4-plat realization of a rational knot's continued fraction."""
    polys = braid_lattice(fourplat_word(conway), 4, closure="pairs",
                          right_pairs=[(0, 1), (2, 3)], left_pairs=[(0, 1), (2, 3)])
    if len(polys) != 1:
        raise ValueError("continued fraction closed to a link, not a knot")
    return polys[0]


def pretzel_lattice(p: int, q: int, r: int) -> list[LatticePolygon]:
    """Lattice pretzel P(p, q, r): three twist columns on six wires."""
    word = []
    for col, twists in enumerate((p, q, r)):
        gen = 2 * col
        s = 1 if twists > 0 else -1
        word += [(gen, s)] * abs(twists)
    return braid_lattice(word, 6, closure="pairs",
                         right_pairs=[(1, 2), (3, 4), (5, 0)],
                         left_pairs=[(1, 2), (3, 4), (5, 0)])
