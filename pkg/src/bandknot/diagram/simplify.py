"""Reidemeister simplification of planar diagrams.

R1 and R2 reductions run to a fixed point (crossing count strictly
decreases), interleaved with bounded passes of random R3 slides that only
re-glue edges and can expose further reductions. Crossing count never
increases.
"""

from __future__ import annotations

import random

from .pdcode import Diagram


def reduce_once(d: Diagram) -> bool:
    """Apply one R1 or R2 reduction in place; True if anything happened."""
    for cid in sorted(d.x):
        c = d.x[cid]
        for s in range(4):
            if c.adj[s] == (cid, (s + 1) % 4):
                d.excise({cid: [(0, 2), (1, 3)]})
                return True
    for cid in sorted(d.x):
        c = d.x[cid]
        for s in range(4):
            c2, s2 = c.adj[s]
            if c2 == cid:
                continue
            if d.x[c2].adj[(s2 - 1) % 4] != (cid, (s + 1) % 4):
                continue
            # poppable only when the strand through this side of the bigon
            # is over at both crossings (or under at both); mixed = clasp
            if c.line_is_over(s) != d.x[c2].line_is_over(s2):
                continue
            d.excise({cid: [(0, 2), (1, 3)], c2: [(0, 2), (1, 3)]})
            return True
    return False


def reduce_r1_r2(d: Diagram) -> Diagram:
    """R1/R2 to a fixed point, in place; returns d for chaining."""
    while reduce_once(d):
        pass
    return d


def _triangles(d: Diagram) -> list[list[tuple[int, int]]]:
    out = []
    for face in d.faces():
        if len(face) != 3:
            continue
        cids = {dart[0] for dart in face}
        if len(cids) == 3:
            out.append(face)
    return out


def _try_r3(d: Diagram, face) -> bool:
    """Attempt an R3 slide on a triangular face; True on success.

    The slide strand must pass entirely over or entirely under the other
    two strands at its two corners. Only edge gluing changes; all
    crossing-local data is preserved.
    """
    for r in range(3):
        (A, a), (B, b), (C, c) = face[r:] + face[:r]
        if d.x[A].adj[a] != (B, (b - 1) % 4):
            continue  # face orientation bookkeeping mismatch; try rotation
        over_at_a = d.x[A].line_is_over(a)
        if over_at_a != d.x[B].line_is_over((b - 1) % 4):
            continue
        # E1 (A-B) is the slide side; C carries the other two strands (T
        # through A and C, U through B and C). Sliding S across C reverses
        # the order of its crossings along S, T and U alike.
        s1 = d.x[A].adj[(a + 2) % 4]    # far end of S beyond A
        s2 = d.x[B].adj[(b + 1) % 4]    # far end of S beyond B
        xt1 = d.x[A].adj[(a + 1) % 4]   # far end of T beyond A
        xt2 = d.x[C].adj[(c + 2) % 4]   # far end of T beyond C
        xu1 = d.x[B].adj[(b + 2) % 4]   # far end of U beyond B
        xu2 = d.x[C].adj[(c + 1) % 4]   # far end of U beyond C
        near = {(A, k) for k in range(4)} | {(B, k) for k in range(4)} \
            | {(C, k) for k in range(4)}
        if {s1, s2, xt1, xt2, xu1, xu2} & near:
            continue  # strands re-enter the triangle's crossings; skip
        d.connect(s1, (B, (b - 1) % 4))
        d.connect((B, (b + 1) % 4), (A, (a + 2) % 4))
        d.connect((A, a), s2)
        d.connect(xt1, (C, c))
        d.connect((C, (c + 2) % 4), (A, (a + 1) % 4))
        d.connect((A, (a - 1) % 4), xt2)
        d.connect(xu1, (C, (c - 1) % 4))
        d.connect((C, (c + 1) % 4), (B, (b + 2) % 4))
        d.connect((B, b), xu2)
        return True
    return False


def simplify(d: Diagram, rng: random.Random | None = None,
             r3_rounds: int = 10) -> Diagram:
    """Reidemeister-simplify a copy of the diagram.

    R1/R2 to a fixed point, then up to `r3_rounds` rounds of 2*n random R3
    slides each, re-reducing after each successful slide. Stops early once
    a round makes no progress.
    """
    rng = rng or random.Random(0)
    d = reduce_r1_r2(d.copy())
    for _ in range(r3_rounds):
        n_before = d.n_crossings()
        if n_before == 0:
            break
        budget = 2 * n_before
        progressed = False
        for _ in range(budget):
            tris = _triangles(d)
            if not tris:
                break
            face = tris[rng.randrange(len(tris))]
            if _try_r3(d, face):
                reduce_r1_r2(d)
                progressed = True
                if d.n_crossings() == 0:
                    break
        if not progressed or d.n_crossings() >= n_before:
            break
    return d
