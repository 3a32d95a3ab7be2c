"""Programmatic diagram constructions: braid closures and torus knots.

Used by the data-generation tools and the test suite as an independent
source of reference diagrams. Braid letters are (position, sign) pairs
acting on strands that flow downward; positive sign gives a positive
crossing, so positive words close to positive-writhe links and sigma_1^n
closes to the torus knot/link T(2, n) with writhe n.
"""

from __future__ import annotations

from .diagram.pdcode import Diagram


def braid_closure(word: list[tuple[int, int]], n_strands: int) -> Diagram:
    """Trace closure of a braid word; letters are (i, +-1) for sigma_i^(+-1).

    Positions are 0-based; letter (i, s) crosses strands at positions i and
    i+1. Slots: 0 = top-left in, 3 = top-right in, 1 = bottom-left out,
    2 = bottom-right out; positive sign = the 0-2 line (top-left entering)
    passes over.
    """
    d = Diagram()
    dangling: list = [None] * n_strands
    first_in: list = [None] * n_strands
    for (i, s) in word:
        if not (0 <= i < n_strands - 1) or s not in (1, -1):
            raise ValueError(f"bad braid letter {(i, s)}")
        cid = d.new_crossing(over02=(s == -1), in02=0, in13=3)
        for pos, in_slot in ((i, 0), (i + 1, 3)):
            if dangling[pos] is None:
                first_in[pos] = (cid, in_slot)
            else:
                d.connect(dangling[pos], (cid, in_slot))
        dangling[i] = (cid, 1)
        dangling[i + 1] = (cid, 2)
    for pos in range(n_strands):
        if dangling[pos] is None:
            d.free_circles += 1
        else:
            d.connect(dangling[pos], first_in[pos])
    d.check()
    return d


def torus_2n_diagram(n: int) -> Diagram:
    """Standard diagram of the torus knot/link T(2, n); n < 0 mirrors."""
    if n == 0:
        d = Diagram()
        d.free_circles = 2
        return d
    sign = 1 if n > 0 else -1
    return braid_closure([(0, sign)] * abs(n), 2)
