"""BLM/Ho Q polynomial via the unoriented 4-term skein recursion.

Q(L+) + Q(L-) = x (Q(L0) + Q(Linf)), Q(unknot) = 1,
Q(c-component unlink) = (2x^-1 - 1)^(c-1).

Same descending-order termination scheme as the HOMFLY engine; the extra
smoothing discards orientation, so flows are repaired afterwards (Q does
not depend on them).
"""

from __future__ import annotations

from ..diagram.pdcode import Diagram
from ..diagram.simplify import reduce_r1_r2
from .homfly import _first_bad
from .laurent import LaurentPoly

Q_CROSSING_CAP = 12

Q_UNLINK = LaurentPoly({-1: 2, 0: -1})


class TooManyCrossingsQ(Exception):
    pass


def q_polynomial(d: Diagram, cap: int = Q_CROSSING_CAP,
                 memo: dict | None = None) -> LaurentPoly:
    if memo is None:
        memo = {}
    work = reduce_r1_r2(d.copy())
    if work.n_crossings() > cap:
        raise TooManyCrossingsQ(f"{work.n_crossings()} crossings after reduction (cap {cap})")
    return _rec(work, memo)


def _rec(d: Diagram, memo: dict) -> LaurentPoly:
    reduce_r1_r2(d)
    if not d.x:
        if d.free_circles == 0:
            return LaurentPoly.one()
        return Q_UNLINK ** (d.free_circles - 1)
    key = ("Q",) + d.canonical_key()
    hit = memo.get(key)
    if hit is not None:
        return hit
    bad = _first_bad(d)
    if bad is None:
        val = Q_UNLINK ** (d.n_components() - 1)
        memo[key] = val
        return val
    sw = d.copy()
    sw.switch(bad)
    s0 = d.copy()
    s0.smooth_oriented(bad)
    si = d.copy()
    si.smooth_disoriented(bad)
    x = LaurentPoly({1: 1})
    val = -_rec(sw, memo) + x * (_rec(s0, memo) + _rec(si, memo))
    memo[key] = val
    return val
