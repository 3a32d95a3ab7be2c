"""HOMFLY-PT polynomial by skein recursion.

Convention: l*P(L+) + l^-1*P(L-) + m*P(L0) = 0 with P(unknot) = 1, so the
split-union factor is delta = -(l + l^-1)/m. LaurentPoly2 exponents are
(l, m).

The recursion switches the first crossing that breaks descending order
along a deterministic traversal and smooths it, reducing to unlinks.
Traversals depend only on flow and adjacency data, which crossing switches
preserve, so the bad-crossing position strictly advances and the recursion
terminates; R1/R2 reduction shrinks everything else.
"""

from __future__ import annotations

from ..diagram.pdcode import Diagram
from ..diagram.simplify import reduce_r1_r2
from .laurent import LaurentPoly, LaurentPoly2

DELTA = LaurentPoly2({(1, -1): -1, (-1, -1): -1})

HOMFLY_CROSSING_CAP = 16


class TooManyCrossings(Exception):
    pass


def _traversal(d: Diagram):
    """Arrival darts, component by component, by ascending crossing id."""
    seen = set()
    out = []
    for cid in sorted(d.x):
        c = d.x[cid]
        for s in (c.in02, c.in13):
            if (cid, s) in seen:
                continue
            comp = d._walk((cid, s))
            seen.update(comp)
            out.extend(comp)
    return out


def _first_bad(d: Diagram):
    """First crossing whose first visit arrives on the under strand."""
    visited = set()
    for cid, s in _traversal(d):
        if cid in visited:
            continue
        visited.add(cid)
        if not d.x[cid].line_is_over(s):
            return cid
    return None


def homfly(d: Diagram, cap: int = HOMFLY_CROSSING_CAP,
           memo: dict | None = None) -> LaurentPoly2:
    """Exact HOMFLY-PT polynomial of an oriented link diagram."""
    if memo is None:
        memo = {}
    work = reduce_r1_r2(d.copy())
    if work.n_crossings() > cap:
        raise TooManyCrossings(f"{work.n_crossings()} crossings after reduction (cap {cap})")
    return _rec(work, memo)


def _rec(d: Diagram, memo: dict) -> LaurentPoly2:
    reduce_r1_r2(d)
    if not d.x:
        if d.free_circles == 0:
            return LaurentPoly2.one()
        return DELTA ** (d.free_circles - 1)
    key = d.canonical_key()
    hit = memo.get(key)
    if hit is not None:
        return hit
    bad = _first_bad(d)
    if bad is None:
        ncomp = d.n_components()
        val = DELTA ** (ncomp - 1)
        memo[key] = val
        return val
    sign = d.x[bad].sign
    sw = d.copy()
    sw.switch(bad)
    sm = d.copy()
    sm.smooth_oriented(bad)
    p_sw = _rec(sw, memo)
    p_sm = _rec(sm, memo)
    if sign > 0:
        # P+ = -l^-2 P-  - l^-1 m P0
        val = LaurentPoly2({(-2, 0): -1}) * p_sw + LaurentPoly2({(-1, 1): -1}) * p_sm
    else:
        # P- = -l^2 P+  - l m P0
        val = LaurentPoly2({(2, 0): -1}) * p_sw + LaurentPoly2({(1, 1): -1}) * p_sm
    memo[key] = val
    return val


def jones_from_homfly(h: LaurentPoly2) -> LaurentPoly:
    """Jones polynomial in the doubled-exponent variable s = t^{1/2}.

    Substitution: l = i t^-1, m = -i (t^1/2 - t^-1/2). Monomial l^a m^b
    contributes i^(a-b) t^-a (s - s^-1)^b; a-b is even for any link, so
    coefficients stay integral.
    """
    out = LaurentPoly.zero()
    binom_cache: dict[int, LaurentPoly] = {}
    for (a, b), coef in h.c.items():
        k = (a - b) % 4
        if k % 2 != 0:
            raise ValueError("odd i-power in Jones specialization; not a link HOMFLY")
        unit = 1 if k == 0 else -1
        if b not in binom_cache:
            binom_cache[b] = LaurentPoly({1: 1, -1: -1}) ** b
        out = out + (coef * unit) * binom_cache[b].shift(-2 * a)
    return out


def jones_derivative_at_minus_one(v: LaurentPoly) -> int:
    """V'(K; -1) for a knot, exactly.

    v is in the doubled variable s = t^{1/2}; knots only use even powers,
    so V(t) = sum c_e t^(e/2) and V'(-1) = sum c_e (e/2) (-1)^(e/2 - 1).
    """
    total = 0
    for e, coef in v.c.items():
        if e % 2:
            raise ValueError("half-integer Jones exponent: input is not a knot")
        k = e // 2
        if k == 0:
            continue
        total += coef * k * (-1) ** (k - 1)
    return total


def alexander_from_homfly(h: LaurentPoly2) -> LaurentPoly:
    """Alexander polynomial (doubled exponents): l = i, m = i(t^1/2 - t^-1/2)."""
    out = LaurentPoly.zero()
    for (a, b), coef in h.c.items():
        k = (a + b) % 4
        if k % 2 != 0:
            raise ValueError("odd i-power in Alexander specialization")
        unit = 1 if k == 0 else -1
        out = out + (coef * unit) * (LaurentPoly({1: 1, -1: -1}) ** b)
    return out
