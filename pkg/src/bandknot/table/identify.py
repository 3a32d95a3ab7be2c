"""Identification pipeline: lattice polygon -> knot name.

shrink -> project -> simplify -> HOMFLY -> exact table lookup, with
(det, sigma) tie-breaking on HOMFLY collisions and bounded retries using
fresh shrink/projection randomness. Failure is reported as Unknown, never
guessed; composite products are flagged when the HOMFLY factors over the
table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..diagram.project import NoGenericDirection, project
from ..diagram.simplify import simplify
from ..invariants.aggregate import invariant_set
from ..invariants.homfly import HOMFLY_CROSSING_CAP, homfly
from ..lattice.bfacf import shrink
from ..lattice.polygon import LatticePolygon
from .records import KnotTable, load_table

_RETRIES = 3


@dataclass
class IdentificationResult:
    name: str | None                   # None = Unknown
    confidence: str                    # 'exact' | 'tie_broken' | 'ambiguous' | 'unknown'
    crossings_at_identification: int = -1
    retries: int = 0
    composite_factors: tuple[str, str] | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def is_unknown(self) -> bool:
        return self.name is None


class Identifier:
    """Reusable identification context with a shared polynomial cache."""

    def __init__(self, table: KnotTable | None = None, crossing_cap: int = HOMFLY_CROSSING_CAP):
        self.table = table if table is not None else load_table()
        self.cap = crossing_cap
        self.memo: dict = {}
        self._composite_cache: dict[str, tuple[str, str]] = {}

    def identify(self, poly: LatticePolygon, seed: int = 0) -> IdentificationResult:
        last_crossings = -1
        for attempt in range(_RETRIES + 1):
            rng_seed = (seed * 1000003 + attempt * 7919) & 0x7FFFFFFF
            small = shrink(poly, 4, seed=rng_seed) if attempt else \
                shrink(poly, max(4, poly.length // 3), seed=rng_seed,
                       max_rounds=120, patience=12)
            try:
                d = simplify(project(small, direction_seed=rng_seed),
                             random.Random(rng_seed))
            except NoGenericDirection:
                continue
            last_crossings = d.n_crossings()
            if last_crossings > self.cap:
                continue
            h = homfly(d, cap=self.cap, memo=self.memo)
            matches = self.table.lookup_homfly(h)
            if not matches:
                pair = self._composite_split(h)
                return IdentificationResult(
                    None, "unknown", last_crossings, attempt, composite_factors=pair)
            if len(matches) == 1:
                return IdentificationResult(matches[0].name, "exact",
                                            last_crossings, attempt)
            inv = invariant_set(d)
            hits = [r for r in matches if (r.det, r.sigma) == (inv.det, inv.sigma)]
            if len(hits) == 1:
                return IdentificationResult(hits[0].name, "tie_broken",
                                            last_crossings, attempt)
            return IdentificationResult(None, "ambiguous", last_crossings, attempt,
                                        diagnostics={"candidates": [r.name for r in matches]})
        return IdentificationResult(None, "unknown", last_crossings, _RETRIES,
                                    diagnostics={"reason": "crossing cap"})

    def _composite_split(self, h) -> tuple[str, str] | None:
        key = h.serialize()
        if key in self._composite_cache:
            return self._composite_cache[key]
        names = [n for n in self.table.names() if self.table[n].crossing_number > 0]
        pair = None
        for i, n1 in enumerate(names):
            h1 = self.table[n1].homfly
            for n2 in names[i:]:
                if self.table[n1].crossing_number + self.table[n2].crossing_number > 16:
                    continue
                if h1 * self.table[n2].homfly == h:
                    pair = (n1, n2)
                    break
            if pair:
                break
        self._composite_cache[key] = pair
        return pair


def identify(poly: LatticePolygon, table: KnotTable | None = None,
             seed: int = 0) -> IdentificationResult:
    """One-shot identification; build an Identifier for repeated use."""
    return Identifier(table).identify(poly, seed=seed)
