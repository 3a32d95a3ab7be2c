"""Banding obstruction criteria.

Decides whether a single band surgery between two knot types is ruled out
by the invariant-theoretic tests: branched double cover generator counts,
Jones and Q special-value ratios, Murasugi's coherent signature bound, the
quadratic-residue test from unknotting-number-one knots, the signature/Arf
Moebius-band test, the Jones-derivative congruence mod 24, the
determinant-signature test for quasi-alternating knots, and the complete
classification of bandings between the trefoil and the T(2,n) family.

Every criterion is a necessary condition: OBSTRUCTED certifies no single
banding exists; NOT_OBSTRUCTED never asserts existence. NOT_APPLICABLE is
returned exactly when a stated hypothesis is unmet. All criteria are
symmetric in the two knots and mirror-equivariant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .diagram.pdcode import Diagram
from .invariants.aggregate import InvariantSet, invariant_set
from .invariants.goeritz import goeritz, sym_signature
from .invariants.homfly import homfly, jones_derivative_at_minus_one, jones_from_homfly
from .table.records import KnotRecord, KnotTable

OBSTRUCTED = "OBSTRUCTED"
NOT_OBSTRUCTED = "NOT_OBSTRUCTED"
NOT_APPLICABLE = "NOT_APPLICABLE"

CITATIONS = {
    "e2": "branched double cover generator bound (Hoste-Nakanishi-Taniyama / Abe-Kanenobu)",
    "jones_omega": "Jones evaluation at e^{i pi/3} (Lickorish-Millett / Abe-Kanenobu)",
    "q_phibar": "Q evaluation at the golden-ratio point (Jones / Abe-Kanenobu)",
    "murasugi": "coherent banding signature bound (Murasugi)",
    "kanenobu_qr": "quadratic-residue test from unknotting-number-one knots (Kanenobu)",
    "yasuhara": "signature/Arf obstruction for Moebius-band boundaries (Yasuhara)",
    "km45": "Jones derivative congruence mod 24 (Kanenobu-Miyazawa)",
    "sigdif": "determinant-signature criterion for quasi-alternating knots",
    "torus_classification": "classification of bandings between T(2,3) and T(2,n)",
}


@dataclass
class QueryKnot:
    """Normalized query side: invariants plus whatever table data exists."""

    name: str | None
    det: int
    sigma: int
    arf: int | None
    e2: int
    delta3: int
    rank5: int
    n_components: int
    qa: bool | None = None
    u: int | None = None
    torus_param: int | None = None
    homfly: object = None
    sigma_options: tuple = ()   # links: signatures over component orientations

    @property
    def is_unknot(self) -> bool:
        return self.torus_param in (1, -1) or (self.name == "0_1")


@dataclass
class TorusLink:
    """The 2-strand torus link T(2, n) for even n, used in coherent queries."""

    n: int

    def __post_init__(self):
        if self.n % 2 or self.n == 0:
            raise ValueError("TorusLink is for even n != 0")


@dataclass
class BandingQuery:
    k1: QueryKnot
    k2: QueryKnot
    mode: str  # 'non-coherent' | 'coherent'

    def __post_init__(self):
        if self.mode not in ("non-coherent", "coherent"):
            raise ValueError(f"bad mode {self.mode!r}")
        if self.mode == "non-coherent":
            if self.k1.n_components != 1 or self.k2.n_components != 1:
                raise ValueError("non-coherent banding relates knots to knots")


@dataclass
class Verdict:
    query: dict
    statuses: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def overall(self) -> str:
        return OBSTRUCTED if any(s == OBSTRUCTED for s in self.statuses.values()) \
            else NOT_OBSTRUCTED

    def to_json(self) -> str:
        return json.dumps({
            "query": self.query,
            "criteria": {name: {"status": self.statuses[name],
                                "witness": self.witnesses.get(name),
                                "citation": CITATIONS[name]}
                         for name in sorted(self.statuses)},
            "overall": self.overall,
        }, indent=2, sort_keys=True)


def _from_record(r: KnotRecord) -> QueryKnot:
    return QueryKnot(name=r.name, det=r.det, sigma=r.sigma, arf=r.arf,
                     e2=r.e2, delta3=r.delta3, rank5=r.rank5, n_components=1,
                     qa=r.qa, u=r.u, torus_param=r.torus_param, homfly=r.homfly)


def _from_diagram(d: Diagram, table: KnotTable | None) -> QueryKnot:
    h = homfly(d)
    if table is not None:
        hits = table.lookup_homfly(h)
        if len(hits) == 1:
            inv = invariant_set(d)
            if (hits[0].det, hits[0].sigma) == (inv.det, inv.sigma):
                return _from_record(hits[0])
    inv = invariant_set(d)
    opts = ()
    if inv.n_components == 2:
        g, mu = goeritz(d)
        sig1 = sym_signature(g) - mu
        rev = _reverse_one_component(d)
        g2, mu2 = goeritz(rev)
        sig2 = sym_signature(g2) - mu2
        opts = (sig1, sig2)
    return QueryKnot(name=None, det=inv.det, sigma=inv.sigma,
                     arf=inv.arf if inv.n_components == 1 else None,
                     e2=inv.e2, delta3=inv.delta3, rank5=inv.rank5,
                     n_components=inv.n_components, homfly=h,
                     sigma_options=opts)


def _reverse_one_component(d: Diagram) -> Diagram:
    out = d.copy()
    comps = out.components()
    if not comps:
        return out
    flipped = set()
    for cid, s in comps[0]:
        line = (cid, s % 2)
        if line in flipped:
            continue
        flipped.add(line)
        c = out.x[cid]
        if s % 2 == 0:
            c.in02 = (c.in02 + 2) % 4
        else:
            c.in13 = (c.in13 + 2) % 4
    return out


def _from_torus_link(t: TorusLink) -> QueryKnot:
    n = t.n
    det = abs(n)
    if n > 0:
        opts = (1 - n, 1)
    else:
        opts = (-1 - n, -1)
    return QueryKnot(name=f"T(2,{n})", det=det, sigma=opts[0], arf=None,
                     e2=1 if det > 1 else 0,
                     delta3=1 if det % 3 == 0 else 0,
                     rank5=1 if det % 5 == 0 else 0,
                     n_components=2, torus_param=n, sigma_options=opts)


def normalize(side, table: KnotTable | None = None) -> QueryKnot:
    if isinstance(side, QueryKnot):
        return side
    if isinstance(side, KnotRecord):
        return _from_record(side)
    if isinstance(side, TorusLink):
        return _from_torus_link(side)
    if isinstance(side, Diagram):
        return _from_diagram(side, table)
    if isinstance(side, str):
        if table is None:
            raise ValueError("name lookup needs a table")
        if side.startswith("T(2,") and side.endswith(")"):
            n = int(side[4:-1])
            if n % 2 == 0:
                return _from_torus_link(TorusLink(n))
        return _from_record(table[side])
    raise TypeError(f"cannot interpret query side {side!r}")


def make_query(k1, k2, mode: str = "non-coherent",
               table: KnotTable | None = None) -> BandingQuery:
    return BandingQuery(normalize(k1, table), normalize(k2, table), mode)


# -- criteria ----------------------------------------------------------------

def criterion_e2(q: BandingQuery):
    if q.mode != "non-coherent":
        return NOT_APPLICABLE, {"reason": "stated for knot-to-knot bandings"}
    gap = abs(q.k1.e2 - q.k2.e2)
    w = {"e2": (q.k1.e2, q.k2.e2), "gap": gap}
    return (OBSTRUCTED if gap > 1 else NOT_OBSTRUCTED), w


def criterion_jones_omega(q: BandingQuery):
    gap = abs(q.k1.delta3 - q.k2.delta3)
    w = {"delta3": (q.k1.delta3, q.k2.delta3), "gap": gap,
         "ratio": f"sqrt(3)^{q.k1.delta3 - q.k2.delta3}"}
    return (OBSTRUCTED if gap > 1 else NOT_OBSTRUCTED), w


def criterion_q_phibar(q: BandingQuery):
    gap = abs(q.k1.rank5 - q.k2.rank5)
    w = {"rank5": (q.k1.rank5, q.k2.rank5), "gap": gap,
         "ratio": f"sqrt(5)^{q.k1.rank5 - q.k2.rank5}"}
    return (OBSTRUCTED if gap > 1 else NOT_OBSTRUCTED), w


def criterion_murasugi(q: BandingQuery):
    if q.mode != "coherent":
        return NOT_APPLICABLE, {"reason": "coherent bandings only"}
    s1 = q.k1.sigma_options or (q.k1.sigma,)
    s2 = q.k2.sigma_options or (q.k2.sigma,)
    gaps = [abs(a - b) for a in s1 for b in s2]
    w = {"sigma_choices": (tuple(s1), tuple(s2)), "min_gap": min(gaps)}
    return (OBSTRUCTED if min(gaps) > 1 else NOT_OBSTRUCTED), w


def _qr_test(det_k: int, det_l: int):
    """Is +-2*det_l a square mod det_k? Returns (passes, witness_s)."""
    squares = {(s * s) % det_k for s in range(det_k)}
    for sign in (1, -1):
        if (sign * 2 * det_l) % det_k in squares:
            s = next(s for s in range(det_k) if (s * s) % det_k == (sign * 2 * det_l) % det_k)
            return True, (sign, s)
    return False, None


def criterion_kanenobu_qr(q: BandingQuery):
    tested = {}
    applicable = False
    for a, b, tag in ((q.k1, q.k2, "1->2"), (q.k2, q.k1, "2->1")):
        if a.u == 1:
            applicable = True
            ok, wit = _qr_test(a.det, b.det)
            tested[tag] = {"det_K": a.det, "det_L": b.det,
                           "residue": wit, "passes": ok}
    if not applicable:
        return NOT_APPLICABLE, {"reason": "no side has unknotting number one in the table"}
    obstructed = any(not t["passes"] for t in tested.values())
    return (OBSTRUCTED if obstructed else NOT_OBSTRUCTED), tested


def _yasuhara_side(k: QueryKnot):
    # is there an integer x with |8x + 4 Arf - sigma| <= 2 ?
    val = 4 * k.arf - k.sigma
    rem = val % 8
    solvable = rem <= 2 or rem >= 6
    return solvable, {"sigma": k.sigma, "arf": k.arf, "residue_mod8": rem}


def criterion_yasuhara(q: BandingQuery):
    if q.mode != "non-coherent":
        return NOT_APPLICABLE, {"reason": "stated for knot-to-knot bandings"}
    sides = []
    if q.k2.is_unknot and not q.k1.is_unknot:
        sides.append(q.k1)
    if q.k1.is_unknot and not q.k2.is_unknot:
        sides.append(q.k2)
    if q.k1.is_unknot and q.k2.is_unknot:
        return NOT_OBSTRUCTED, {"note": "unknot to unknot; x = 0 works"}
    if not sides:
        return NOT_APPLICABLE, {"reason": "neither side is the unknot"}
    k = sides[0]
    solvable, w = _yasuhara_side(k)
    return (NOT_OBSTRUCTED if solvable else OBSTRUCTED), w


def criterion_km45(q: BandingQuery):
    if q.mode != "non-coherent":
        return NOT_APPLICABLE, {"reason": "tests H(2)-unknotting"}
    if q.k2.is_unknot and not q.k1.is_unknot:
        k = q.k1
    elif q.k1.is_unknot and not q.k2.is_unknot:
        k = q.k2
    else:
        return NOT_APPLICABLE, {"reason": "needs one side to be the unknot"}
    if k.det % 3 != 0:
        return NOT_APPLICABLE, {"reason": f"det {k.det} not divisible by 3"}
    m = k.sigma % 8
    if m == 2:
        eps = 1
    elif m == 6:
        eps = -1
    else:
        return NOT_APPLICABLE, {"reason": f"sigma {k.sigma} != +-2 mod 8"}
    if k.homfly is None:
        return NOT_APPLICABLE, {"reason": "Jones polynomial unavailable"}
    vprime = jones_derivative_at_minus_one(jones_from_homfly(k.homfly))
    target = ((-1) ** k.arf) * 8 * eps
    ok = (vprime - target) % 24 == 0
    w = {"v_prime_at_minus1": vprime, "target": target % 24, "eps": eps,
         "arf": k.arf, "congruent_mod_24": ok}
    return (NOT_OBSTRUCTED if ok else OBSTRUCTED), w


def _squarefree(m: int) -> bool:
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 1
    return True


def criterion_sigdif(q: BandingQuery):
    if q.mode != "non-coherent":
        return NOT_APPLICABLE, {"reason": "stated for knot-to-knot bandings"}
    if q.k1.qa is not True or q.k2.qa is not True:
        return NOT_APPLICABLE, {"reason": "quasi-alternating hypothesis not established"}
    if q.k1.det != q.k2.det:
        return NOT_APPLICABLE, {"reason": "determinants differ"}
    if not _squarefree(q.k1.det):
        return NOT_APPLICABLE, {"reason": f"determinant {q.k1.det} is not square-free"}
    gap = abs(q.k1.sigma - q.k2.sigma)
    w = {"det": q.k1.det, "sigma": (q.k1.sigma, q.k2.sigma), "gap": gap}
    return (OBSTRUCTED if gap not in (0, 8) else NOT_OBSTRUCTED), w


_NC_ALLOWED = {1, -1, 3, 7}
_C_ALLOWED = {2, -2, 4, -6}


def criterion_torus_classification(q: BandingQuery):
    pair = {q.k1.torus_param, q.k2.torus_param}
    if None in pair:
        return NOT_APPLICABLE, {"reason": "not a pair of T(2,n) types"}
    if 3 in pair:
        other = q.k1 if q.k2.torus_param == 3 else q.k2
        n = other.torus_param
        if q.k1.torus_param == 3 and q.k2.torus_param == 3:
            n = 3
    elif -3 in pair:
        # mirror the query: bandings are mirror-equivariant
        other = q.k1 if q.k2.torus_param == -3 else q.k2
        n = -other.torus_param
    else:
        return NOT_APPLICABLE, {"reason": "neither side is the trefoil"}
    allowed = _NC_ALLOWED if q.mode == "non-coherent" else _C_ALLOWED
    w = {"n": n, "allowed": sorted(allowed), "mode": q.mode}
    return (NOT_OBSTRUCTED if n in allowed else OBSTRUCTED), w


CRITERIA = {
    "e2": criterion_e2,
    "jones_omega": criterion_jones_omega,
    "q_phibar": criterion_q_phibar,
    "murasugi": criterion_murasugi,
    "kanenobu_qr": criterion_kanenobu_qr,
    "yasuhara": criterion_yasuhara,
    "km45": criterion_km45,
    "sigdif": criterion_sigdif,
    "torus_classification": criterion_torus_classification,
}


def run_all(k1, k2, mode: str = "non-coherent",
            table: KnotTable | None = None) -> Verdict:
    q = make_query(k1, k2, mode, table)
    v = Verdict(query={
        "K": q.k1.name or f"<det {q.k1.det}, sigma {q.k1.sigma}>",
        "K'": q.k2.name or f"<det {q.k2.det}, sigma {q.k2.sigma}>",
        "mode": q.mode,
    })
    for name, crit in CRITERIA.items():
        status, witness = crit(q)
        v.statuses[name] = status
        v.witnesses[name] = witness
    return v
