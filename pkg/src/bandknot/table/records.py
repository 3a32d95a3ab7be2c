"""Curated knot identity table: records, loading and consistency checks.

The table ships as two text assets: `knots.tsv` (one record per line) and
`pdcodes.txt` (reference PD code per record). Loading with verify=True
recomputes every stored invariant from the reference diagram and aborts
on any mismatch, so the shipped numbers can never drift from the code
that interprets them.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from pathlib import Path

from ..diagram.pdcode import Diagram, parse_pd_tuples
from ..invariants.aggregate import arf_from_det, invariant_set
from ..invariants.homfly import homfly, jones_from_homfly
from ..invariants.laurent import LaurentPoly2
from ..invariants.qpoly import Q_CROSSING_CAP, q_polynomial
from ..invariants.rings import jones_abs_at_omega, q_abs_at_phibar


class TableInconsistent(Exception):
    pass


@dataclass(frozen=True)
class KnotRecord:
    name: str
    crossing_number: int
    chiral: bool
    mirror_name: str          # == name for amphichiral knots
    homfly: LaurentPoly2
    det: int
    sigma: int
    arf: int
    e2: int
    delta3: int
    rank5: int
    qa: bool | None           # None: not sourced
    u: int | None             # unknotting number where sourced
    u2: int | None            # exact H(2)-unknotting number where sourced
    u2_upper: int | None      # upper bound, where sourced
    torus_param: int | None   # n when the knot is T(2, n)

    @property
    def is_mirror_record(self) -> bool:
        return self.name.endswith("*")


class KnotTable:
    def __init__(self, records: list[KnotRecord], pds: dict[str, list[tuple]]):
        self.records = {r.name: r for r in records}
        self.pds = pds
        self.by_homfly: dict[str, list[KnotRecord]] = {}
        for r in records:
            self.by_homfly.setdefault(r.homfly.serialize(), []).append(r)

    def __getitem__(self, name: str) -> KnotRecord:
        return self.records[name]

    def __contains__(self, name: str) -> bool:
        return name in self.records

    def __len__(self) -> int:
        return len(self.records)

    def names(self) -> list[str]:
        return sorted(self.records)

    def reference_diagram(self, name: str) -> Diagram:
        tuples = self.pds[name]
        circles = sum(1 for t in tuples if t == ())
        crossings = [t for t in tuples if t != ()]
        if crossings:
            d = parse_pd_tuples(crossings)
        else:
            d = Diagram()
        d.free_circles += circles
        return d

    def lookup_homfly(self, h: LaurentPoly2) -> list[KnotRecord]:
        return self.by_homfly.get(h.serialize(), [])


def _data_path(filename: str) -> Path:
    return Path(str(importlib.resources.files("bandknot").joinpath("data", filename)))


def _parse_opt_int(tok: str) -> int | None:
    return None if tok == "-" else int(tok)


def load_table(path: str | Path | None = None, pd_path: str | Path | None = None,
               verify: bool = False) -> KnotTable:
    """Load the knot table; verify=True recomputes invariants from PDs."""
    path = Path(path) if path else _data_path("knots.tsv")
    pd_path = Path(pd_path) if pd_path else _data_path("pdcodes.txt")
    pds: dict[str, list[tuple]] = {}
    for line in pd_path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, rest = line.split(None, 1)
        tuples = []
        for tok in rest.split():
            if tok == "U":
                tuples.append(())  # crossingless circle
            elif tok.startswith("X[") and tok.endswith("]"):
                tuples.append(tuple(int(v) for v in tok[2:-1].split(",")))
            else:
                raise TableInconsistent(f"bad PD token {tok!r} for {name}")
        pds[name] = tuples
    records = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        f = line.split("\t")
        if len(f) != 16:
            raise TableInconsistent(f"expected 16 fields, got {len(f)}: {line!r}")
        qa = {"1": True, "0": False, "-": None}[f[11]]
        records.append(KnotRecord(
            name=f[0], crossing_number=int(f[1]), chiral=f[2] == "1",
            mirror_name=f[3], homfly=LaurentPoly2.parse(f[4]), det=int(f[5]),
            sigma=int(f[6]), arf=int(f[7]), e2=int(f[8]), delta3=int(f[9]),
            rank5=int(f[10]), qa=qa, u=_parse_opt_int(f[12]),
            u2=_parse_opt_int(f[13]), u2_upper=_parse_opt_int(f[14]),
            torus_param=_parse_opt_int(f[15])))
    table = KnotTable(records, pds)
    _check_structure(table)
    if verify:
        verify_table(table)
    return table


def _check_structure(table: KnotTable) -> None:
    for r in table.records.values():
        if r.det % 2 == 0:
            raise TableInconsistent(f"{r.name}: even determinant")
        if r.sigma % 2:
            raise TableInconsistent(f"{r.name}: odd signature")
        if r.arf != arf_from_det(r.det):
            raise TableInconsistent(f"{r.name}: Arf does not match det mod 8")
        if not (r.delta3 <= r.e2 and r.rank5 <= r.e2):
            raise TableInconsistent(f"{r.name}: torsion ranks exceed e2")
        m = table.records.get(r.mirror_name)
        if m is None:
            raise TableInconsistent(f"{r.name}: missing mirror record {r.mirror_name}")
        if r.chiral == (r.mirror_name == r.name):
            raise TableInconsistent(f"{r.name}: chirality flag vs mirror name")
        if m.sigma != -r.sigma or m.det != r.det or m.e2 != r.e2:
            raise TableInconsistent(f"{r.name}: mirror invariants mismatch")
        if m.homfly != r.homfly.mirror_first():
            raise TableInconsistent(f"{r.name}: mirror HOMFLY mismatch")
        if r.u is not None and r.u2 is not None and r.u2 > r.u + 1:
            raise TableInconsistent(f"{r.name}: u2 > u + 1")
        if r.torus_param is not None:
            n = r.torus_param
            want_sigma = (1 - n) if n > 0 else (-1 - n)
            if abs(n) != 1 and r.sigma != want_sigma:
                raise TableInconsistent(f"{r.name}: torus signature {r.sigma} != {want_sigma}")
            if r.det != abs(n) and not (abs(n) == 1 and r.det == 1):
                raise TableInconsistent(f"{r.name}: torus determinant")
        if r.name not in table.pds:
            raise TableInconsistent(f"{r.name}: no reference PD code")


def verify_table(table: KnotTable) -> None:
    """Recompute all invariants from reference PDs; raise on any mismatch."""
    for name, r in sorted(table.records.items()):
        d = table.reference_diagram(name)
        h = homfly(d)
        if h != r.homfly:
            raise TableInconsistent(f"{name}: HOMFLY mismatch on recompute")
        inv = invariant_set(d)
        stored = (r.det, r.sigma, r.arf, r.e2, r.delta3, r.rank5)
        got = (inv.det, inv.sigma, inv.arf, inv.e2, inv.delta3, inv.rank5)
        if stored != got:
            raise TableInconsistent(f"{name}: invariants {got} != stored {stored}")
        v = jones_from_homfly(h)
        _, k3 = jones_abs_at_omega(v)
        if k3 != r.delta3:
            raise TableInconsistent(f"{name}: Jones evaluation exponent {k3} != delta3")
        if d.n_crossings() <= Q_CROSSING_CAP:
            _, k5 = q_abs_at_phibar(q_polynomial(d))
            if k5 != r.rank5:
                raise TableInconsistent(f"{name}: Q evaluation exponent {k5} != rank5")
