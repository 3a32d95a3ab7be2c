"""One-stop computation of the abelian invariants used by banding criteria."""

from __future__ import annotations

from dataclasses import dataclass

from ..diagram.pdcode import Diagram
from .goeritz import goeritz, int_det, sym_signature
from .snf import h1_structure


@dataclass(frozen=True)
class InvariantSet:
    """det, signature, Arf and branched double cover homology data.

    e2 = minimal generator count of H1 of the double branched cover,
    delta3 / rank5 = its Z/3 and Z/5 dimensions.
    """

    det: int
    sigma: int
    arf: int
    e2: int
    delta3: int
    rank5: int
    n_components: int

    def __post_init__(self):
        if self.n_components == 1:
            assert self.det % 2 == 1, "knot determinant must be odd"
            assert self.sigma % 2 == 0, "knot signature must be even"
        assert self.delta3 <= self.e2 and self.rank5 <= self.e2


def arf_from_det(det: int) -> int:
    """Arf invariant of a knot from det mod 8 (classical equivalence)."""
    if det % 2 == 0:
        raise ValueError("Arf via determinant requires an odd determinant")
    return 0 if det % 8 in (1, 7) else 1


def invariant_set(d: Diagram) -> InvariantSet:
    g, mu = goeritz(d)
    det = abs(int_det(g))
    sigma = sym_signature(g) - mu
    e2, delta3, rank5 = h1_structure(g)
    ncomp = d.n_components()
    arf = arf_from_det(det) if ncomp == 1 else 0
    return InvariantSet(det=det, sigma=sigma, arf=arf, e2=e2,
                        delta3=delta3, rank5=rank5, n_components=ncomp)
