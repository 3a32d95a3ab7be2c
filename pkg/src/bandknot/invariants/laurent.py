"""Exact integer Laurent polynomials in one and two variables.

These are the coefficient rings for every polynomial invariant in the
package. Coefficients are Python ints (arbitrary precision); zero
coefficients are never stored, so equality is dict equality.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    """Integer Laurent polynomial in one variable, exponent -> coefficient."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        c = dict(coeffs) if not isinstance(coeffs, dict) else dict(coeffs)
        self.c = {e: v for e, v in c.items() if v != 0}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def term(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls({exp: coeff})

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.c == ({0: other} if other else {})
        return isinstance(other, LaurentPoly) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.c)
        for e, v in other.c.items():
            w = out.get(e, 0) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = out
        return r

    def __neg__(self) -> "LaurentPoly":
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            r = LaurentPoly.__new__(LaurentPoly)
            r.c = {e: v * other for e, v in self.c.items()}
            return r
        out: dict[int, int] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = out.get(e, 0) + v1 * v2
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = out
        return r

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x^k."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e + k: v for e, v in self.c.items()}
        return r

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self.c) == 1:
                ((e, v),) = self.c.items()
                if v in (1, -1):
                    return LaurentPoly({e * n: v if n % 2 == 0 or v == 1 else -1})
            raise ValueError("negative power of a non-unit Laurent polynomial")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute_monomial(self, coeff: int, exp: int) -> "LaurentPoly":
        """x -> coeff * x^exp, where coeff is +-1."""
        assert coeff in (1, -1)
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e * exp: v * (coeff ** (e % 2)) for e, v in self.c.items()}
        return r

    def mirror(self) -> "LaurentPoly":
        """x -> x^-1."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {-e: v for e, v in self.c.items()}
        return r

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({e - 1: e * v for e, v in self.c.items() if e != 0})

    def min_exp(self) -> int:
        return min(self.c)

    def max_exp(self) -> int:
        return max(self.c)

    def span(self) -> int:
        return max(self.c) - min(self.c) if self.c else 0

    def serialize(self) -> str:
        """Canonical diff-stable form: 'exp:coeff' pairs sorted by exponent."""
        return ";".join(f"{e}:{v}" for e, v in sorted(self.c.items())) or "0"

    @classmethod
    def parse(cls, s: str) -> "LaurentPoly":
        if s == "0":
            return cls()
        out = {}
        for tok in s.split(";"):
            e, v = tok.split(":")
            out[int(e)] = int(v)
        return cls(out)

    def __repr__(self):
        return f"LaurentPoly({self.serialize()!r})"


class LaurentPoly2:
    """Integer Laurent polynomial in two variables, (exp1, exp2) -> coefficient."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | Iterable = ()):
        c = dict(coeffs)
        self.c = {e: v for e, v in c.items() if v != 0}

    @classmethod
    def zero(cls) -> "LaurentPoly2":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly2":
        return cls({(0, 0): 1})

    @classmethod
    def term(cls, coeff: int, e1: int, e2: int) -> "LaurentPoly2":
        return cls({(e1, e2): coeff})

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.c == ({(0, 0): other} if other else {})
        return isinstance(other, LaurentPoly2) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        out = dict(self.c)
        for e, v in other.c.items():
            w = out.get(e, 0) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        r = LaurentPoly2.__new__(LaurentPoly2)
        r.c = out
        return r

    def __neg__(self) -> "LaurentPoly2":
        r = LaurentPoly2.__new__(LaurentPoly2)
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly2":
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly2()
            r = LaurentPoly2.__new__(LaurentPoly2)
            r.c = {e: v * other for e, v in self.c.items()}
            return r
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), v1 in self.c.items():
            for (a2, b2), v2 in other.c.items():
                e = (a1 + a2, b1 + b2)
                w = out.get(e, 0) + v1 * v2
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        r = LaurentPoly2.__new__(LaurentPoly2)
        r.c = out
        return r

    __rmul__ = __mul__

    def shift(self, k1: int, k2: int) -> "LaurentPoly2":
        r = LaurentPoly2.__new__(LaurentPoly2)
        r.c = {(a + k1, b + k2): v for (a, b), v in self.c.items()}
        return r

    def __pow__(self, n: int) -> "LaurentPoly2":
        assert n >= 0
        result = LaurentPoly2.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mirror_first(self) -> "LaurentPoly2":
        """First variable -> its inverse (the HOMFLY mirror map)."""
        r = LaurentPoly2.__new__(LaurentPoly2)
        r.c = {(-a, b): v for (a, b), v in self.c.items()}
        return r

    def serialize(self) -> str:
        return ";".join(f"{a},{b}:{v}" for (a, b), v in sorted(self.c.items())) or "0"

    @classmethod
    def parse(cls, s: str) -> "LaurentPoly2":
        if s == "0":
            return cls()
        out = {}
        for tok in s.split(";"):
            es, v = tok.split(":")
            a, b = es.split(",")
            out[(int(a), int(b))] = int(v)
        return cls(out)

    def __repr__(self):
        return f"LaurentPoly2({self.serialize()!r})"
