"""Exact evaluation of Jones at omega = e^{i pi/3} and Q at -conj(golden ratio).

Jones values live in Z[zeta] with zeta = e^{i pi/6} a primitive 12th root of
unity (the polynomial is stored in the half-integer variable s = t^{1/2}, so
t = omega means s = zeta). Q values live in Z[phi], phi the golden ratio.
Both evaluations are integer-exact; the only floating point appearing in the
public API is the reported modulus.
"""

from __future__ import annotations

import math

from .laurent import LaurentPoly


class NotPowerOfSqrt3(Exception):
    """|V(omega)| was not a power of sqrt(3): indicates a computation bug."""


class NotPowerOfSqrt5(Exception):
    """|Q(-phibar)| was not a power of sqrt(5): indicates a computation bug."""


# ---------------------------------------------------------------------------
# Z[zeta_12], basis 1, z, z^2, z^3 with z^4 = z^2 - 1 (Phi_12(z) = z^4-z^2+1)

def _zeta_pow(k: int) -> tuple[int, int, int, int]:
    """zeta^k reduced to the integer basis (1, z, z^2, z^3)."""
    k %= 12
    # zeta^6 = -1, so reduce to k < 6 with a sign.
    sign = 1
    if k >= 6:
        sign, k = -1, k - 6
    if k < 4:
        out = [0, 0, 0, 0]
        out[k] = sign
        return tuple(out)
    if k == 4:  # z^4 = z^2 - 1
        return (-sign, 0, sign, 0)
    # k == 5: z^5 = z^3 - z
    return (0, -sign, 0, sign)


def _cyc_mul(a, b):
    out = [0] * 7
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    # reduce degrees 4..6 via z^4 = z^2 - 1
    for d in (6, 5, 4):
        v = out[d]
        if v:
            out[d] = 0
            out[d - 2] += v
            out[d - 4] -= v
    return tuple(out[:4])


def _cyc_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _cyc_conj(a):
    """Complex conjugation: zeta -> zeta^-1 = zeta^11."""
    out = (0, 0, 0, 0)
    for k, v in enumerate(a):
        if v:
            out = _cyc_add(out, tuple(v * x for x in _zeta_pow(-k)))
    return out


def jones_at_omega(v: LaurentPoly) -> tuple[int, int, int, int]:
    """Evaluate a Jones polynomial (doubled exponents, s = t^{1/2}) at s = zeta_12."""
    acc = (0, 0, 0, 0)
    for e, coef in v.c.items():
        acc = _cyc_add(acc, tuple(coef * x for x in _zeta_pow(e)))
    return acc


def jones_abs_at_omega(v: LaurentPoly) -> tuple[float, int]:
    """Return (|V(omega)|, k) with |V(omega)| = sqrt(3)^k exactly.

    Raises NotPowerOfSqrt3 when the modulus is not a power of sqrt(3); by
    Lickorish-Millett that never happens for an actual Jones polynomial, so
    it signals a bug upstream rather than a valid input state.
    """
    val = jones_at_omega(v)
    sq = _cyc_mul(val, _cyc_conj(val))
    # |V|^2 is real: in the basis, real elements are x + y*(z^2 ... ) hmm —
    # the real subfield is generated by z + z^-1 = sqrt(3); write
    # sq = a0 + a1 z + a2 z^2 + a3 z^3 and use z^2 = (z^4+1+...)...
    # Realness forces sq = x + y*sqrt(3) with sqrt(3) = z - z^3 + z ... ;
    # concretely sqrt(3) = z + z^11 = z - z^5 = z - (z^3 - z) = 2z - z^3.
    a0, a1, a2, a3 = sq
    # Decompose: x + y*(2z - z^3) + (anything else must vanish).
    # From basis coords: a1 = 2y, a3 = -y, a2 must be 0, x = a0.
    y = -a3
    if a2 != 0 or a1 != 2 * y:
        raise NotPowerOfSqrt3(f"|V(omega)|^2 = {sq} not rational")
    if y != 0:
        raise NotPowerOfSqrt3(f"|V(omega)|^2 = {a0} + {y}*sqrt(3), not a power of 3")
    n = a0
    if n <= 0:
        raise NotPowerOfSqrt3(f"|V(omega)|^2 = {n} <= 0")
    k = 0
    while n % 3 == 0:
        n //= 3
        k += 1
    if n != 1:
        raise NotPowerOfSqrt3(f"|V(omega)|^2 = {a0} is not a power of 3")
    return math.sqrt(3.0) ** k, k


# ---------------------------------------------------------------------------
# Z[phi], phi = (1+sqrt 5)/2, phi^2 = phi + 1. Note -phibar = phi - 1 = 1/phi.

def q_at_phibar(q: LaurentPoly) -> tuple[int, int]:
    """Evaluate a Q polynomial at x = -phibar = phi^{-1}; returns (a, b) = a + b*phi."""
    a, b = 0, 0
    for e, coef in q.c.items():
        # x^e = phi^{-e}; phi^-1 = phi - 1, and phi^n satisfies Fibonacci recursion:
        # phi^n = F(n) phi + F(n-1) with F(-n) = (-1)^{n+1} F(n).
        fn, fn1 = _fib(-e), _fib(-e - 1)
        a += coef * fn1
        b += coef * fn
    return a, b


def _fib(n: int) -> int:
    if n >= 0:
        x, y = 0, 1
        for _ in range(n):
            x, y = y, x + y
        return x
    m = -n
    return (-1) ** (m + 1) * _fib(m)


def q_abs_at_phibar(q: LaurentPoly) -> tuple[float, int]:
    """Return (|Q(-phibar)|, k) with |Q(-phibar)| = sqrt(5)^k exactly."""
    a, b = q_at_phibar(q)
    # a + b*phi = (2a + b)/2 + (b/2) sqrt(5); value is +-sqrt(5)^k.
    # k even: b = 0 and |a| = 5^{k/2}. k odd: 2a + b = 0 and |b/2| ... b = +-2*5^{(k-1)/2}? No:
    # value = (b/2) sqrt5 requires 2a+b=0, |value| = |b|/2 * sqrt5 = sqrt5^k
    # => |b|/2 = 5^{(k-1)/2}.
    if b == 0:
        n = abs(a)
        k2 = 0
        while n % 5 == 0:
            n //= 5
            k2 += 1
        if n != 1:
            raise NotPowerOfSqrt5(f"Q(-phibar) = {a}, not a power of sqrt 5")
        return math.sqrt(5.0) ** (2 * k2), 2 * k2
    if 2 * a + b == 0:
        n = abs(b) // 2
        if abs(b) != 2 * n:
            raise NotPowerOfSqrt5(f"Q(-phibar) = {a}+{b}phi")
        k2 = 0
        while n % 5 == 0:
            n //= 5
            k2 += 1
        if n != 1:
            raise NotPowerOfSqrt5(f"Q(-phibar) = {a}+{b}phi, not a power of sqrt 5")
        return math.sqrt(5.0) ** (2 * k2 + 1), 2 * k2 + 1
    raise NotPowerOfSqrt5(f"Q(-phibar) = {a}+{b}phi is irrational but not +-sqrt5^odd")
