"""Smith normal form over Z by exact row/column operations.

Input matrices here are small (Goeritz matrices of diagrams below the
crossing cap), so the classical pivot-reduction algorithm with
smallest-pivot selection is plenty; entries are Python ints so nothing
overflows.
"""

from __future__ import annotations


def smith_normal_form(m: list[list[int]]) -> list[int]:
    """Invariant factors d1 | d2 | ... of an integer matrix.

    Returns the nonnegative diagonal of the Smith form, including zeros
    (one per rank deficiency); factors are ordered by divisibility.
    """
    a = [row[:] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    factors: list[int] = []
    top = 0
    while top < min(rows, cols):
        # locate smallest nonzero entry in the remaining block
        piv = None
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best, piv = v, (i, j)
        if piv is None:
            break
        pi, pj = piv
        a[top], a[pi] = a[pi], a[top]
        for row in a:
            row[top], row[pj] = row[pj], row[top]
        # clear row and column; restart if a remainder shrinks the pivot
        while True:
            p = a[top][top]
            changed = False
            for i in range(top + 1, rows):
                if a[i][top]:
                    q = a[i][top] // p
                    for j in range(top, cols):
                        a[i][j] -= q * a[top][j]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
                        changed = True
                        break
            if changed:
                continue
            for j in range(top + 1, cols):
                if a[top][j]:
                    q = a[top][j] // p
                    for i in range(top, rows):
                        a[i][j] -= q * a[i][top]
                    if a[top][j]:
                        for row in a:
                            row[top], row[j] = row[j], row[top]
                        changed = True
                        break
            if not changed:
                break
        # enforce divisibility: pivot must divide every remaining entry
        p = abs(a[top][top])
        fixed = True
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if a[i][j] % p:
                    for k in range(top, cols):
                        a[top][k] += a[i][k]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        factors.append(p)
        top += 1
    rank = len(factors)
    factors.extend([0] * (min(rows, cols) - rank))
    return factors


def h1_structure(goeritz: list[list[int]]) -> tuple[int, int, int]:
    """(e2, delta3, rank5) of the abelian group presented by a Goeritz matrix.

    e2 = minimum number of generators, delta3 / rank5 = Z/3 and Z/5 ranks.
    Zero invariant factors (free summands, links only) count toward all three.
    """
    factors = smith_normal_form(goeritz)
    e2 = sum(1 for d in factors if d != 1)
    delta3 = sum(1 for d in factors if d % 3 == 0)
    rank5 = sum(1 for d in factors if d % 5 == 0)
    return e2, delta3, rank5
