"""Small exact linear algebra: fields (Q, F_p, F_{p^2}), integer lattices, Z/p^k.

Matrices are lists of rows.  Everything here is sized for 4x4 to 16x16 problems,
so plain Gaussian elimination is used throughout.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

Matrix = list


# --------------------------------------------------------------------------
# generic field elimination (Fraction or arith.QuadElem entries)

def rref(rows: Sequence[Sequence[Any]], one: Any = Fraction(1)) -> tuple[list[list[Any]], list[int]]:
    """Reduced row echelon form over a field; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = one / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Any]], one: Any = Fraction(1)) -> int:
    return len(rref(rows, one)[1])


def nullspace(rows: Sequence[Sequence[Any]], ncols: int | None = None, one: Any = Fraction(1)) -> list[list[Any]]:
    """Basis of {x : A x = 0} (right kernel)."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows, one) if rows else ([], [])
    zero = one - one
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(red, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """One solution of A x = b over Q, or None."""
    n = len(a[0])
    aug = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return x


def inverse(a: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(a: Sequence[Sequence[Any]], one: Any = Fraction(1)) -> Any:
    m = [list(r) for r in a]
    n = len(m)
    result = one
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            return one - one
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        result = result * m[col][col]
        inv = one / m[col][col]
        for i in range(col + 1, n):
            if m[i][col]:
                f = m[i][col] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return result


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> list[list[Any]]:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), start=row[0] * 0) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[Any]], v: Sequence[Any]) -> list[Any]:
    return [sum((x * y for x, y in zip(row, v)), start=v[0] * 0) for row in a]


def transpose(a: Sequence[Sequence[Any]]) -> list[list[Any]]:
    return [list(c) for c in zip(*a)]


def identity(n: int, one: Any = Fraction(1)) -> list[list[Any]]:
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


# --------------------------------------------------------------------------
# mod p (prime) helpers on integer matrices

def rref_mod(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    m = [[x % p for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod(rows, p)[1])


def nullspace_mod(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    red, pivots = rref_mod(rows, p) if rows else ([], [])
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[free]) % p
        basis.append(v)
    return basis


# --------------------------------------------------------------------------
# integer lattices

def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form of the Z-span of the rows (zero rows dropped).

    Upper triangular with positive pivots and entries above each pivot reduced
    into [0, pivot).
    """
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    out: list[list[int]] = []
    for col in range(ncols):
        active = [r for r in m if r[col]]
        rest = [r for r in m if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        if active:
            piv = active[0]
            if piv[col] < 0:
                piv = [-x for x in piv]
            for i, r in enumerate(out):
                q = r[col] // piv[col]
                if q:
                    out[i] = [a - q * b for a, b in zip(r, piv)]
            out.append(piv)
        m = [r for r in rest if any(r)]
    return out


def int_det(a: Sequence[Sequence[int]]) -> int:
    d = det([[Fraction(x) for x in r] for r in a])
    assert d.denominator == 1
    return int(d)


# --------------------------------------------------------------------------
# Z/p^k: Smith-style elementary divisor valuations

def elementary_divisor_valuations(a: Sequence[Sequence[int]], p: int, k: int) -> list[int]:
    """Valuations of the elementary divisors of A over Z/p^k (k means zero).

    Pivoting always picks the entry of least p-adic valuation, which is a unit
    multiple of a power of p in a local ring, so elimination never stalls.
    """
    mod = p ** k
    m = [[x % mod for x in r] for r in a]
    nrows, ncols = len(m), len(m[0]) if m else 0

    def val(x: int) -> int:
        if x % mod == 0:
            return k
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    out: list[int] = []
    for t in range(min(nrows, ncols)):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if m[i][j] % mod:
                    v = val(m[i][j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            out.extend([k] * (min(nrows, ncols) - t))
            break
        v, i, j = best
        m[t], m[i] = m[i], m[t]
        for r in m:
            r[t], r[j] = r[j], r[t]
        pv = m[t][t]
        unit = pv // p ** v
        uinv = pow(unit, -1, mod)
        for i in range(t + 1, nrows):
            if m[i][t] % mod:
                f = (m[i][t] // p ** v) * uinv % mod
                m[i] = [(x - f * y) % mod for x, y in zip(m[i], m[t])]
        for j in range(t + 1, ncols):
            if m[t][j] % mod:
                f = (m[t][j] // p ** v) * uinv % mod
                for r in m:
                    r[j] = (r[j] - f * r[t]) % mod
        out.append(v)
    return out
