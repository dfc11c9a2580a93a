"""Exact linear algebra over Q.

Sparse rows are ``dict[col, rational]``; internally they are scaled to
primitive integer rows and eliminated fraction-free (cross-multiplication
followed by division by the row content).  Pivots are the first nonzero
column of each incoming row, rows taken in the order given.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from functools import reduce
from math import gcd

import numpy as np
from gmpy2 import mpq

from .exactnum import Q, Rational


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _int_row(row) -> dict[int, int]:
    """Primitive integer multiple of a sparse or dense rational row."""
    if isinstance(row, dict):
        items = [(c, Q(v)) for c, v in row.items() if v]
    else:
        items = [(c, Q(v)) for c, v in enumerate(row) if v]
    if not items:
        return {}
    l = reduce(_lcm, (int(v.denominator) for _, v in items), 1)
    ints = {c: int(v.numerator) * (l // int(v.denominator)) for c, v in items}
    return _primitive(ints)


def _primitive(r: dict[int, int]) -> dict[int, int]:
    if not r:
        return r
    g = reduce(gcd, (abs(v) for v in r.values()))
    lead = r[min(r)]
    if lead < 0:
        g = -g
    if g != 1:
        r = {c: v // g for c, v in r.items()}
    return r


def _eliminate(r: dict[int, int], p: dict[int, int], col: int) -> dict[int, int]:
    a = p[col]
    b = r[col]
    g = gcd(a, b)
    a, b = a // g, b // g
    out = {c: v * a for c, v in r.items()}
    for c, v in p.items():
        s = out.get(c, 0) - b * v
        if s:
            out[c] = s
        else:
            out.pop(c, None)
    return out


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace of Q^ncols."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row) -> dict[int, int]:
        r = _int_row(row)
        while r:
            hit = None
            for c in sorted(r):
                if c in self.pivots:
                    hit = c
                    break
            if hit is None:
                return r
            r = _primitive(_eliminate(r, self.pivots[hit], hit))
        return r

    def add(self, row) -> bool:
        """Insert ``row``; return True if it enlarged the span."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def contains(self, row) -> bool:
        return not self.reduce(row)

    def basis(self) -> list[list[Rational]]:
        return [[mpq(r.get(c, 0)) for c in range(self.ncols)] for _, r in sorted(self.pivots.items())]


def rref_sparse(rows: Iterable) -> dict[int, dict[int, int]]:
    """Reduced row echelon form as ``{pivot_col: integer row}``."""
    ech = Echelon(0)
    for row in rows:
        ech.add(row)
    piv = ech.pivots
    cols = sorted(piv, reverse=True)
    # back substitution: clear entries above each pivot
    for i, c in enumerate(cols):
        pr = piv[c]
        for c2 in cols[i + 1 :]:
            r2 = piv[c2]
            if c in r2:
                piv[c2] = _primitive(_eliminate(r2, pr, c))
    return piv


_PRIME = 2147483629  # largest prime below 2^31; products fit in int64


def rank_mod_p(rows: Sequence, ncols: int, p: int = _PRIME) -> int | None:
    """Rank of the rows reduced mod p (a lower bound for the rational rank).

    Returns None when some denominator is divisible by p.
    """
    m = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        items = row.items() if isinstance(row, dict) else enumerate(row)
        for c, v in items:
            if v:
                v = Q(v)
                den = int(v.denominator) % p
                if den == 0:
                    return None
                m[i, c] = int(v.numerator) % p * pow(den, -1, p) % p
    r = 0
    for c in range(ncols):
        if r == m.shape[0]:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = m[r] * inv % p
        col = m[r + 1 :, c].copy()
        nzr = np.nonzero(col)[0]
        if len(nzr):
            sub = m[r + 1 :][nzr]
            sub = (sub - (col[nzr, None] * m[r]) % p) % p
            m[r + 1 + nzr] = sub
        r += 1
    return r


def nullspace(rows: Iterable, ncols: int) -> list[list[Rational]]:
    """Basis of {x : row . x = 0 for all rows}, one vector per free column."""
    rows = list(rows)
    if ncols and len(rows) * ncols > 20000 and rank_mod_p(rows, ncols) == ncols:
        return []  # full column rank mod p implies full rank over Q
    piv = rref_sparse(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for c, r in piv.items():
            if f in r:
                v[c] = mpq(-r[f], r[c])
        basis.append(v)
    return basis


def reduced_basis(vectors: Iterable, ncols: int) -> list[list[Rational]]:
    """Reduced row echelon basis of span(vectors), pivots scaled to 1."""
    piv = rref_sparse(vectors)
    out = []
    for c in sorted(piv):
        r = piv[c]
        out.append([mpq(r.get(k, 0), r[c]) for k in range(ncols)])
    return out


def rank(vectors: Iterable) -> int:
    ech = Echelon(0)
    for v in vectors:
        ech.add(v)
    return ech.rank


def span_basis(vectors: Iterable) -> list[list[Rational]]:
    """An echelon basis of span(vectors) (vectors must share a length)."""
    vectors = list(vectors)
    if not vectors:
        return []
    ech = Echelon(len(vectors[0]))
    for v in vectors:
        ech.add(v)
    return ech.basis()


def independent_subset(vectors: Sequence) -> list[int]:
    """Indices of a maximal linearly independent prefix-greedy subset."""
    ech = Echelon(0)
    return [i for i, v in enumerate(vectors) if ech.add(v)]


def solve_in_span(basis: Sequence[Sequence], target: Sequence) -> list[Rational] | None:
    """Coefficients c with sum c_k basis[k] = target, or None if target is outside the span."""
    k = len(basis)
    n = len(target)
    # columns: coefficients of basis, last column: target
    rows = []
    for i in range(n):
        row = {j: basis[j][i] for j in range(k) if basis[j][i]}
        if target[i]:
            row[k] = -Q(target[i])
        rows.append(row)
    sol = nullspace(rows, k + 1)
    for v in sol:
        if v[k]:
            return [c / v[k] for c in v[:k]]
    return None


def intersect(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Rational]]:
    """Basis of span(a) ∩ span(b)."""
    if not a or not b:
        return []
    n = len(a[0])
    rows = []
    for i in range(n):
        row = {}
        for j, v in enumerate(a):
            if v[i]:
                row[j] = v[i]
        for j, v in enumerate(b):
            if v[i]:
                row[len(a) + j] = -Q(v[i])
        rows.append(row)
    out = []
    for c in nullspace(rows, len(a) + len(b)):
        vec = [sum((c[j] * a[j][i] for j in range(len(a))), mpq(0)) for i in range(n)]
        out.append(vec)
    return span_basis(out)


def orthogonal_complement(sub: Sequence[Sequence], ambient: Sequence[Sequence], gram=None) -> list[list[Rational]]:
    """Basis of {x in span(ambient) : <x, s> = 0 for s in sub}.

    ``gram`` is the inner-product matrix in the coordinates of the vectors
    (identity when omitted).
    """
    if not ambient:
        return []
    if not sub:
        return [list(v) for v in ambient]
    n = len(ambient[0])

    def ip(x, y):
        if gram is None:
            return sum((Q(x[i]) * y[i] for i in range(n) if x[i] and y[i]), mpq(0))
        return sum((Q(x[i]) * gram[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j]), mpq(0))

    rows = [{k: ip(a, s) for k, a in enumerate(ambient)} for s in sub]
    out = []
    for c in nullspace(rows, len(ambient)):
        out.append([sum((c[k] * ambient[k][i] for k in range(len(ambient)) if c[k]), mpq(0)) for i in range(n)])
    return out


# ---------------------------------------------------------------------------
# dense batch rank (numpy object arrays of python ints)
# ---------------------------------------------------------------------------


def dense_echelon(vectors: Sequence[Sequence]) -> list[list[Rational]]:
    """Echelon basis of the span of many dense rational vectors.

    Vectorized fraction-free (Bareiss) elimination on an object array; used
    where thousands of short vectors are accumulated (holonomy spans).
    """
    vectors = [v for v in vectors]
    if not vectors:
        return []
    rows = []
    for v in vectors:
        r = _int_row(list(v))
        if r:
            rows.append(r)
    if not rows:
        return []
    n = len(vectors[0])
    m = np.zeros((len(rows), n), dtype=object)
    m[:] = 0
    for i, r in enumerate(rows):
        for c, x in r.items():
            m[i, c] = x
    out = []
    prev = 1
    top = 0
    nrows = m.shape[0]
    for col in range(n):
        if top >= nrows:
            break
        nz = np.nonzero(m[top:, col] != 0)[0]
        if len(nz) == 0:
            continue
        k = top + int(nz[0])
        if k != top:
            m[[top, k]] = m[[k, top]]
        piv = m[top, col]
        below = m[top + 1 :]
        if below.shape[0]:
            factors = below[:, col].copy()
            below *= piv
            below -= np.outer(factors, m[top])
            below //= prev
            m[top + 1 :] = below
        prev = piv
        out.append(m[top].copy())
        top += 1
    basis = []
    for r in out:
        basis.append(_int_row(list(r)))
    return [[mpq(r.get(c, 0)) for c in range(n)] for r in basis]


def dense_rank(vectors: Sequence[Sequence]) -> int:
    return len(dense_echelon(vectors))


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k) if a[i][t] and b[t][j]), mpq(0)) for j in range(m)] for i in range(n)]


def mat_inverse(a: Sequence[Sequence]) -> list[list[Rational]]:
    """Inverse of a square rational matrix (Gauss-Jordan)."""
    n = len(a)
    m = [[Q(x) for x in row] + [mpq(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]
