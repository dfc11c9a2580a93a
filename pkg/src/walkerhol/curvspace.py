"""Spaces of curvature tensors R(h) and weak curvature tensors P(h).

Conventions: ``P(e_i) e_j = sum_k P^k_{ji} e_k``, so ``P^k_{ji}`` is entry
``[k, j]`` of the matrix ``P(e_i)``.  Ricci contractions follow
``Ric(u, v) = tr(z -> R(u, z) v)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from . import linalg
from .exactnum import Q, Rational
from .liealg import SimElement, Subalgebra, skew_coords, zeros


def _zero_tensor(n: int, rank: int) -> np.ndarray:
    a = np.empty((n,) * rank, dtype=object)
    a[...] = mpq(0)
    return a


def _combine(mats, coeffs, n):
    out = zeros(n)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m * Q(c)
    return out


# ---------------------------------------------------------------------------
# weak curvature tensors
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WeakCurvature:
    """A linear map P: R^n -> so(n), stored as the n matrices P(e_i)."""

    images: tuple[np.ndarray, ...]

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def zero(cls, n: int) -> WeakCurvature:
        return cls(tuple(zeros(n) for _ in range(n)))

    def component(self, k: int, j: int, i: int) -> Rational:
        """P^k_{ji}."""
        return self.images[i][k, j]

    def apply(self, x) -> np.ndarray:
        return _combine(self.images, x, self.n)

    def flat(self) -> list[Rational]:
        return [x for m in self.images for x in m.flat]

    def __add__(self, other: WeakCurvature) -> WeakCurvature:
        return WeakCurvature(tuple(a + b for a, b in zip(self.images, other.images)))

    def scale(self, c) -> WeakCurvature:
        c = Q(c)
        return WeakCurvature(tuple(a * c for a in self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, WeakCurvature) and self.flat() == other.flat()

    def cyclic_defects(self) -> list[tuple[int, int, int]]:
        """Triples (i, j, k) where P^k_{ji} + P^i_{kj} + P^j_{ik} != 0."""
        n = self.n
        bad = []
        for i, j, k in itertools.product(range(n), repeat=3):
            if self.component(k, j, i) + self.component(i, k, j) + self.component(j, i, k):
                bad.append((i, j, k))
        return bad

    def values_in(self, h: Subalgebra) -> bool:
        return all(h.contains(m) for m in self.images)

    def is_weak_curvature(self, h: Subalgebra) -> bool:
        return self.values_in(h) and not self.cyclic_defects()


def ricci_tilde(P: WeakCurvature) -> list[Rational]:
    """sum_i P(e_i) e_i."""
    n = P.n
    return [sum((P.images[i][k, i] for i in range(n)), mpq(0)) for k in range(n)]


def _solve_P_coeffs(h: Subalgebra) -> list[list[Rational]]:
    n, d = h.n, h.dim
    rows = []
    for i, j, k in itertools.combinations(range(n), 3):
        row = {}
        for t, b in enumerate(h.basis):
            for slot, (r, c) in ((i, (k, j)), (j, (i, k)), (k, (j, i))):
                if b[r, c]:
                    key = slot * d + t
                    row[key] = row.get(key, 0) + b[r, c]
        row = {c: v for c, v in row.items() if v}
        if row:
            rows.append(row)
    return linalg.nullspace(rows, n * d)


def _P_from_coeffs(h: Subalgebra, c) -> WeakCurvature:
    d = h.dim
    return WeakCurvature(tuple(_combine(h.basis, c[i * d : (i + 1) * d], h.n) for i in range(h.n)))


_P_CACHE: dict = {}


def solve_P(h: Subalgebra) -> list[WeakCurvature]:
    """Basis of P(h): maps R^n -> h satisfying the cyclic identity."""
    key = h.key()
    if key not in _P_CACHE:
        _P_CACHE[key] = [_P_from_coeffs(h, c) for c in _solve_P_coeffs(h)] if h.dim else []
    return list(_P_CACHE[key])


def _gram(vectors) -> list[list[Rational]]:
    if not vectors:
        return []
    m = np.array([[int(x.numerator) if x.denominator == 1 else x for x in v] for v in vectors], dtype=object)
    g = m.dot(m.T)
    return [[Q(x) for x in row] for row in g]


def _complement_in(basis_vectors, sub_coeffs) -> list[list[Rational]]:
    """Coefficient vectors spanning the orthogonal complement of ``sub_coeffs``.

    Both live in coefficient space of ``basis_vectors`` with the Gram form
    induced by the plain dot product of the vectors.
    """
    k = len(basis_vectors)
    units = [[mpq(int(i == j)) for j in range(k)] for i in range(k)]
    if not sub_coeffs:
        return units
    if len(sub_coeffs) == k:
        return []
    gram = _gram(basis_vectors)
    return linalg.orthogonal_complement(sub_coeffs, units, gram)


def _from_coeffs(items, coeffs, add, zero):
    out = zero
    for c, x in zip(coeffs, items):
        if c:
            out = add(out, x, c)
    return out


def split_P(h: Subalgebra) -> tuple[list[WeakCurvature], list[WeakCurvature]]:
    """(P0, P1): kernel of Ric~ and its orthogonal complement in P(h)."""
    basis = solve_P(h)
    if not basis:
        return [], []
    n = h.n
    rics = [ricci_tilde(P) for P in basis]
    rows = [{r: rics[r][k] for r in range(len(basis)) if rics[r][k]} for k in range(n)]
    p0 = linalg.nullspace(rows, len(basis))
    p1 = _complement_in([P.flat() for P in basis], p0)

    def build(cs):
        return [_from_coeffs(basis, c, lambda a, x, s: a + x.scale(s), WeakCurvature.zero(n)) for c in cs]

    return build(p0), build(p1)


# ---------------------------------------------------------------------------
# curvature tensors with values in h
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CurvatureH:
    """An h-valued 2-form on R^n stored as a tensor t[a, b] = R(e_a, e_b)."""

    tensor: np.ndarray

    @property
    def n(self) -> int:
        return self.tensor.shape[0]

    @classmethod
    def zero(cls, n: int) -> CurvatureH:
        return cls(_zero_tensor(n, 4))

    @classmethod
    def from_values(cls, n: int, values: dict) -> CurvatureH:
        t = _zero_tensor(n, 4)
        for (i, j), m in values.items():
            t[i, j] = m
            t[j, i] = -m
        return cls(t)

    @property
    def values(self) -> dict[tuple[int, int], np.ndarray]:
        n = self.n
        return {(i, j): self.tensor[i, j] for i in range(n) for j in range(i + 1, n)}

    def value(self, i: int, j: int) -> np.ndarray:
        return self.tensor[i, j]

    def flat(self) -> list[Rational]:
        n = self.n
        return [x for i in range(n) for j in range(i + 1, n) for x in self.tensor[i, j].flat]

    def __add__(self, other: CurvatureH) -> CurvatureH:
        return CurvatureH(self.tensor + other.tensor)

    def scale(self, c) -> CurvatureH:
        return CurvatureH(self.tensor * Q(c))

    def __eq__(self, other) -> bool:
        return isinstance(other, CurvatureH) and bool(np.all(self.tensor == other.tensor))

    def bianchi_defects(self) -> list[tuple[int, int, int]]:
        n, t = self.n, self.tensor
        bad = []
        for a, b, c in itertools.combinations(range(n), 3):
            s = t[a, b][:, c] + t[b, c][:, a] + t[c, a][:, b]
            if any(s):
                bad.append((a, b, c))
        return bad

    def pair_symmetric(self) -> bool:
        """<R(u,v)z, w> = <R(z,w)u, v> on basis vectors."""
        n, t = self.n, self.tensor
        for u, v, z, w in itertools.product(range(n), repeat=4):
            if t[u, v][w, z] != t[z, w][v, u]:
                return False
        return True


def _two_form_coeffs(mats, N: int) -> list[list[Rational]]:
    """Coefficient vectors of span(mats)-valued 2-forms on R^N satisfying first Bianchi.

    Unknowns are ordered (pair index over a<b, basis index).
    """
    d = len(mats)
    pairs = {p: k for k, p in enumerate(itertools.combinations(range(N), 2))}
    rows = []
    for a, b, c in itertools.combinations(range(N), 3):
        # R(a,b)e_c + R(b,c)e_a + R(c,a)e_b, with R(c,a) = -R(a,c)
        terms = ((pairs[(a, b)], c, 1), (pairs[(b, c)], a, 1), (pairs[(a, c)], b, -1))
        for r in range(N):
            row = {}
            for pk, col, sgn in terms:
                for t, m in enumerate(mats):
                    if m[r, col]:
                        row[pk * d + t] = row.get(pk * d + t, 0) + sgn * m[r, col]
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    return linalg.nullspace(rows, len(pairs) * d)


def two_form_space_dim(mats, N: int) -> int:
    """dim of the space of span(mats)-valued 2-forms on R^N satisfying first Bianchi."""
    if not mats:
        return 0
    if linalg.rank([list(m.flat) for m in mats]) != len(mats):
        raise ValueError("matrices must be linearly independent")
    return len(_two_form_coeffs(mats, N))


def _R_from_coeffs(h: Subalgebra, c) -> CurvatureH:
    n, d = h.n, h.dim
    t = _zero_tensor(n, 4)
    for k, (i, j) in enumerate(itertools.combinations(range(n), 2)):
        m = _combine(h.basis, c[k * d : (k + 1) * d], n)
        t[i, j] = m
        t[j, i] = -m
    return CurvatureH(t)


_R_CACHE: dict = {}


def solve_R(h: Subalgebra) -> list[CurvatureH]:
    """Basis of R(h)."""
    key = h.key()
    if key not in _R_CACHE:
        _R_CACHE[key] = [_R_from_coeffs(h, c) for c in _two_form_coeffs(h.basis, h.n)] if h.dim else []
    return list(_R_CACHE[key])


def ricci_of_R0(R: CurvatureH) -> np.ndarray:
    """Ric(u, v) = tr(z -> R(u, z) v) = sum_z R(e_u, e_z)[z, v]."""
    n, t = R.n, R.tensor
    ric = zeros(n)
    for u_ in range(n):
        for v in range(n):
            ric[u_, v] = sum((t[u_, z][z, v] for z in range(n)), mpq(0))
    return ric


def scalar_curvature(R: CurvatureH) -> Rational:
    return sum((x for x in np.diagonal(ricci_of_R0(R))), mpq(0))


def act_on_curvature(A: np.ndarray, R: CurvatureH) -> CurvatureH:
    """(A.R)(x, y) = [A, R(x, y)] - R(Ax, y) - R(x, Ay)."""
    t = R.tensor
    comm = np.matmul(A, t) - np.matmul(t, A)
    left = np.tensordot(A, t, axes=([0], [0]))
    right = np.tensordot(t, A, axes=([1], [0])).transpose(0, 3, 1, 2)
    return CurvatureH(comm - left - right)


def _annihilated(h: Subalgebra, basis: list[CurvatureH]) -> list[list[Rational]]:
    """Coefficient vectors of elements of span(basis) killed by every element of h.

    Two fixed generic elements are imposed first (a single element of a
    compact algebra always has a kernel, its zero-weight space); the
    remaining basis elements refine whatever survives.
    """
    if not basis:
        return []
    k = len(basis)
    units = [[mpq(int(i == j)) for j in range(k)] for i in range(k)]
    generic = [
        _combine(h.basis, range(1, h.dim + 1), h.n),
        _combine(h.basis, [(-1) ** t * (t + 1) ** 2 for t in range(h.dim)], h.n),
    ]
    current = units
    for group in [generic] + [[b] for b in h.basis]:
        if not current:
            break
        elems = [_from_coeffs(basis, c, lambda a, x, s: a + x.scale(s), CurvatureH.zero(h.n)) for c in current]
        rows = []
        for A in group:
            images = [act_on_curvature(A, R).flat() for R in elems]
            for pos in range(len(images[0])):
                row = {r: images[r][pos] for r in range(len(images)) if images[r][pos]}
                if row:
                    rows.append(row)
        sol = linalg.nullspace(rows, len(current))
        current = [[sum((c[r] * current[r][i] for r in range(len(current)) if c[r]), mpq(0)) for i in range(k)] for c in sol]
    return current


def split_R(h: Subalgebra) -> tuple[list[CurvatureH], list[CurvatureH], list[CurvatureH]]:
    """(R0, R1, R'): Ricci-flat part, h-invariant part and the orthogonal complement."""
    basis = solve_R(h)
    if not basis:
        return [], [], []
    n, k = h.n, len(basis)
    rics = [ricci_of_R0(R) for R in basis]
    rows = []
    for u_ in range(n):
        for v in range(u_, n):
            row = {r: rics[r][u_, v] for r in range(k) if rics[r][u_, v]}
            if row:
                rows.append(row)
    r0 = linalg.nullspace(rows, k)
    r1 = _annihilated(h, basis)
    both = linalg.span_basis(r0 + r1) if (r0 or r1) else []
    rp = _complement_in([R.flat() for R in basis], both) if len(both) < k else []

    def build(cs):
        return [_from_coeffs(basis, c, lambda a, x, s: a + x.scale(s), CurvatureH.zero(n)) for c in cs]

    return build(r0), build(r1), build(rp)


def curvature_image_span(h: Subalgebra, Rs: list[CurvatureH], Ps: list[WeakCurvature] = ()) -> int:
    """Dimension of span{R(e_a, e_b)} + span{P(e_i)}."""
    n = h.n
    ech = linalg.Echelon(n * (n - 1) // 2)
    for R in Rs:
        for (i, j), m in R.values.items():
            ech.add(skew_coords(m))
            if ech.rank == h.dim:
                return ech.rank
    for P in Ps:
        for m in P.images:
            ech.add(skew_coords(m))
            if ech.rank == h.dim:
                return ech.rank
    return ech.rank


def is_berger(h: Subalgebra) -> bool:
    """h is spanned by the values of its curvature tensors (true for h = 0)."""
    if not h.dim:
        return True
    return curvature_image_span(h, solve_R(h)) == h.dim


def is_symmetric_berger(h: Subalgebra) -> bool:
    if not is_berger(h):
        return False
    basis = solve_R(h)
    _, r1, _ = split_R(h)
    return len(r1) == len(basis)


@dataclass
class SpaceReport:
    dim_R: int
    dim_R0: int
    dim_R1: int
    dim_Rprime: int
    dim_P: int
    dim_P0: int
    dim_P1: int
    berger: bool
    symmetric_berger: bool
    span_R0_P0: int = 0  # dim of the span of values of R0(h) and P0(h)
    blocks: list = field(default_factory=list)

    def items(self) -> list[tuple[str, object]]:
        return [
            ("dim_R", self.dim_R),
            ("dim_R0", self.dim_R0),
            ("dim_R1", self.dim_R1),
            ("dim_Rprime", self.dim_Rprime),
            ("dim_P", self.dim_P),
            ("dim_P0", self.dim_P0),
            ("dim_P1", self.dim_P1),
            ("berger", self.berger),
            ("symmetric_berger", self.symmetric_berger),
        ]


_SPACE_CACHE: dict = {}


def spaces(h: Subalgebra) -> SpaceReport:
    key = h.key()
    if key in _SPACE_CACHE:
        return _SPACE_CACHE[key]
    Rs = solve_R(h)
    r0, r1, rp = split_R(h)
    Ps = solve_P(h)
    p0, p1 = split_P(h)
    berger = curvature_image_span(h, Rs) == h.dim
    rep = SpaceReport(
        len(Rs), len(r0), len(r1), len(rp), len(Ps), len(p0), len(p1),
        berger, berger and len(r1) == len(Rs),
        curvature_image_span(h, r0, p0),
    )
    _SPACE_CACHE[key] = rep
    return rep


# ---------------------------------------------------------------------------
# curvature tensors of g^{1,h} in the basis p, e_1..e_n, q
# ---------------------------------------------------------------------------


def minkowski_gram(n: int) -> np.ndarray:
    """eta in the basis p, e_1..e_n, q."""
    g = zeros(n + 2)
    g[0, n + 1] = g[n + 1, 0] = mpq(1)
    for i in range(1, n + 1):
        g[i, i] = mpq(1)
    return g


def g1_basis(h: Subalgebra) -> list[np.ndarray]:
    """Matrices spanning R + h + R^n inside sim(n), in the basis p, e, q."""
    n = h.n
    out = [SimElement(mpq(1), zeros(n), (mpq(0),) * n).matrix()]
    out += [SimElement(mpq(0), b, (mpq(0),) * n).matrix() for b in h.basis]
    for i in range(n):
        X = tuple(mpq(int(i == j)) for j in range(n))
        out.append(SimElement(mpq(0), zeros(n), X).matrix())
    return out


@dataclass(eq=False)
class CurvatureG1:
    lam: Rational
    v: tuple
    T: np.ndarray
    P: WeakCurvature
    R0: CurvatureH

    @property
    def n(self) -> int:
        return len(self.v)

    def check(self, h: Subalgebra | None = None) -> list[str]:
        problems = []
        if not bool(np.all(self.T == self.T.T)):
            problems.append("T is not symmetric")
        if self.P.cyclic_defects():
            problems.append("P violates the cyclic identity")
        if self.R0.bianchi_defects():
            problems.append("R0 violates the Bianchi identity")
        if h is not None:
            if not self.P.values_in(h):
                problems.append("P takes values outside h")
            if not all(h.contains(m) for m in self.R0.values.values()):
                problems.append("R0 takes values outside h")
        return problems

    def full(self) -> np.ndarray:
        """Tensor t[a, b] = R(b_a, b_b) over b = (p, e_1..e_n, q)."""
        n = self.n
        N = n + 2
        t = _zero_tensor(N, 4)
        zero_n = zeros(n)

        def put(a, b, m):
            t[a, b] = m
            t[b, a] = -m

        put(0, N - 1, SimElement(Q(self.lam), zero_n, tuple(Q(x) for x in self.v)).matrix())
        for a in range(n):
            for b in range(a + 1, n):
                X = tuple(self.P.images[b][:, a] - self.P.images[a][:, b])
                put(1 + a, 1 + b, SimElement(mpq(0), self.R0.tensor[a, b], X).matrix())
            put(1 + a, N - 1, SimElement(Q(self.v[a]), self.P.images[a], tuple(self.T[:, a])).matrix())
        return t


def assemble_g1(lam, v, T, P: WeakCurvature, R0: CurvatureH, h: Subalgebra | None = None) -> CurvatureG1:
    n = len(v)
    T = np.array([[Q(x) for x in row] for row in T], dtype=object).reshape(n, n)
    R = CurvatureG1(Q(lam), tuple(Q(x) for x in v), T, P, R0)
    problems = R.check(h)
    if problems:
        raise ValueError("; ".join(problems))
    return R


def full_bianchi_defects(t: np.ndarray) -> list[tuple[int, int, int]]:
    N = t.shape[0]
    bad = []
    for a, b, c in itertools.combinations(range(N), 3):
        s = t[a, b][:, c] + t[b, c][:, a] + t[c, a][:, b]
        if any(s):
            bad.append((a, b, c))
    return bad


def trace_ricci(t: np.ndarray) -> np.ndarray:
    """Ric(u, v) = tr(z -> R(u, z) v) for a tensor t[a, b] = R(b_a, b_b)."""
    N = t.shape[0]
    ric = zeros(N)
    for u_ in range(N):
        for v in range(N):
            ric[u_, v] = sum((t[u_, z][z, v] for z in range(N)), mpq(0))
    return ric


@dataclass
class RicciG1:
    pq: Rational
    xy: np.ndarray
    xq: tuple
    qq: Rational

    def matrix(self) -> np.ndarray:
        """Full Ricci form in the basis p, e, q."""
        n = self.xy.shape[0]
        N = n + 2
        m = zeros(N)
        m[0, N - 1] = m[N - 1, 0] = Q(self.pq)
        m[1 : n + 1, 1 : n + 1] = self.xy
        for i, x in enumerate(self.xq):
            m[1 + i, N - 1] = m[N - 1, 1 + i] = Q(x)
        m[N - 1, N - 1] = Q(self.qq)
        return m


def ricci_of_g1(R: CurvatureG1) -> RicciG1:
    rt = ricci_tilde(R.P)
    return RicciG1(
        -R.lam,
        ricci_of_R0(R.R0),
        tuple(a - b for a, b in zip(rt, R.v)),
        sum((R.T[i, i] for i in range(R.n)), mpq(0)),
    )


def ricci_operator_g1(R: CurvatureG1) -> np.ndarray:
    """Matrix of the Ricci operator (columns are images of p, e_1..e_n, q)."""
    n = R.n
    N = n + 2
    ric = ricci_of_g1(R)
    op = zeros(N)
    op[0, 0] = -R.lam
    for i in range(n):
        op[0, 1 + i] = ric.xq[i]
        op[1 : n + 1, 1 + i] = ric.xy[:, i]
    op[0, N - 1] = ric.qq
    for i in range(n):
        op[1 + i, N - 1] = ric.xq[i]
    op[N - 1, N - 1] = -R.lam
    return op


def _in_kernel(h: Subalgebra, m: np.ndarray, functionals) -> bool:
    c = h.coordinates(m)
    if c is None:
        return False
    return all(not sum((Q(a) * Q(b) for a, b in zip(c, f)), mpq(0)) for f in functionals)


def constrain_type(R: CurvatureG1, d) -> bool:
    """Whether R lies in R(g) for the holonomy algebra described by ``d``."""
    h = d.h
    if R.check(h):
        return False
    n = R.n
    if d.type == 1:
        return True
    if R.lam:
        return False
    if d.type == 2:
        return not any(R.v)
    if d.type == 3:
        phi = list(d.phi)
        for m in R.R0.values.values():
            if not _in_kernel(h, m, [phi]):
                return False
        for i in range(n):
            c = h.coordinates(R.P.images[i])
            val = sum((Q(a) * Q(b) for a, b in zip(c, phi)), mpq(0))
            if Q(R.v[i]) != val:
                return False
        return True
    if d.type == 4:
        if any(R.v):
            return False
        m = d.m
        psi_cols = [[Q(d.psi[t][k]) for t in range(h.dim)] for k in range(n - m)]
        for mat in R.R0.values.values():
            if not _in_kernel(h, mat, psi_cols):
                return False
        for i in range(n):
            c = h.coordinates(R.P.images[i])
            for k in range(n - m):
                val = sum((Q(a) * b for a, b in zip(c, psi_cols[k])), mpq(0))
                if R.T[m + k, i] != val:
                    return False
        return True
    raise ValueError(f"unknown type {d.type}")
