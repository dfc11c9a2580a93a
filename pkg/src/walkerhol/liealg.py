"""Subalgebras of so(n) with exact rational bases.

Matrices are ``numpy`` object arrays of ``mpq``.  A matrix acts on column
vectors, so ``A @ e_j`` is column ``j`` of ``A``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from . import linalg
from .exactnum import Q, Rational, fmt_q


class AlgebraError(ValueError):
    pass


def zeros(n: int, m: int | None = None) -> np.ndarray:
    a = np.empty((n, n if m is None else m), dtype=object)
    a[...] = mpq(0)
    return a


def eye(n: int) -> np.ndarray:
    a = zeros(n)
    for i in range(n):
        a[i, i] = mpq(1)
    return a


def as_matrix(rows) -> np.ndarray:
    rows = [list(r) for r in rows]
    a = zeros(len(rows), len(rows[0]) if rows else 0)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            a[i, j] = Q(v)
    return a


def elementary_skew(n: int, i: int, j: int) -> np.ndarray:
    """E_ij - E_ji."""
    a = zeros(n)
    a[i, j] = mpq(1)
    a[j, i] = mpq(-1)
    return a


def is_skew(a: np.ndarray) -> bool:
    return bool(np.all(a == -a.T))


def is_zero(a: np.ndarray) -> bool:
    return not any(x for x in a.flat)


def bracket(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != b.shape:
        raise AlgebraError("bracket of matrices of different size")
    return a.dot(b) - b.dot(a)


def skew_coords(a: np.ndarray) -> list[Rational]:
    """Strict upper triangle of a skew matrix, row-major."""
    n = a.shape[0]
    return [a[i, j] for i in range(n) for j in range(i + 1, n)]


def from_skew_coords(n: int, v) -> np.ndarray:
    a = zeros(n)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            a[i, j] = Q(v[k])
            a[j, i] = -Q(v[k])
            k += 1
    return a


def flat(a: np.ndarray) -> list[Rational]:
    return list(a.flat)


@dataclass(frozen=True)
class Subalgebra:
    """A subalgebra of so(n) given by linearly independent skew matrices."""

    n: int
    basis: tuple[np.ndarray, ...]
    name: str = ""

    def __post_init__(self):
        for b in self.basis:
            if b.shape != (self.n, self.n):
                raise AlgebraError(f"basis matrix has shape {b.shape}, expected {(self.n, self.n)}")
            if not is_skew(b):
                raise AlgebraError("basis matrix is not skew-symmetric")

    @classmethod
    def spanned_by(cls, n: int, mats, name: str = "") -> Subalgebra:
        """Subalgebra with an echelon basis of span(mats) (closure is not taken)."""
        vecs = linalg.span_basis([skew_coords(m) for m in mats]) if mats else []
        return cls(n, tuple(from_skew_coords(n, v) for v in vecs), name)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[list[Rational]]:
        return [skew_coords(b) for b in self.basis]

    def key(self) -> tuple:
        """Hashable identity of the basis (used to memoize derived spaces)."""
        return (self.n, tuple(tuple(v) for v in self.vectors()))

    def is_independent(self) -> bool:
        return linalg.rank(self.vectors()) == self.dim

    def coordinates(self, a: np.ndarray) -> list[Rational] | None:
        """Coefficients of ``a`` in the basis, or None when a is not in the span."""
        if not self.basis:
            return [] if is_zero(a) else None
        return linalg.solve_in_span(self.vectors(), skew_coords(a))

    def contains(self, a: np.ndarray) -> bool:
        if not is_skew(a):
            return False
        return self.coordinates(a) is not None

    def is_closed(self) -> bool:
        ech = linalg.Echelon(self.n * (self.n - 1) // 2)
        for v in self.vectors():
            ech.add(v)
        for a, b in itertools.combinations(self.basis, 2):
            if not ech.contains(skew_coords(bracket(a, b))):
                return False
        return True

    def derived(self) -> Subalgebra:
        """The commutant [h, h]."""
        return Subalgebra.spanned_by(self.n, [bracket(a, b) for a, b in itertools.combinations(self.basis, 2)])

    def center(self) -> Subalgebra:
        k = self.dim
        rows = []
        for b in self.basis:
            brs = [skew_coords(bracket(a, b)) for a in self.basis]
            for pos in range(len(brs[0]) if brs else 0):
                rows.append({t: brs[t][pos] for t in range(k) if brs[t][pos]})
        sol = linalg.nullspace(rows, k)
        return Subalgebra.spanned_by(self.n, [self.combination(c) for c in sol])

    def combination(self, coeffs) -> np.ndarray:
        out = zeros(self.n)
        for c, b in zip(coeffs, self.basis):
            if c:
                out = out + b * Q(c)
        return out

    def closure(self) -> Subalgebra:
        """Smallest subalgebra containing the basis."""
        m = self.n * (self.n - 1) // 2
        ech = linalg.Echelon(m)
        mats = []
        for b in self.basis:
            if ech.add(skew_coords(b)):
                mats.append(b)
        i = 0
        while i < len(mats):
            for j in range(i):
                c = bracket(mats[i], mats[j])
                if ech.add(skew_coords(c)):
                    mats.append(c)
            i += 1
        return Subalgebra.spanned_by(self.n, mats, self.name)

    def same_span(self, other: Subalgebra) -> bool:
        if self.n != other.n or self.dim != other.dim:
            return False
        return linalg.rank(self.vectors() + other.vectors()) == self.dim

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Subalgebra{label} n={self.n} dim={self.dim}>"


# ---------------------------------------------------------------------------
# builtin algebras
# ---------------------------------------------------------------------------


def so(n: int) -> Subalgebra:
    return Subalgebra(n, tuple(elementary_skew(n, i, j) for i in range(n) for j in range(i + 1, n)), f"so:{n}")


def trivial(n: int) -> Subalgebra:
    return Subalgebra(n, (), f"trivial:{n}")


def _commutant_in_so(n: int, mats, extra_rows=()) -> list[np.ndarray]:
    """Elements A of so(n) commuting with every matrix in ``mats``."""
    gens = [elementary_skew(n, i, j) for i in range(n) for j in range(i + 1, n)]
    rows = []
    for m in mats:
        brs = [bracket(g, m) for g in gens]
        for r in range(n):
            for c in range(n):
                row = {k: b[r, c] for k, b in enumerate(brs) if b[r, c]}
                if row:
                    rows.append(row)
    rows.extend(extra_rows)
    sol = linalg.nullspace(rows, len(gens))
    out = []
    for v in sol:
        a = zeros(n)
        for c, g in zip(v, gens):
            if c:
                a = a + g * c
        out.append(a)
    return out


def complex_structure(m: int) -> np.ndarray:
    """J with J e_{2k} = e_{2k+1} on R^{2m}."""
    j = zeros(2 * m)
    for k in range(m):
        j[2 * k + 1, 2 * k] = mpq(1)
        j[2 * k, 2 * k + 1] = mpq(-1)
    return j


def u(m: int) -> Subalgebra:
    return Subalgebra.spanned_by(2 * m, _commutant_in_so(2 * m, [complex_structure(m)]), f"u:{m}")


def su(m: int) -> Subalgebra:
    n = 2 * m
    jm = complex_structure(m)
    gens = [elementary_skew(n, i, j) for i in range(n) for j in range(i + 1, n)]
    trace_row = {k: np.trace(jm.dot(g)) for k, g in enumerate(gens) if np.trace(jm.dot(g))}
    return Subalgebra.spanned_by(n, _commutant_in_so(n, [jm], [trace_row]), f"su:{m}")


def _quaternion_right(m: int) -> list[np.ndarray]:
    """Right multiplication by i, j, k on H^m = R^{4m} (basis 1, i, j, k per copy)."""
    # images of (1, i, j, k) under q -> q*i, q*j, q*k, as (target, sign)
    tables = {
        "i": [(1, 1), (0, -1), (3, -1), (2, 1)],
        "j": [(2, 1), (3, 1), (0, -1), (1, -1)],
        "k": [(3, 1), (2, -1), (1, 1), (0, -1)],
    }
    out = []
    for key in "ijk":
        r = zeros(4 * m)
        for blk in range(m):
            for src, (dst, s) in enumerate(tables[key]):
                r[4 * blk + dst, 4 * blk + src] = mpq(s)
        out.append(r)
    return out


def sp(m: int) -> Subalgebra:
    return Subalgebra.spanned_by(4 * m, _commutant_in_so(4 * m, _quaternion_right(m)), f"sp:{m}")


def spsp1(m: int) -> Subalgebra:
    mats = list(sp(m).basis) + _quaternion_right(m)
    return Subalgebra.spanned_by(4 * m, mats, f"spsp1:{m}")


# associative 3-form, 1-based indices
G2_FORM = {(1, 2, 3): 1, (1, 4, 5): 1, (1, 6, 7): 1, (2, 4, 6): 1, (2, 5, 7): -1, (3, 4, 7): -1, (3, 5, 6): -1}


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def hodge_star(form: dict, dim: int) -> dict:
    """Euclidean Hodge star of a form given on sorted 1-based index tuples."""
    out = {}
    full = list(range(1, dim + 1))
    for idx, c in form.items():
        comp = tuple(i for i in full if i not in idx)
        out[comp] = out.get(comp, 0) + c * _perm_sign(list(idx) + list(comp))
    return out


def cayley_form(sign: int = 1) -> dict:
    """e^0 ^ phi + sign * (*phi) on R^8, indices 0..7 (0 is the extra direction)."""
    out = {(0,) + k: v for k, v in G2_FORM.items()}
    for k, v in hodge_star(G2_FORM, 7).items():
        out[k] = out.get(k, 0) + sign * v
    return out


def _form_value(form: dict, idx) -> int:
    if len(set(idx)) < len(idx):
        return 0
    key = tuple(sorted(idx))
    c = form.get(key, 0)
    return c * _perm_sign(idx) if c else 0


def form_action_rows(form: dict, n: int, offset: int, gens) -> list[dict]:
    """Linear equations (A . form = 0) in the coefficients of ``gens``.

    ``offset`` maps the form's smallest index label to matrix index 0.
    """
    deg = len(next(iter(form)))
    rows = []
    for idx in itertools.combinations(range(n), deg):
        row = {}
        for k, g in enumerate(gens):
            val = 0
            for s in range(deg):
                for j in range(n):
                    gij = g[j, idx[s]]
                    if gij:
                        lab = list(i + offset for i in idx)
                        lab[s] = j + offset
                        val -= gij * _form_value(form, lab)
            if val:
                row[k] = val
        if row:
            rows.append(row)
    return rows


def stabilizer(form: dict, n: int, offset: int) -> list[np.ndarray]:
    gens = [elementary_skew(n, i, j) for i in range(n) for j in range(i + 1, n)]
    sol = linalg.nullspace(form_action_rows(form, n, offset, gens), len(gens))
    out = []
    for v in sol:
        a = zeros(n)
        for c, g in zip(v, gens):
            if c:
                a = a + g * c
        out.append(a)
    return out


def g2() -> Subalgebra:
    return Subalgebra.spanned_by(7, stabilizer(G2_FORM, 7, 1), "g2")


def spin7() -> Subalgebra:
    mats = stabilizer(cayley_form(1), 8, 0)
    if len(mats) != 21:
        mats = stabilizer(cayley_form(-1), 8, 0)
    return Subalgebra.spanned_by(8, mats, "spin7")


def so3irr5() -> Subalgebra:
    """so(3) acting on traceless symmetric 3x3 matrices (harmonic quadratics) by S -> [A, S].

    Orthonormal for <S, T> = tr(ST)/6: e5 = diag(1,1,-2) has norm 1, the other
    four natural basis vectors have norm^2 1/3 and are mixed by the rows of
    left multiplication by the quaternion 1+i+j (rows orthogonal, norm^2 3).
    """

    def sym(i, j):
        s = zeros(3)
        s[i, j] = s[j, i] = mpq(1)
        return s

    d1 = zeros(3)
    d1[0, 0], d1[1, 1] = mpq(1), mpq(-1)
    d2 = zeros(3)
    d2[0, 0], d2[1, 1], d2[2, 2] = mpq(1), mpq(1), mpq(-2)
    natural = [sym(0, 1), sym(0, 2), sym(1, 2), d1]
    mix = [[1, -1, -1, 0], [1, 1, 0, 1], [1, 0, 1, -1], [0, -1, 1, 1]]
    basis = []
    for row in mix:
        s = zeros(3)
        for c, b in zip(row, natural):
            if c:
                s = s + b * c
        basis.append(s)
    basis.append(d2)

    def ip(s, t):
        return np.trace(s.dot(t)) / 6

    for a, b in itertools.product(range(5), repeat=2):
        assert ip(basis[a], basis[b]) == (1 if a == b else 0)
    mats = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        gen = elementary_skew(3, i, j)
        rho = zeros(5)
        for col, s in enumerate(basis):
            img = bracket(gen, s)
            for row, t in enumerate(basis):
                rho[row, col] = ip(img, t)
        mats.append(rho)
    return Subalgebra.spanned_by(5, mats, "so3irr5")


def builtin(spec: str) -> Subalgebra:
    """``so:n``, ``u:m``, ``su:m``, ``sp:m``, ``spsp1:m``, ``g2``, ``spin7``, ``so3irr5``, ``trivial:n``."""
    name, _, arg = spec.strip().partition(":")
    sized = {"so": so, "u": u, "su": su, "sp": sp, "spsp1": spsp1, "trivial": trivial}
    fixed = {"g2": g2, "spin7": spin7, "so3irr5": so3irr5}
    if name in fixed:
        if arg:
            expected = {"g2": "7", "spin7": "8", "so3irr5": "5"}[name]
            if arg != expected:
                raise AlgebraError(f"{name} has fixed size {expected}, got {arg}")
        return _cached(name, 0, fixed[name])
    if name not in sized:
        raise AlgebraError(f"unknown builtin algebra {spec!r}")
    try:
        k = int(arg)
    except ValueError:
        raise AlgebraError(f"builtin {name} needs an integer size, got {arg!r}") from None
    if k < 0 or (name != "trivial" and k < 1) or (name == "so" and k < 2):
        raise AlgebraError(f"inconsistent size for {name}: {k}")
    return _cached(name, k, lambda: sized[name](k))


_CACHE: dict[tuple[str, int], Subalgebra] = {}


def _cached(name, k, make):
    key = (name, k)
    if key not in _CACHE:
        _CACHE[key] = make()
    return _CACHE[key]


BUILTIN_NAMES = ("so", "u", "su", "sp", "spsp1", "g2", "spin7", "so3irr5", "trivial")


# ---------------------------------------------------------------------------
# direct sums and decomposition
# ---------------------------------------------------------------------------


def direct_sum(parts, trailing: int = 0) -> Subalgebra:
    n = sum(p.n for p in parts) + trailing
    mats = []
    off = 0
    for p in parts:
        for b in p.basis:
            a = zeros(n)
            a[off : off + p.n, off : off + p.n] = b
            mats.append(a)
        off += p.n
    name = "+".join(p.name or f"h{k}" for k, p in enumerate(parts))
    if trailing:
        name = f"{name}+trivial:{trailing}" if name else f"trivial:{n}"
    return Subalgebra(n, tuple(mats), name or f"trivial:{n}")


@dataclass
class Decomposition:
    """Orthogonal splitting R^n = V_1 + ... + V_s + V_{s+1} with h = h_1 + ... + h_s."""

    n: int
    blocks: list[list[list[Rational]]]  # rational bases of V_1..V_s
    trivial_block: list[list[Rational]]  # basis of V_{s+1}
    ideals: list[Subalgebra]
    permutation: list[int] | None  # coordinate order putting blocks first, trivial last
    is_direct_sum: bool = True
    unsplit: list[int] = field(default_factory=list)  # blocks irreducible only over Q

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    @property
    def n_trivial(self) -> int:
        return len(self.trivial_block)

    @property
    def s(self) -> int:
        return len(self.blocks)

    @property
    def n0(self) -> int:
        return self.n - self.n_trivial

    def active_coordinates(self) -> list[int] | None:
        if self.permutation is None:
            return None
        return sorted(self.permutation[: self.n0])


def common_kernel(h: Subalgebra) -> list[list[Rational]]:
    n = h.n
    rows = []
    for b in h.basis:
        for r in range(n):
            row = {c: b[r, c] for c in range(n) if b[r, c]}
            if row:
                rows.append(row)
    return linalg.nullspace(rows, n)


def _unit_vectors(n):
    return [[mpq(int(i == j)) for j in range(n)] for i in range(n)]


def _dot(x, y):
    return sum((Q(a) * b for a, b in zip(x, y) if a and b), mpq(0))


def _symmetric_commutant_on(h: Subalgebra, complement: list[list[Rational]]) -> list[np.ndarray]:
    """Symmetric X with [X, b] = 0 for all b in h and X v = 0 for v in ``complement``."""
    n = h.n
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    gens = []
    for i, j in pairs:
        g = zeros(n)
        g[i, j] = g[j, i] = mpq(1)
        gens.append(g)
    rows = []
    for b in h.basis:
        brs = [bracket(g, b) for g in gens]
        for r in range(n):
            for c in range(n):
                row = {k: x[r, c] for k, x in enumerate(brs) if x[r, c]}
                if row:
                    rows.append(row)
    for v in complement:
        for r in range(n):
            row = {k: g[r].dot(np.array(v, dtype=object)) for k, g in enumerate(gens)}
            row = {k: x for k, x in row.items() if x}
            if row:
                rows.append(row)
    sol = linalg.nullspace(rows, len(gens))
    out = []
    for v in sol:
        x = zeros(n)
        for c, g in zip(v, gens):
            if c:
                x = x + g * c
        out.append(x)
    return out


def _restrict(x: np.ndarray, basis: list[list[Rational]]) -> list[list[Rational]]:
    """Matrix of x on span(basis) in the coordinates of ``basis`` (x must preserve it)."""
    images = [list(x.dot(np.array(v, dtype=object))) for v in basis]
    cols = []
    for img in images:
        c = linalg.solve_in_span(basis, img)
        if c is None:
            raise AlgebraError("matrix does not preserve the subspace")
        cols.append(c)
    k = len(basis)
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def _split_by(m: list[list[Rational]]):
    """Kernels of p(m) for the distinct Q-irreducible factors p of the char. polynomial."""
    import sympy

    k = len(m)
    sm = sympy.Matrix(k, k, lambda i, j: sympy.Rational(int(m[i][j].numerator), int(m[i][j].denominator)))
    lam = sympy.Symbol("lam")
    cp = sm.charpoly(lam).as_expr()
    _, facs = sympy.factor_list(cp, lam)
    if len(facs) < 2:
        return None
    pieces = []
    for fac, _ in facs:
        coeffs = sympy.Poly(fac, lam).all_coeffs()
        acc = sympy.zeros(k, k)
        for c in coeffs:
            acc = acc * sm + c * sympy.eye(k)
        rows = [{j: mpq(int(sympy.fraction(acc[i, j])[0]), int(sympy.fraction(acc[i, j])[1])) for j in range(k) if acc[i, j] != 0} for i in range(k)]
        pieces.append(linalg.nullspace(rows, k))
    return pieces


def _split_block(h: Subalgebra, block: list[list[Rational]]):
    """Split an invariant subspace into minimal ones; returns (blocks, unsplit_flags)."""
    n = h.n
    perp = linalg.orthogonal_complement(block, _unit_vectors(n))
    xs = _symmetric_commutant_on(h, perp)
    if len(xs) <= 1:
        return [block], [False]
    candidates = list(xs)
    for a, b in itertools.combinations(xs, 2):
        candidates.append(a + b)
    for x in candidates:
        m = _restrict(x, block)
        if all(m[i][j] == (m[0][0] if i == j else 0) for i in range(len(m)) for j in range(len(m))):
            continue
        pieces = _split_by(m)
        if not pieces:
            continue
        subs = []
        for kernel in pieces:
            vecs = [[sum((c[t] * block[t][i] for t in range(len(block)) if c[t]), mpq(0)) for i in range(n)] for c in kernel]
            subs.append(linalg.span_basis(vecs))
        out, flags = [], []
        for s in subs:
            b, f = _split_block(h, s)
            out += b
            flags += f
        return out, flags
    return [block], [True]


def _coordinate_support(block) -> list[int] | None:
    """Coordinates spanned by the block if it is a coordinate subspace."""
    ech = linalg.span_basis(block)
    idx = []
    for v in ech:
        nz = [i for i, x in enumerate(v) if x]
        if len(nz) != 1:
            return None
        idx.append(nz[0])
    return sorted(idx)


def decompose(h: Subalgebra) -> Decomposition:
    n = h.n
    kernel = linalg.span_basis(common_kernel(h)) if h.dim else _unit_vectors(n)
    if not h.dim:
        return Decomposition(n, [], kernel, [], list(range(n)))
    active = linalg.orthogonal_complement(kernel, _unit_vectors(n)) if kernel else _unit_vectors(n)
    active = linalg.span_basis(active)
    blocks, flags = _split_block(h, active)
    blocks = [linalg.span_basis(b) for b in blocks]

    def first_coord(b):
        return min(i for v in b for i, x in enumerate(v) if x)

    order = sorted(range(len(blocks)), key=lambda k: first_coord(blocks[k]))
    blocks = [blocks[k] for k in order]
    flags = [flags[k] for k in order]

    ideals = []
    for k, b in enumerate(blocks):
        others = [v for j, bb in enumerate(blocks) if j != k for v in bb] + kernel
        rows = []
        for v in others:
            vv = np.array(v, dtype=object)
            imgs = [x.dot(vv) for x in h.basis]
            for r in range(n):
                row = {t: img[r] for t, img in enumerate(imgs) if img[r]}
                if row:
                    rows.append(row)
        sol = linalg.nullspace(rows, h.dim)
        ideals.append(Subalgebra.spanned_by(n, [h.combination(c) for c in sol], f"{h.name}[{k}]" if h.name else ""))
    is_sum = sum(i.dim for i in ideals) == h.dim

    supports = [_coordinate_support(b) for b in blocks]
    triv = _coordinate_support(kernel) if kernel else []
    if all(s is not None for s in supports) and triv is not None:
        perm = [i for s in supports for i in s] + triv
    else:
        perm = None
    return Decomposition(n, blocks, kernel, ideals, perm, is_sum, [k for k, f in enumerate(flags) if f])


# ---------------------------------------------------------------------------
# sim(n)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimElement:
    """(a, A, X): the sim(n) matrix [[a, X^t, 0], [0, A, -X], [0, 0, -a]]."""

    a: Rational
    A: np.ndarray
    X: tuple

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def matrix(self) -> np.ndarray:
        n = self.n
        m = zeros(n + 2)
        m[0, 0] = Q(self.a)
        m[n + 1, n + 1] = -Q(self.a)
        m[1 : n + 1, 1 : n + 1] = self.A
        for i, x in enumerate(self.X):
            m[0, 1 + i] = Q(x)
            m[1 + i, n + 1] = -Q(x)
        return m

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> SimElement:
        n = m.shape[0] - 2
        el = cls(m[0, 0], m[1 : n + 1, 1 : n + 1].copy(), tuple(m[0, 1 : n + 1]))
        if not bool(np.all(el.matrix() == m)):
            raise AlgebraError("matrix is not in sim(n)")
        return el


def bivector_labels(n: int) -> list[str]:
    """Labels of the bivector basis {p^q, e_i^e_j (i<j), p^e_i, q^e_i}, 1-based e indices."""
    labels = ["p^q"]
    labels += [f"e{i + 1}^e{j + 1}" for i in range(n) for j in range(i + 1, n)]
    labels += [f"p^e{i + 1}" for i in range(n)]
    labels += [f"q^e{i + 1}" for i in range(n)]
    return labels


def sim_to_bivector(e: SimElement) -> list[Rational]:
    """Coefficients of -a p^q + A - p^X in the basis of :func:`bivector_labels`.

    With (u^v)(z) = <u,z>v - <v,z>u, e_i^e_j maps e_i to e_j, so the
    coefficient of e_i^e_j in A is A[j, i].
    """
    n = e.n
    out = [-Q(e.a)]
    out += [e.A[j, i] for i in range(n) for j in range(i + 1, n)]
    out += [-Q(x) for x in e.X]
    out += [mpq(0)] * n
    return out


def bivector_to_sim(coeffs) -> SimElement:
    m = len(coeffs)
    # 1 + n(n-1)/2 + 2n = m
    n = 0
    while 1 + n * (n - 1) // 2 + 2 * n < m:
        n += 1
    if 1 + n * (n - 1) // 2 + 2 * n != m:
        raise AlgebraError("bad bivector length")
    if any(coeffs[m - n :]):
        raise AlgebraError("bivector has a q^e component; not in sim(n)")
    a = -Q(coeffs[0])
    A = zeros(n)
    k = 1
    for i in range(n):
        for j in range(i + 1, n):
            A[j, i] = Q(coeffs[k])
            A[i, j] = -Q(coeffs[k])
            k += 1
    X = tuple(-Q(c) for c in coeffs[k : k + n])
    return SimElement(a, A, X)


# ---------------------------------------------------------------------------
# holonomy descriptors
# ---------------------------------------------------------------------------


@dataclass
class HolonomyDescriptor:
    """One of the four weakly-irreducible types with orthogonal part ``h``.

    ``phi`` (type 3) is the list of values on ``h.basis``; ``psi`` (type 4)
    is a list of (n-m)-vectors, one per basis element, with h acting on the
    first m coordinates.
    """

    type: int
    h: Subalgebra
    phi: list | None = None
    m: int | None = None
    psi: list | None = None
    decomposition: Decomposition | None = None

    def validate(self) -> None:
        if self.type not in (1, 2, 3, 4):
            raise AlgebraError(f"holonomy type must be 1..4, got {self.type}")
        if self.type == 3:
            if self.phi is None or len(self.phi) != self.h.dim or not any(self.phi):
                raise AlgebraError("type 3 needs a nonzero functional phi on h")
            for d in self.h.derived().basis:
                c = self.h.coordinates(d)
                if sum((Q(a) * Q(b) for a, b in zip(c, self.phi)), mpq(0)):
                    raise AlgebraError("phi must vanish on the commutant of h")
        if self.type == 4:
            n, m = self.h.n, self.m
            if m is None or not 0 < m < n:
                raise AlgebraError("type 4 needs 0 < m < n")
            if self.psi is None or len(self.psi) != self.h.dim:
                raise AlgebraError("type 4 needs psi values on every basis element")
            for b in self.h.basis:
                if any(b[i, j] for i in range(n) for j in range(n) if i >= m or j >= m):
                    raise AlgebraError("type 4 orthogonal part must act inside R^m")
            if linalg.rank([list(v) for v in self.psi]) != n - m:
                raise AlgebraError("psi must be surjective onto R^(n-m)")
            for d in self.h.derived().basis:
                c = self.h.coordinates(d)
                val = [sum((Q(c[t]) * Q(self.psi[t][k]) for t in range(self.h.dim)), mpq(0)) for k in range(n - m)]
                if any(val):
                    raise AlgebraError("psi must vanish on the commutant of h")
            if self.h.center().dim < n - m:
                raise AlgebraError("type 4 needs dim z(h) >= n - m")

    def decomposed(self) -> Decomposition:
        if self.decomposition is None:
            self.decomposition = decompose(self.h)
        return self.decomposition

    def label(self) -> str:
        return f"type{self.type}:{self.h.name or 'custom'}"


def format_matrix(a: np.ndarray) -> str:
    return "[" + ",".join("[" + ",".join(fmt_q(x) for x in row) + "]" for row in a) + "]"
