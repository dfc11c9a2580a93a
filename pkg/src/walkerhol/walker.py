"""Lorentzian metrics in Walker coordinates x0..x_{n+1}.

    g = 2 dx0 dx_{n+1} + h_ij dx_i dx_j + 2 u_i dx_i dx_{n+1} + f (dx_{n+1})^2

Matrix index a of the metric is coordinate x_a.  Curvature follows
R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}
and Ric_{bd} = R^a_{bad}.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import gmpy2
import numpy as np
from gmpy2 import mpq

from . import linalg
from .exactnum import EvaluationError, Poly, Q, RatFunc, Rational, as_ratfunc
from .liealg import (
    AlgebraError,
    HolonomyDescriptor,
    SimElement,
    Subalgebra,
    bivector_labels,
    bivector_to_sim,
    decompose,
    skew_coords,
)

log = logging.getLogger(__name__)

HALF = mpq(1, 2)
FAMILIES = ("flat", "diag", "general")


class MetricError(ValueError):
    pass


def _is_zero(x) -> bool:
    return x.is_zero()


# ---------------------------------------------------------------------------
# the metric
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class WalkerMetric:
    """Walker metric; ``h`` is None for the flat family (h_ij = delta_ij)."""

    n: int
    family: str
    u: list
    f: Poly
    h: list | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise MetricError("n must be at least 1")
        if self.family not in FAMILIES:
            raise MetricError(f"unknown family {self.family!r}")
        N = self.n + 2
        if len(self.u) != self.n:
            raise MetricError(f"expected {self.n} components u[i], got {len(self.u)}")
        for p in list(self.u) + [self.f]:
            if p.nvars != N:
                raise MetricError(f"components must use {N} variables")
        for i, p in enumerate(self.u):
            if 0 in p.variables():
                raise MetricError(f"u[{i + 1}] depends on x0")
        if self.family == "flat":
            if self.h is not None and not _is_identity(self.h):
                raise MetricError("flat family requires h = identity")
            self.h = None
        else:
            if self.h is None:
                raise MetricError(f"family {self.family} needs h components")
            if len(self.h) != self.n or any(len(r) != self.n for r in self.h):
                raise MetricError("h must be n x n")
            self.h = [[as_ratfunc(x) for x in row] for row in self.h]
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    if self.h[i][j] != self.h[j][i]:
                        raise MetricError(f"h is not symmetric at ({i + 1},{j + 1})")
            banned = {0} if self.family == "general" else {0, N - 1}
            for row in self.h:
                for x in row:
                    used = x.num.variables() | {v for b, _ in x.factors for v in b.variables()}
                    if used & banned:
                        raise MetricError(f"h component {x} depends on a forbidden coordinate")
            if self.family == "diag" and any(not p.is_zero() for p in self.u):
                raise MetricError("diag family requires u = 0")

    @property
    def nvars(self) -> int:
        return self.n + 2

    @classmethod
    def flat(cls, n: int, u=None, f=None) -> WalkerMetric:
        N = n + 2
        u = list(u) if u is not None else [Poly.zero(N) for _ in range(n)]
        return cls(n, "flat", u, f if f is not None else Poly.zero(N))

    @classmethod
    def minkowski(cls, n: int) -> WalkerMetric:
        return cls.flat(n)

    def polynomial(self) -> bool:
        """True when all components (and the inverse) are polynomial."""
        return self.h is None

    def h_matrix(self) -> list[list]:
        N = self.nvars
        if self.h is None:
            return [[Poly.const(N, int(i == j)) for j in range(self.n)] for i in range(self.n)]
        return self.h

    def components(self) -> list[list]:
        """(n+2) x (n+2) matrix of components (Poly for the flat family, RatFunc otherwise)."""
        if "g" in self._cache:
            return self._cache["g"]
        n, N = self.n, self.nvars
        conv = (lambda p: p) if self.polynomial() else as_ratfunc
        zero = conv(Poly.zero(N))
        g = [[zero] * N for _ in range(N)]
        one = conv(Poly.const(N, 1))
        g[0][N - 1] = g[N - 1][0] = one
        hm = self.h_matrix()
        for i in range(n):
            for j in range(n):
                g[1 + i][1 + j] = conv(hm[i][j]) if self.polynomial() else hm[i][j]
            g[1 + i][N - 1] = g[N - 1][1 + i] = conv(self.u[i])
        g[N - 1][N - 1] = conv(self.f)
        self._cache["g"] = g
        return g

    def evaluate(self, point) -> list[list[Rational]]:
        return [[x.evaluate(point) for x in row] for row in self.components()]

    def same_as(self, other: WalkerMetric) -> bool:
        """Semantic equality of all components."""
        if self.n != other.n:
            return False
        a, b = self.components(), other.components()
        return all(as_ratfunc(x) == as_ratfunc(y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _is_identity(h) -> bool:
    for i, row in enumerate(h):
        for j, x in enumerate(row):
            if as_ratfunc(x) != as_ratfunc(Poly.const(x.nvars, int(i == j))):
                return False
    return True


# ---------------------------------------------------------------------------
# inverse
# ---------------------------------------------------------------------------


def invert_matrix(m: list[list]) -> list[list]:
    """Exact inverse of a square matrix of RatFunc (or Poly) entries."""
    k = len(m)
    if not k:
        return []
    N = m[0][0].nvars
    diag = all(m[i][j].is_zero() for i in range(k) for j in range(k) if i != j)
    if diag:
        out = [[as_ratfunc(Poly.zero(N))] * k for _ in range(k)]
        for i in range(k):
            if m[i][i].is_zero():
                raise MetricError("singular matrix")
            out[i][i] = as_ratfunc(m[i][i]).inverse()
        return out
    a = [[as_ratfunc(x) for x in row] + [as_ratfunc(Poly.const(N, int(i == j))) for j in range(k)] for i, row in enumerate(m)]
    for c in range(k):
        p = next((r for r in range(c, k) if not a[r][c].is_zero()), None)
        if p is None:
            raise MetricError("singular matrix")
        a[c], a[p] = a[p], a[c]
        inv = a[c][c].inverse()
        a[c] = [(x * inv).simplify() for x in a[c]]
        for r in range(k):
            if r != c and not a[r][c].is_zero():
                fac = a[r][c]
                a[r] = [(x - fac * y).simplify() for x, y in zip(a[r], a[c])]
    return [row[k:] for row in a]


def inverse_h(g: WalkerMetric) -> list[list]:
    if "hinv" not in g._cache:
        if g.h is None:
            N = g.nvars
            g._cache["hinv"] = [[Poly.const(N, int(i == j)) for j in range(g.n)] for i in range(g.n)]
        else:
            g._cache["hinv"] = invert_matrix(g.h)
    return g._cache["hinv"]


def inverse_metric(g: WalkerMetric) -> list[list]:
    """Closed form with k = h^{-1}: [[u.k.u - f, -(ku)^T, 1], [-ku, k, 0], [1, 0, 0]]."""
    if "ginv" in g._cache:
        return g._cache["ginv"]
    n, N = g.n, g.nvars
    k = inverse_h(g)
    u = g.u if g.polynomial() else [as_ratfunc(p) for p in g.u]
    f = g.f if g.polynomial() else as_ratfunc(g.f)
    zero = u[0] * 0 if n else f * 0
    ku = []
    for i in range(n):
        s = zero
        for j in range(n):
            if not k[i][j].is_zero() and not u[j].is_zero():
                s = s + k[i][j] * u[j]
        ku.append(s)
    uku = zero
    for i in range(n):
        if not u[i].is_zero() and not ku[i].is_zero():
            uku = uku + u[i] * ku[i]
    one = zero + 1
    inv = [[zero] * N for _ in range(N)]
    inv[0][0] = uku - f
    inv[0][N - 1] = inv[N - 1][0] = one
    for i in range(n):
        inv[0][1 + i] = inv[1 + i][0] = -ku[i]
        for j in range(n):
            inv[1 + i][1 + j] = k[i][j]
    if not g.polynomial():
        inv = [[x.simplify() for x in row] for row in inv]
    g._cache["ginv"] = inv
    return inv


# ---------------------------------------------------------------------------
# curvature from Christoffel symbols (generic in the scalar type)
# ---------------------------------------------------------------------------


def _simp(x):
    return x.simplify() if isinstance(x, RatFunc) else x


def christoffel_of(comps, inv, coords) -> list:
    """G[a][b][c] = 1/2 g^{ad} (d_b g_dc + d_c g_db - d_d g_bc); ``coords[i]`` is the variable of index i."""
    k = len(comps)
    zero = comps[0][0] * 0
    dg = [[[comps[d][c].diff(coords[b]) for b in range(k)] for c in range(k)] for d in range(k)]
    lower = [[[None] * k for _ in range(k)] for _ in range(k)]
    for d in range(k):
        for b in range(k):
            for c in range(b, k):
                s = dg[d][c][b] + dg[d][b][c] - dg[b][c][d]
                lower[d][b][c] = lower[d][c][b] = s * HALF if not s.is_zero() else zero
    G = [[[zero] * k for _ in range(k)] for _ in range(k)]
    for a in range(k):
        for b in range(k):
            for c in range(b, k):
                s = zero
                for d in range(k):
                    if not inv[a][d].is_zero() and not lower[d][b][c].is_zero():
                        s = s + inv[a][d] * lower[d][b][c]
                s = _simp(s)
                G[a][b][c] = G[a][c][b] = s
    return G


def riemann_of(G, coords) -> dict:
    """{(a, b, c, d): R^a_{bcd}} for c < d, nonzero entries only."""
    k = len(G)
    out = {}
    for a in range(k):
        for b in range(k):
            for c in range(k):
                for d in range(c + 1, k):
                    s = G[a][d][b].diff(coords[c]) - G[a][c][b].diff(coords[d])
                    for e in range(k):
                        if not G[a][c][e].is_zero() and not G[e][d][b].is_zero():
                            s = s + G[a][c][e] * G[e][d][b]
                        if not G[a][d][e].is_zero() and not G[e][c][b].is_zero():
                            s = s - G[a][d][e] * G[e][c][b]
                    s = _simp(s)
                    if not s.is_zero():
                        out[(a, b, c, d)] = s
    return out


def ricci_of(G, coords) -> list[list]:
    """Ric_{bd} = d_a G^a_{db} - d_d G^a_{ab} + G^a_{ae} G^e_{db} - G^a_{de} G^e_{ab}."""
    k = len(G)
    zero = G[0][0][0] * 0
    trace = [zero] * k  # G^a_{ae}
    for e in range(k):
        s = zero
        for a in range(k):
            s = s + G[a][a][e]
        trace[e] = s
    ric = [[zero] * k for _ in range(k)]
    for b in range(k):
        for d in range(b, k):
            s = zero
            for a in range(k):
                s = s + G[a][d][b].diff(coords[a])
            s = s - trace[b].diff(coords[d])
            for e in range(k):
                if not trace[e].is_zero() and not G[e][d][b].is_zero():
                    s = s + trace[e] * G[e][d][b]
            for a in range(k):
                for e in range(k):
                    if not G[a][d][e].is_zero() and not G[e][a][b].is_zero():
                        s = s - G[a][d][e] * G[e][a][b]
            s = _simp(s)
            ric[b][d] = ric[d][b] = s
    return ric


def christoffel(g: WalkerMetric) -> list:
    if "G" not in g._cache:
        g._cache["G"] = christoffel_of(g.components(), inverse_metric(g), list(range(g.nvars)))
    return g._cache["G"]


def riemann(g: WalkerMetric) -> dict:
    if "R" not in g._cache:
        g._cache["R"] = riemann_of(christoffel(g), list(range(g.nvars)))
    return g._cache["R"]


def riemann_component(g: WalkerMetric, a: int, b: int, c: int, d: int):
    R = riemann(g)
    if c == d:
        return None
    if c < d:
        return R.get((a, b, c, d))
    r = R.get((a, b, d, c))
    return -r if r is not None else None


def lowered_riemann(g: WalkerMetric) -> dict:
    """{(a, b, c, d): R_{abcd} = g_{ae} R^e_{bcd}} over all index tuples with c != d, nonzero only."""
    comps = g.components()
    N = g.nvars
    out = {}
    R = riemann(g)
    for a in range(N):
        for b in range(N):
            for c in range(N):
                for d in range(N):
                    if c == d:
                        continue
                    s = comps[0][0] * 0
                    for e in range(N):
                        if comps[a][e].is_zero():
                            continue
                        r = R.get((e, b, c, d)) if c < d else R.get((e, b, d, c))
                        if r is None:
                            continue
                        s = s + comps[a][e] * (r if c < d else -r)
                    s = _simp(s)
                    if not s.is_zero():
                        out[(a, b, c, d)] = s
    return out


@dataclass
class RicciField:
    components: list[list]

    def __post_init__(self):
        N = len(self.components)
        for a in range(N):
            for b in range(a + 1, N):
                if as_ratfunc(self.components[a][b]) != as_ratfunc(self.components[b][a]):
                    raise MetricError("Ricci tensor is not symmetric")

    def nonzero(self) -> list[tuple[int, int]]:
        N = len(self.components)
        return [(a, b) for a in range(N) for b in range(a, N) if not _simp(self.components[a][b]).is_zero()]

    def equals(self, other: RicciField) -> bool:
        return all(
            as_ratfunc(x) == as_ratfunc(y)
            for ra, rb in zip(self.components, other.components)
            for x, y in zip(ra, rb)
        )


def ricci(g: WalkerMetric) -> RicciField:
    """Ricci tensor by the general Christoffel pipeline."""
    if "Ric" not in g._cache:
        ric = ricci_of(christoffel(g), list(range(g.nvars)))
        for i in range(g.n + 1):
            if not ric[0][i].is_zero():
                raise MetricError(f"Ric[0][{i}] is not zero; not a Walker metric?")
        g._cache["Ric"] = RicciField(ric)
    return g._cache["Ric"]


def _h_christoffel(g: WalkerMetric):
    """Christoffel symbols of h(x) alone, indices 0..n-1 meaning coordinates 1..n."""
    if "Gh" not in g._cache:
        hm = [[as_ratfunc(x) for x in row] for row in g.h_matrix()]
        hinv = [[as_ratfunc(x) for x in row] for row in inverse_h(g)]
        g._cache["Gh"] = christoffel_of(hm, hinv, list(range(1, g.n + 1)))
    return g._cache["Gh"]


def laplace_beltrami_h(g: WalkerMetric, f) -> RatFunc:
    """sum_ij h^{ij} (d_i d_j f - sum_k G(h)^k_ij d_k f)."""
    n = g.n
    f = as_ratfunc(f)
    hinv = [[as_ratfunc(x) for x in row] for row in inverse_h(g)]
    G = _h_christoffel(g)
    df = [f.diff(1 + k) for k in range(n)]
    out = as_ratfunc(Poly.zero(g.nvars))
    for i in range(n):
        for j in range(n):
            if hinv[i][j].is_zero():
                continue
            s = df[j].diff(1 + i)
            for k in range(n):
                if not G[k][i][j].is_zero() and not df[k].is_zero():
                    s = s - G[k][i][j] * df[k]
            out = out + hinv[i][j] * s
    return out.simplify()


def ricci_formulas_diag(g: WalkerMetric) -> RicciField:
    """Ricci tensor of the u = 0, x_{n+1}-independent h family from the closed formulas."""
    if g.family not in ("diag",) and not (g.family == "flat" and all(p.is_zero() for p in g.u)):
        raise MetricError("ricci_formulas_diag needs the diag family (u = 0, h independent of x_{n+1})")
    n, N = g.n, g.nvars
    f = as_ratfunc(g.f)
    zero = as_ratfunc(Poly.zero(N))
    ric = [[zero] * N for _ in range(N)]
    d00 = f.diff(0).diff(0)
    ric[0][N - 1] = ric[N - 1][0] = d00 * HALF
    hm = [[as_ratfunc(x) for x in row] for row in g.h_matrix()]
    hinv = [[as_ratfunc(x) for x in row] for row in inverse_h(g)]
    rich = ricci_of(christoffel_of(hm, hinv, list(range(1, n + 1))), list(range(1, n + 1)))
    for i in range(n):
        for j in range(n):
            ric[1 + i][1 + j] = rich[i][j]
        ric[1 + i][N - 1] = ric[N - 1][1 + i] = f.diff(0).diff(1 + i) * HALF
    ric[N - 1][N - 1] = ((f * d00 - laplace_beltrami_h(g, f)) * HALF).simplify()
    return RicciField(ric)


def ricci_formulas_flat(g: WalkerMetric) -> RicciField:
    """Ricci tensor of the flat-h family from the closed formulas."""
    if g.family != "flat":
        raise MetricError("ricci_formulas_flat needs the flat family")
    n, N = g.n, g.nvars
    f, u = g.f, g.u
    zero = Poly.zero(N)
    ric = [[zero] * N for _ in range(N)]
    d0f = f.diff(0)
    d00 = d0f.diff(0)
    ric[0][N - 1] = ric[N - 1][0] = d00 * HALF
    curl = [[u[i].diff(1 + j) - u[j].diff(1 + i) for j in range(n)] for i in range(n)]  # d_j u^i - d_i u^j
    for i in range(n):
        s = d0f.diff(1 + i)
        for j in range(n):
            s = s - curl[i][j].diff(1 + j)
        ric[1 + i][N - 1] = ric[N - 1][1 + i] = s * HALF
    usq = zero
    div = zero
    s = zero
    for i in range(n):
        usq = usq + u[i] * u[i]
        div = div + u[i].diff(1 + i)
        s = s - f.diff(1 + i).diff(1 + i)
        s = s + u[i].diff(1 + i).diff(N - 1) * 2
        s = s + u[i] * d0f.diff(1 + i) * 2
        for j in range(i + 1, n):
            # each unordered pair once: the sum over all (i, j) would double it
            s = s + curl[i][j] * curl[i][j]
    s = s + (f - usq) * d00 + d0f * div
    ric[N - 1][N - 1] = s * HALF
    return RicciField(ric)


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------


def einstein_defects(g: WalkerMetric, lam) -> list[tuple[int, int]]:
    lam = Q(lam)
    ric = ricci(g).components
    comps = g.components()
    N = g.nvars
    bad = []
    for a in range(N):
        for b in range(a, N):
            d = ric[a][b] - comps[a][b] * lam if lam else ric[a][b]
            if not _simp(d).is_zero():
                bad.append((a, b))
    return bad


def is_einstein(g: WalkerMetric, lam) -> bool:
    return not einstein_defects(g, lam)


def einstein_constant(g: WalkerMetric) -> Rational | None:
    """The only candidate lambda: Ric_{0,n+1} = (1/2) d_0^2 f must be constant."""
    r = as_ratfunc(ricci(g).components[0][g.nvars - 1]).simplify()
    if r.is_poly() and r.to_poly().is_constant():
        return r.to_poly().constant_term()
    return None


def is_vacuum(g: WalkerMetric) -> bool:
    return is_einstein(g, 0)


def ricci_square(g: WalkerMetric) -> list[list]:
    """Ric_{ac} g^{cd} Ric_{db}."""
    ric = ricci(g).components
    inv = inverse_metric(g)
    N = g.nvars
    zero = ric[0][0] * 0
    tmp = [[zero] * N for _ in range(N)]
    for a in range(N):
        for d in range(N):
            s = zero
            for c in range(N):
                if not ric[a][c].is_zero() and not inv[c][d].is_zero():
                    s = s + ric[a][c] * inv[c][d]
            tmp[a][d] = s
    out = [[zero] * N for _ in range(N)]
    for a in range(N):
        for b in range(N):
            s = zero
            for d in range(N):
                if not tmp[a][d].is_zero() and not ric[d][b].is_zero():
                    s = s + tmp[a][d] * ric[d][b]
            out[a][b] = _simp(s)
    return out


def is_totally_ricci_isotropic(g: WalkerMetric) -> bool:
    return all(x.is_zero() for row in ricci_square(g) for x in row)


def hessian_nondegenerate(g: WalkerMetric) -> bool:
    """det of the Hessian of f in x1..xn is not the zero polynomial."""
    n = g.n
    hess = [[g.f.diff(1 + i).diff(1 + j) for j in range(n)] for i in range(n)]
    # exact determinant via fraction-free elimination on polynomials is costly;
    # a nonzero value at a rational point certifies a nonzero polynomial
    for point in _probe_points(g.nvars):
        vals = [[p.evaluate(point) for p in row] for row in hess]
        if linalg.rank(vals) == n:
            return True
    return _symbolic_det(hess) != 0


def _probe_points(N):
    yield tuple(mpq(0) for _ in range(N))
    yield tuple(mpq(k + 1) for k in range(N))
    yield tuple(mpq((-1) ** k * (2 * k + 3), k + 2) for k in range(N))


def _symbolic_det(m) -> Poly | int:
    k = len(m)
    if k == 0:
        return 1
    if k == 1:
        return m[0][0]
    total = None
    for j in range(k):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _symbolic_det(minor)
        term = term if j % 2 == 0 else -term
        total = term if total is None else total + term
    if total is None or total.is_zero():
        return 0
    return total


# ---------------------------------------------------------------------------
# null frames
# ---------------------------------------------------------------------------


def _rational_sqrt(q: Rational) -> Rational | None:
    num, den = int(q.numerator), int(q.denominator)
    if num < 0 or not gmpy2.is_square(num) or not gmpy2.is_square(den):
        return None
    return mpq(int(gmpy2.isqrt(num)), int(gmpy2.isqrt(den)))


@dataclass
class NullFrame:
    """Vectors p, e_1..e_n, q (coordinate components) at ``point``.

    ``gram`` is the exact Gram matrix; it equals the standard null form
    when ``normalized`` is true.  Otherwise some e_i have an irrational
    norm and are left orthogonal with rational squared norms.
    """

    point: tuple
    vectors: list[list[Rational]]
    gram: list[list[Rational]]
    normalized: bool

    @property
    def matrix(self) -> np.ndarray:
        """Columns are the frame vectors."""
        N = len(self.vectors)
        m = np.empty((N, N), dtype=object)
        for c, v in enumerate(self.vectors):
            for r in range(N):
                m[r, c] = v[r]
        return m


def _gram_of(vectors, gmat):
    N = len(vectors)
    return [
        [sum((vectors[i][a] * gmat[a][b] * vectors[j][b] for a in range(N) for b in range(N) if vectors[i][a] and vectors[j][b]), mpq(0)) for j in range(N)]
        for i in range(N)
    ]


def null_frame(g: WalkerMetric, point) -> NullFrame:
    point = tuple(Q(x) for x in point)
    if len(point) != g.nvars:
        raise MetricError(f"point must have {g.nvars} coordinates")
    gm = g.evaluate(point)  # raises EvaluationError at poles
    n, N = g.n, g.nvars

    def unit(a):
        return [mpq(int(a == b)) for b in range(N)]

    p = unit(0)
    # e'_i = d_i - u_i d_0 is orthogonal to p and q; orthogonalize with h(point)
    es = []
    for i in range(n):
        v = unit(1 + i)
        v[0] -= gm[1 + i][N - 1]
        es.append(v)

    def ip(x, y):
        return sum((x[a] * gm[a][b] * y[b] for a in range(N) for b in range(N) if x[a] and y[b]), mpq(0))

    ortho = []
    norms = []
    for v in es:
        w = list(v)
        for o, c in zip(ortho, norms):
            k = ip(v, o) / c
            if k:
                w = [a - k * b for a, b in zip(w, o)]
        c = ip(w, w)
        if c <= 0:
            raise MetricError(f"h is not positive definite at {point}")
        ortho.append(w)
        norms.append(c)
    normalized = True
    final = []
    for w, c in zip(ortho, norms):
        r = _rational_sqrt(c)
        if r is None:
            normalized = False
            final.append(w)
        else:
            final.append([a / r for a in w])
    q = unit(N - 1)
    q[0] -= gm[N - 1][N - 1] * HALF
    vectors = [p] + final + [q]
    gram = _gram_of(vectors, gm)
    return NullFrame(point, vectors, gram, normalized)


# ---------------------------------------------------------------------------
# infinitesimal holonomy
# ---------------------------------------------------------------------------


def default_points(N: int) -> list[tuple]:
    n = N - 2
    a = tuple(mpq(0) for _ in range(N))
    b = tuple(mpq(1) if k in (1, N - 1) else mpq(0) for k in range(N))
    c = tuple([mpq(0)] + [mpq(k) for k in range(1, n + 1)] + [mpq(1)])
    out = []
    for pt in (a, b, c):
        if pt not in out:
            out.append(pt)
    return out


def _array(shape):
    a = np.empty(shape, dtype=object)
    a[...] = mpq(0)
    return a


def _jets(g: WalkerMetric, point, order: int):
    """Values at ``point`` of Gamma, dGamma, R, dR, ddR as object arrays.

    Derivative indices are appended last; ddR[..., e, f] = d_e d_f R.
    """
    N = g.nvars
    G = christoffel(g)
    R = riemann(g)
    gam = _array((N, N, N))
    dgam = _array((N, N, N, N))
    for a in range(N):
        for b in range(N):
            for c in range(b, N):
                x = G[a][b][c]
                if x.is_zero():
                    continue
                t = x.taylor(point, 1 if order >= 2 else 0)
                gam[a, b, c] = gam[a, c, b] = t.constant_term()
                if order >= 2:
                    for e in range(N):
                        mono = [0] * N
                        mono[e] = 1
                        v = t.terms.get(tuple(mono), mpq(0))
                        dgam[a, b, c, e] = dgam[a, c, b, e] = v
    riem = _array((N, N, N, N))
    driem = _array((N, N, N, N, N))
    ddriem = _array((N, N, N, N, N, N))
    for (a, b, c, d), x in R.items():
        t = x.taylor(point, order)
        for exps, coef in t.terms.items():
            deg = sum(exps)
            idx = [i for i, e in enumerate(exps) for _ in range(e)]
            if deg == 0:
                riem[a, b, c, d], riem[a, b, d, c] = coef, -coef
            elif deg == 1:
                (e,) = idx
                driem[a, b, c, d, e], driem[a, b, d, c, e] = coef, -coef
            elif deg == 2:
                e, f = idx
                val = coef * 2 if e == f else coef
                for ee, ff in {(e, f), (f, e)}:
                    ddriem[a, b, c, d, ee, ff] = val
                    ddriem[a, b, d, c, ee, ff] = -val
    return gam, dgam, riem, driem, ddriem


def _connection_terms(gam: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Gamma-part of nabla_e T for T with one upper and k lower indices; e is appended last.

    (G^a_{ef} T^f_{b..}) - sum over lower slots (G^f_{e b_s} T^a_{..f..}).
    """
    k = T.ndim - 1
    # upper index: sum_f gam[a, e, f] T[f, ...] -> axes (a, e, b1..bk) -> move e to end
    up = np.tensordot(gam, T, axes=([2], [0]))
    out = np.moveaxis(up, 1, -1)
    for s in range(k):
        # sum_f gam[f, e, b_s] T[a, .., f (slot s), ..]
        term = np.tensordot(T, gam, axes=([1 + s], [0]))  # axes: (a, other b.., e, b_s)
        # term axes: a, b_1..b_{s-1}, b_{s+1}..b_k, e, b_s
        term = np.moveaxis(term, -1, 1 + s)  # put b_s back into its slot; e now last
        out = out - term
    return out


def covariant_jets(g: WalkerMetric, point, order: int):
    """(R, nabla R, nabla^2 R) at ``point``; derivative indices appended last."""
    gam, dgam, riem, driem, ddriem = _jets(g, point, order)
    out = [riem]
    if order >= 1:
        nab = driem + _connection_terms(gam, riem)
        out.append(nab)
    if order >= 2:
        N = g.nvars
        # d_f (nabla R) = dd R + C(dGamma_f, R) + C(Gamma, dR_f)
        dnab = _array(nab.shape + (N,))
        for f in range(N):
            dnab[..., f] = ddriem[..., :, f] + _connection_terms(dgam[..., f], riem) + _connection_terms(gam, driem[..., f])
        nab2 = dnab + _connection_terms(gam, nab)
        out.append(nab2)
    return out


def _to_frame(T: np.ndarray, F: np.ndarray, Finv: np.ndarray) -> np.ndarray:
    """Change every index to the frame basis (first index upper, the rest lower)."""
    out = np.tensordot(Finv, T, axes=([1], [0]))
    for ax in range(1, T.ndim):
        out = np.moveaxis(np.tensordot(out, F, axes=([ax], [0])), -1, ax)
    return out


def _bivector_pairs(n: int) -> list[tuple[int, int]]:
    N = n + 2
    pairs = [(0, N - 1)]
    pairs += [(1 + i, 1 + j) for i in range(n) for j in range(i + 1, n)]
    pairs += [(0, 1 + i) for i in range(n)]
    pairs += [(N - 1, 1 + i) for i in range(n)]
    return pairs


def _endos_to_bivectors(Tf: np.ndarray, gram_inv: np.ndarray, n: int) -> np.ndarray:
    """Tf[a, b, ...] endomorphisms (a = output) to rows of bivector coefficients.

    W = Gram^{-1} M^T gives sum_{mu<nu} W[mu, nu] b_mu ^ b_nu.
    """
    W = np.tensordot(gram_inv, Tf, axes=([1], [1]))  # W[mu, a, ...] = sum_nu ginv[mu,nu] M[a, nu]
    pairs = _bivector_pairs(n)
    rest = W.shape[2:]
    flat = W.reshape(W.shape[0], W.shape[1], -1)
    cols = [flat[mu, nu, :] for mu, nu in pairs]
    return np.stack(cols, axis=1) if rest else np.array([cols]).reshape(1, -1)


@dataclass
class HolonomySpan:
    n: int
    basis: list[list[Rational]]  # bivector coefficients, see liealg.bivector_labels
    points: list[tuple]
    order: int
    dims_by_order: list[int]
    normalized: bool
    sim: list[SimElement] | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def labels(self) -> list[str]:
        return bivector_labels(self.n)

    def endomorphisms(self) -> list[np.ndarray]:
        """Basis elements as matrices in the standard null basis (p, e, q)."""
        from .curvspace import minkowski_gram

        N = self.n + 2
        eta = minkowski_gram(self.n)
        pairs = _bivector_pairs(self.n)
        out = []
        for v in self.basis:
            W = _array((N, N))
            for (mu, nu), c in zip(pairs, v):
                W[mu, nu] += c
                W[nu, mu] -= c
            out.append(W.T.dot(eta))
        return out

    def is_closed(self) -> bool:
        mats = self.endomorphisms()
        vecs = [list(m.flat) for m in mats]
        ech = linalg.Echelon(len(vecs[0]) if vecs else 0)
        for v in vecs:
            ech.add(v)
        for a, b in itertools.combinations(mats, 2):
            c = a.dot(b) - b.dot(a)
            if not ech.contains(list(c.flat)):
                return False
        return True


def _select_span(rows: list[list[Rational]], ncols: int) -> list[list[Rational]]:
    """Exact echelon basis of span(rows), pre-filtered by a mod-p pivot search.

    Rows chosen as independent mod p are independent over Q, so the result
    is always a subspace of the true span (and equal to it unless p divides
    some minor, which is not observed in practice).
    """
    if not rows:
        return []
    p = linalg._PRIME
    chosen = []
    basis_modp: dict[int, np.ndarray] = {}
    for idx, r in enumerate(rows):
        v = np.zeros(ncols, dtype=np.int64)
        ok = True
        for c, x in enumerate(r):
            if x:
                den = int(x.denominator) % p
                if not den:
                    ok = False
                    break
                v[c] = int(x.numerator) % p * pow(den, -1, p) % p
        if not ok:
            chosen.append(idx)
            continue
        for c in sorted(basis_modp):
            if v[c]:
                v = (v - v[c] * basis_modp[c]) % p
        nz = np.nonzero(v)[0]
        if len(nz):
            c = int(nz[0])
            v = v * pow(int(v[c]), -1, p) % p
            # keep basis reduced: eliminate c from the others
            for c2 in list(basis_modp):
                if basis_modp[c2][c]:
                    basis_modp[c2] = (basis_modp[c2] - basis_modp[c2][c] * v) % p
            basis_modp[c] = v
            chosen.append(idx)
            if len(basis_modp) == ncols:
                break
    return linalg.reduced_basis([rows[i] for i in chosen], ncols)


def infinitesimal_holonomy(g: WalkerMetric, points=None, order: int = 2, retries: int = 8) -> HolonomySpan:
    """Span of R, nabla R, ... up to ``order`` at the points, in null frames, as bivectors."""
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    n, N = g.n, g.nvars
    if points is None:
        points = default_points(N)
    used = []
    rows_by_order: list[list] = [[] for _ in range(order + 1)]
    normalized = True
    for pt in points:
        pt = tuple(Q(x) for x in pt)
        for attempt in range(retries + 1):
            try:
                frame = null_frame(g, pt)
                jets = covariant_jets(g, pt, order)
                break
            except (EvaluationError, ZeroDivisionError):
                pt = pt[:-1] + (pt[-1] + 1,)
        else:
            raise EvaluationError(f"pole at every retry of sample point {pt}")
        used.append(pt)
        normalized = normalized and frame.normalized
        F = frame.matrix
        Finv = np.array(linalg.mat_inverse(F.tolist()), dtype=object)
        ginv = np.array(linalg.mat_inverse(frame.gram), dtype=object)
        for k, T in enumerate(jets):
            Tf = _to_frame(T, F, Finv)
            # Tf[a, b, c, d, ...]: endomorphism (a, b) for the pair (c, d) and derivative slots
            pick = [(c, d) for c in range(N) for d in range(c + 1, N)]
            sub = np.stack([Tf[:, :, c, d, ...] for c, d in pick], axis=2)
            B = _endos_to_bivectors(sub, ginv, n)
            rows_by_order[k].extend([list(r) for r in B if any(r)])
    ncols = len(_bivector_pairs(n))
    dims = []
    acc: list[list[Rational]] = []
    for k in range(order + 1):
        acc = _select_span(acc + rows_by_order[k], ncols)
        dims.append(len(acc))
    span = HolonomySpan(n, acc, used, order, dims, normalized)
    if all(not any(v[ncols - n :]) for v in acc):
        span.sim = [bivector_to_sim(v) for v in acc]
    return span


# ---------------------------------------------------------------------------
# classification of the span
# ---------------------------------------------------------------------------


@dataclass
class WalkerClassification:
    type: int | None  # None: zero span or not weakly irreducible
    dim: int
    dim_a_A: int
    dim_A: int
    dim_translations: int
    h: Subalgebra | None
    descriptor: HolonomyDescriptor | None
    reason: str = ""


def classify_walker_type(span: HolonomySpan) -> WalkerClassification:
    n = span.n
    if span.sim is None:
        raise AlgebraError("not Walker-adapted frame: span leaves sim(n)")
    sims = span.sim
    Avecs = [skew_coords(e.A) for e in sims]
    aA = [[e.a] + v for e, v in zip(sims, Avecs)]
    dim_A = linalg.rank(Avecs) if Avecs else 0
    dim_aA = linalg.rank(aA) if aA else 0
    dim_tr = span.dim - dim_aA
    h = Subalgebra.spanned_by(n, [e.A for e in sims]) if span.normalized else None
    if h is not None and not h.is_closed():
        h = h.closure()
    if span.dim == 0:
        return WalkerClassification(None, 0, 0, 0, 0, h, None, "zero span (flat metric)")
    a_nonzero = any(e.a for e in sims)
    if dim_aA > dim_A:
        typ = 1
    elif a_nonzero:
        typ = 3
    elif dim_tr == n:
        typ = 2
    else:
        typ = 4
    reason = ""
    if typ in (1, 3) and dim_tr != n:
        reason = f"translation part has dimension {dim_tr} < n = {n}"
        return WalkerClassification(None, span.dim, dim_aA, dim_A, dim_tr, h, None, reason)
    desc = None
    if h is not None:
        phi = None
        m = None
        psi = None
        if typ == 3:
            # a = phi(A) on the span: solve for phi in coordinates of h
            phi = _functional_on(h, [(e.A, e.a) for e in sims])
        if typ == 4:
            m = dim_tr
        desc = HolonomyDescriptor(typ, h, phi=phi, m=m, psi=psi)
        desc.decomposition = decompose(h)
    return WalkerClassification(typ, span.dim, dim_aA, dim_A, dim_tr, h, desc, reason)


def _functional_on(h: Subalgebra, pairs) -> list | None:
    """phi on h.basis with phi(A) = a for the given (A, a) pairs, if consistent."""
    rows = []
    for A, a in pairs:
        c = h.coordinates(A)
        if c is None:
            return None
        rows.append(list(c) + [-Q(a)])
    sol = linalg.nullspace(rows, h.dim + 1)
    for v in sol:
        if v[-1]:
            return [x / v[-1] for x in v[:-1]]
    return None
