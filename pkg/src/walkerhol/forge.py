"""Einstein and vacuum Einstein Walker metrics with prescribed holonomy.

Indices of P follow curvspace: P^k_{ji} = P(e_i)[k, j], with coordinate
x^i (1-based) matching matrix index i - 1.  ``t`` below is x^{n+1}.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import factorial

import numpy as np
from gmpy2 import mpq

from . import curvspace, walker
from .curvspace import WeakCurvature, ricci_tilde, solve_P, split_P
from .exactnum import Poly, Q, RatFunc, Rational, as_ratfunc
from .liealg import AlgebraError, Decomposition, HolonomyDescriptor, Subalgebra, decompose
from .walker import WalkerMetric

log = logging.getLogger(__name__)

REGIMES = ("einstein", "vacuum", "ricci-isotropic")


class ConstructionError(ValueError):
    pass


class PoissonError(ValueError):
    pass


# ---------------------------------------------------------------------------
# construction input
# ---------------------------------------------------------------------------


def generated_algebra(n: int, P_list) -> Subalgebra:
    """Lie algebra generated by all values P_alpha(e_i)."""
    mats = [m for P in P_list for m in P.images]
    return Subalgebra.spanned_by(n, mats).closure()


@dataclass
class ConstructionSpec:
    h: Subalgebra
    P_list: list[WeakCurvature]
    target_type: int
    lam: Rational = mpq(0)
    weak_irred_term: bool = True
    decomposition: Decomposition | None = None

    def __post_init__(self):
        self.lam = Q(self.lam)
        if self.decomposition is None:
            self.decomposition = decompose(self.h)

    @property
    def n(self) -> int:
        return self.h.n

    @property
    def N(self) -> int:
        return len(self.P_list)

    def validate(self) -> None:
        if self.target_type not in (1, 2):
            raise ConstructionError("only types 1 and 2 can be constructed")
        if not self.P_list:
            raise ConstructionError("P_list is empty")
        for a, P in enumerate(self.P_list, 1):
            if P.n != self.n:
                raise ConstructionError(f"P_{a} acts on R^{P.n}, expected R^{self.n}")
            if not P.is_weak_curvature(self.h):
                raise ConstructionError(f"P_{a} is not a weak curvature tensor of h")
        gen = generated_algebra(self.n, self.P_list)
        if gen.dim != self.h.dim:
            raise ConstructionError(f"the values of P_list generate a subalgebra of dimension {gen.dim} < dim h = {self.h.dim}")
        if self.target_type == 2:
            if self.lam:
                raise ConstructionError("type 2 admits no Einstein metric with lambda != 0")
            for a, P in enumerate(self.P_list, 1):
                if any(ricci_tilde(P)):
                    raise ConstructionError(f"type 2 needs Ric~(P_{a}) = 0")


@dataclass
class ConstructionResult:
    metric: WalkerMetric
    expected_holonomy: HolonomyDescriptor
    certificate: list[tuple[str, object]] = field(default_factory=list)

    def cert(self) -> dict:
        return dict(self.certificate)


def _generic_weights(k: int, salt: int = 0) -> list[Rational]:
    # small distinct integers; deterministic so that constructions are reproducible
    return [mpq((i + 1) * (i + 2 + salt) % 13 + 1 + i) for i in range(k)]


def _combine(Ps: list[WeakCurvature], weights) -> WeakCurvature:
    out = WeakCurvature.zero(Ps[0].n)
    for P, c in zip(Ps, weights):
        if c:
            out = out + P.scale(c)
    return out


def default_P_list(h: Subalgebra, target_type: int) -> list[WeakCurvature]:
    """A single generic element of P0(h) (type 2) or P(h) (type 1) whose values generate h.

    Falls back to the whole basis when no tried combination generates h.
    """
    if target_type == 2:
        basis = split_P(h)[0]
    else:
        basis = solve_P(h)
    if not basis:
        raise ConstructionError(f"no weak curvature tensors available for type {target_type}")
    for salt in range(6):
        P = _combine(basis, _generic_weights(len(basis), salt))
        if target_type == 1 and not any(ricci_tilde(P)):
            continue
        if generated_algebra(h.n, [P]).dim == h.dim:
            return [P]
    return list(basis)


# ---------------------------------------------------------------------------
# coefficients and u
# ---------------------------------------------------------------------------


def _P_array(P: WeakCurvature) -> np.ndarray:
    """T[k, j, i] = P^k_{ji}."""
    n = P.n
    T = np.empty((n, n, n), dtype=object)
    for i in range(n):
        T[:, :, i] = P.images[i]
    return T


def coefficients_a(P_list) -> list[np.ndarray]:
    """a_alpha[k, j, i] = (P^k_{ji} + P^k_{ij}) / (3 (alpha-1)!)."""
    out = []
    for alpha, P in enumerate(P_list, 1):
        T = _P_array(P)
        out.append((T + T.transpose(0, 2, 1)) * mpq(1, 3 * factorial(alpha - 1)))
    return out


def check_coefficients(P_list, a=None) -> list[str]:
    """Identities of the coefficients a that fail (empty when all hold)."""
    a = coefficients_a(P_list) if a is None else a
    bad = []
    for alpha, (P, A) in enumerate(zip(P_list, a), 1):
        T = _P_array(P)
        if (A != A.transpose(0, 2, 1)).any():
            bad.append(f"alpha={alpha}: a is not symmetric in the lower indices")
        # P^k_{ji} = (alpha-1)! (a^k_{ji} - a^j_{ki})
        rec = (A - A.transpose(1, 0, 2)) * factorial(alpha - 1)
        if (rec != T).any():
            bad.append(f"alpha={alpha}: recovery identity fails")
        # a^k_{ji} + a^i_{kj} + a^j_{ik} = 0
        cyc = A + A.transpose(2, 0, 1) + A.transpose(1, 2, 0)
        if cyc.any():
            bad.append(f"alpha={alpha}: cyclic identity fails")
    return bad



def build_u(P_list) -> list[Poly]:
    """u^i = sum a^i_{alpha jk} x^j x^k (x^{n+1})^(alpha-1)."""
    n = P_list[0].n
    N = n + 2
    u = [Poly.zero(N) for _ in range(n)]
    for alpha, A in enumerate(coefficients_a(P_list), 1):
        for i in range(n):
            terms = {}
            for j in range(n):
                for k in range(n):
                    c = A[i, j, k]
                    if c:
                        e = [0] * N
                        e[1 + j] += 1
                        e[1 + k] += 1
                        e[N - 1] = alpha - 1
                        key = tuple(e)
                        terms[key] = terms.get(key, mpq(0)) + c
            if terms:
                u[i] = u[i] + Poly(N, terms)
    return u


def curl_field(P_list) -> list[list[Poly]]:
    """C[i][j] = sum_alpha (2/(alpha-1)!) P^i_{alpha jk} x^k t^(alpha-1)."""
    n = P_list[0].n
    N = n + 2
    C = [[Poly.zero(N) for _ in range(n)] for _ in range(n)]
    for alpha, P in enumerate(P_list, 1):
        c = mpq(2, factorial(alpha - 1))
        tp = Poly.var(N, N - 1, alpha - 1)
        for i in range(n):
            for j in range(n):
                lin = Poly(N, {_unit(N, 1 + k): P.component(i, j, k) * c for k in range(n) if P.component(i, j, k)})
                if not lin.is_zero():
                    C[i][j] = C[i][j] + lin * tp
    return C


def _unit(N: int, i: int) -> tuple:
    e = [0] * N
    e[i] = 1
    return tuple(e)


def _ric_linear(P_list, weight, shift: int = 1) -> Poly:
    """sum_alpha weight(alpha) * Ric~(P_alpha) . x * t^(alpha-shift) (terms with weight None skipped)."""
    n = P_list[0].n
    N = n + 2
    out = Poly.zero(N)
    for alpha, P in enumerate(P_list, 1):
        w = weight(alpha)
        if w is None:
            continue
        r = ricci_tilde(P)
        lin = Poly(N, {_unit(N, 1 + k): r[k] * w for k in range(n) if r[k]})
        out = out + lin * Poly.var(N, N - 1, alpha - shift)
    return out


def check_u_identities(P_list, u=None) -> list[str]:
    """Failures of the curl and divergence identities for u."""
    u = build_u(P_list) if u is None else u
    n = len(u)
    C = curl_field(P_list)
    bad = []
    for i in range(n):
        for j in range(n):
            if u[i].diff(1 + j) - u[j].diff(1 + i) != C[i][j]:
                bad.append(f"curl identity fails at ({i + 1},{j + 1})")
    div = Poly.zero(n + 2)
    for i in range(n):
        div = div + u[i].diff(1 + i)
    if div != -_ric_linear(P_list, lambda a: mpq(2, 3 * factorial(a - 1))):
        bad.append("divergence identity fails")
    return bad


# ---------------------------------------------------------------------------
# Poisson equation
# ---------------------------------------------------------------------------


def _poisson_block(H: Poly, variables: list[int]) -> Poly:
    if not variables:
        if H.is_zero():
            return H
        raise PoissonError("no variables to solve in")
    x1 = variables[0]
    N = H.nvars
    half = mpq(1, 2)
    sq = Poly.zero(N)
    for v in variables:
        sq = sq + Poly.var(N, v, 2) * H.diff(v).diff(v)
    H1 = H - sq * half
    d1H1 = H1.diff(x1)
    H2 = H1 - Poly.var(N, x1) * d1H1
    quart = Poly.zero(N)
    for v in variables:
        quart = quart + Poly.var(N, v, 4) * H.diff(v).diff(v)
    return Poly.var(N, x1, 2) * H2 * half + Poly.var(N, x1, 3) * d1H1 * mpq(1, 6) + quart * mpq(1, 24)


def poisson_solve(H: Poly, variables, parameter: int | None = None) -> Poly:
    """F with sum over ``variables`` of d^2 F / dx^2 = H.

    H must have degree at most 2 in ``variables``; it may also depend on
    the ``parameter`` variable, which is carried along as a coefficient
    (one solve per power of it).
    """
    variables = list(variables)
    allowed = set(variables) | ({parameter} if parameter is not None else set())
    extra = H.variables() - allowed
    if extra:
        raise PoissonError(f"H depends on variables {sorted(extra)} outside the solve")
    if H.degree_in_vars(variables) > 2:
        raise PoissonError("H must have degree at most 2 in the solve variables")
    if parameter is None or parameter not in H.variables():
        F = _poisson_block(H, variables)
    else:
        F = Poly.zero(H.nvars)
        for beta in range(H.degree_in(parameter) + 1):
            Hb = H.coefficient_in(parameter, beta)
            if not Hb.is_zero():
                F = F + _poisson_block(Hb, variables) * Poly.var(H.nvars, parameter, beta)
    if F.laplacian(variables) != H:
        raise PoissonError("internal error: Poisson solution fails its check")
    return F


def weak_irred_term(n: int, nvars: int | None = None) -> Poly:
    """(x^1)^2 + ... + (x^{n-1})^2 - (n-1)(x^n)^2."""
    if n < 2:
        raise ValueError("weak_irred_term needs n >= 2")
    N = nvars if nvars is not None else n + 2
    out = Poly.zero(N)
    for i in range(1, n):
        out = out + Poly.var(N, i, 2)
    return out - Poly.var(N, n, 2) * (n - 1)


# ---------------------------------------------------------------------------
# the functions f0 and f1
# ---------------------------------------------------------------------------


def _x_vars(n: int) -> list[int]:
    return list(range(1, n + 1))


def _active_vars(spec_or_n, decomposition=None) -> list[int]:
    if decomposition is not None:
        act = decomposition.active_coordinates()
        if act is not None and act:
            return [1 + i for i in act]
    return _x_vars(spec_or_n)


def curl_square(P_list) -> Poly:
    """sum_{i<j} C_ij^2: the curl term of Ric_{n+1,n+1} for u = build_u(P_list)."""
    C = curl_field(P_list)
    n = len(C)
    out = Poly.zero(n + 2)
    for i in range(n):
        for j in range(i + 1, n):
            if not C[i][j].is_zero():
                out = out + C[i][j] * C[i][j]
    return out


def f0_closed_form(P_list) -> Poly:
    """1/3 sum_{i,j} (sum_alpha 1/(alpha-1)! P^i_{alpha jk} (x^k)^2 t^(alpha-1))^2."""
    n = P_list[0].n
    N = n + 2
    out = Poly.zero(N)
    for i in range(n):
        for j in range(n):
            s = Poly.zero(N)
            for alpha, P in enumerate(P_list, 1):
                c = mpq(1, factorial(alpha - 1))
                q = Poly(N, {tuple(2 if v == 1 + k else 0 for v in range(N)): P.component(i, j, k) * c for k in range(n) if P.component(i, j, k)})
                if not q.is_zero():
                    s = s + q * Poly.var(N, N - 1, alpha - 1)
            if not s.is_zero():
                out = out + s * s
    return out * mpq(1, 3)


def build_f0_type2(P_list, variables=None) -> tuple[Poly, str]:
    """f0 with sum_i d_i^2 f0 = sum_{i<j} C_ij^2; returns (f0, route).

    The closed form is tried first and kept when its Laplacian matches;
    otherwise the per-power Poisson procedure is used.
    """
    n = P_list[0].n
    for a, P in enumerate(P_list, 1):
        if any(ricci_tilde(P)):
            raise ConstructionError(f"build_f0_type2 needs Ric~(P_{a}) = 0")
    rhs = curl_square(P_list)
    xs = _x_vars(n)
    closed = f0_closed_form(P_list)
    if closed.laplacian(xs) == rhs:
        return closed, "closed_form"
    variables = list(variables) if variables is not None else xs
    return poisson_solve(rhs, variables, parameter=n + 1), "poisson"


def build_f1_type1(P_list) -> Poly:
    """f1 = sum_alpha (2/(alpha-1)!) Ric~(P_alpha) . x t^(alpha-1)."""
    f1 = _ric_linear(P_list, lambda a: mpq(2, factorial(a - 1)))
    if f1.is_zero():
        log.warning("all Ric~(P_alpha) vanish: the type 1 construction degenerates to type 2")
    return f1


def assemble_G_type1(P_list, f1: Poly, u=None) -> Poly:
    """Right side G of sum_i d_i^2 f0 = G for f = x^0 f1 + f0 to be Ricci-flat."""
    u = build_u(P_list) if u is None else u
    n = P_list[0].n
    G = curl_square(P_list)
    G = G - _ric_linear(P_list, lambda a: mpq(4, 3 * factorial(a - 2)) if a >= 2 else None, shift=2)
    G = G - f1 * _ric_linear(P_list, lambda a: mpq(2, 3 * factorial(a - 1)))
    for i in range(n):
        if not u[i].is_zero():
            G = G + u[i] * f1.diff(1 + i) * 2
    return G


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def _holonomy_certificate(g: WalkerMetric, expected_dim: int, order: int = 2) -> list[tuple[str, object]]:
    span = walker.infinitesimal_holonomy(g, order=order)
    cls = walker.classify_walker_type(span)
    return [
        ("holonomy_dim", span.dim),
        ("holonomy_expected_dim", expected_dim),
        ("holonomy_matches", span.dim == expected_dim),
        ("holonomy_type", cls.type if cls.type is not None else "none"),
    ]


def _descriptor(typ: int, h: Subalgebra, dec: Decomposition | None) -> HolonomyDescriptor:
    d = HolonomyDescriptor(typ, h, decomposition=dec)
    d.validate()
    return d


def _resolve_spec(h_or_spec, target_type: int, lam=0) -> ConstructionSpec:
    if isinstance(h_or_spec, ConstructionSpec):
        return h_or_spec
    h = h_or_spec
    return ConstructionSpec(h, default_P_list(h, target_type), target_type, Q(lam))


def construct_type2_vacuum(spec, certify_holonomy: bool = True, order: int = 2) -> ConstructionResult:
    spec = _resolve_spec(spec, 2)
    if spec.target_type != 2:
        raise ConstructionError("construct_type2_vacuum needs target_type 2")
    spec.validate()
    n, N = spec.n, spec.n + 2
    bad = check_coefficients(spec.P_list)
    u = build_u(spec.P_list)
    bad += check_u_identities(spec.P_list, u)
    if bad:
        raise ConstructionError("; ".join(bad))
    f0, route = build_f0_type2(spec.P_list, _active_vars(n, spec.decomposition))
    f = f0
    dec = spec.decomposition
    added = spec.weak_irred_term and dec.n0 < n
    if added:
        f = f + weak_irred_term(n, N)
    g = WalkerMetric.flat(n, u=u, f=f)
    cert: list[tuple[str, object]] = [
        ("vacuum", walker.is_vacuum(g)),
        ("N", spec.N),
        ("f0_route", route),
        ("weak_irred_term", added),
        ("hessian_nondegenerate", walker.hessian_nondegenerate(g)),
        ("expected", f"type2:{spec.h.name or 'custom'}"),
    ]
    if certify_holonomy:
        cert += _holonomy_certificate(g, spec.h.dim + n, order)
    return ConstructionResult(g, _descriptor(2, spec.h, dec), cert)


def construct_type1_vacuum(spec, certify_holonomy: bool = True, order: int = 2) -> ConstructionResult:
    spec = _resolve_spec(spec, 1)
    if spec.target_type != 1:
        raise ConstructionError("construct_type1_vacuum needs target_type 1")
    if spec.lam:
        raise ConstructionError("construct_type1_vacuum needs lambda = 0")
    spec.validate()
    if all(not any(ricci_tilde(P)) for P in spec.P_list):
        raise ConstructionError("all Ric~(P_alpha) vanish; this input gives type 2, not type 1")
    n, N = spec.n, spec.n + 2
    bad = check_coefficients(spec.P_list)
    u = build_u(spec.P_list)
    bad += check_u_identities(spec.P_list, u)
    if bad:
        raise ConstructionError("; ".join(bad))
    f1 = build_f1_type1(spec.P_list)
    G = assemble_G_type1(spec.P_list, f1, u)
    f0 = poisson_solve(G, _active_vars(n, spec.decomposition), parameter=N - 1)
    if spec.weak_irred_term:
        f0 = f0 + weak_irred_term(n, N)
    f = Poly.var(N, 0) * f1 + f0
    g = WalkerMetric.flat(n, u=u, f=f)
    cert: list[tuple[str, object]] = [
        ("vacuum", walker.is_vacuum(g)),
        ("N", spec.N),
        ("f0_route", "poisson"),
        ("f0_degree", f0.degree()),
        ("weak_irred_term", spec.weak_irred_term),
        ("hessian_nondegenerate", walker.hessian_nondegenerate(g)),
        ("expected", f"type1:{spec.h.name or 'custom'}"),
    ]
    if certify_holonomy:
        cert += _holonomy_certificate(g, 1 + spec.h.dim + n, order)
    return ConstructionResult(g, _descriptor(1, spec.h, spec.decomposition), cert)


def construct_type1_einstein(h_metric, lam, f0: Poly, holonomy: Subalgebra | None = None, certify_holonomy: bool = True, order: int = 2) -> ConstructionResult:
    """Diag-h metric with f = lam (x^0)^2 + f0 for an Einstein Riemannian h and an h-harmonic f0.

    ``holonomy`` is the holonomy algebra of h; when omitted the orthogonal
    part of the computed holonomy span is used.
    """
    lam = Q(lam)
    n = len(h_metric)
    N = n + 2
    if not lam:
        raise ConstructionError("construct_type1_einstein needs lambda != 0")
    if f0.nvars != N:
        raise ConstructionError(f"f0 must use {N} variables")
    if f0.variables() - set(range(1, n + 1)):
        raise ConstructionError("f0 must depend on x^1..x^n only")
    zero = Poly.zero(N)
    g0 = WalkerMetric(n, "diag", [zero] * n, zero, h=[[as_ratfunc(x) for x in row] for row in h_metric])
    Gh = walker._h_christoffel(g0)
    ric_h = walker.ricci_of(Gh, list(range(1, n + 1)))
    for i in range(n):
        for j in range(n):
            if (ric_h[i][j] - g0.h[i][j] * lam).simplify() != as_ratfunc(zero):
                raise ConstructionError(f"h is not Einstein with constant {lam}: component ({i + 1},{j + 1})")
    if not walker.laplace_beltrami_h(g0, f0).is_zero():
        raise ConstructionError("f0 is not harmonic for h")
    f = Poly.var(N, 0, 2) * lam + f0
    g = WalkerMetric(n, "diag", [zero] * n, f, h=g0.h)
    if not walker.hessian_nondegenerate(g):
        raise ConstructionError("f0 has a degenerate Hessian; weak irreducibility is not certified")
    cert: list[tuple[str, object]] = [
        ("einstein", walker.is_einstein(g, lam)),
        ("lambda", lam),
        ("hessian_nondegenerate", True),
    ]
    h = holonomy
    if certify_holonomy or h is None:
        span = walker.infinitesimal_holonomy(g, order=order)
        cls = walker.classify_walker_type(span)
        if h is None:
            if cls.h is None:
                raise ConstructionError("could not extract the orthogonal part of the holonomy span")
            h = cls.h
        cert += [
            ("holonomy_dim", span.dim),
            ("holonomy_expected_dim", 1 + h.dim + n),
            ("holonomy_matches", span.dim == 1 + h.dim + n),
            ("holonomy_type", cls.type if cls.type is not None else "none"),
        ]
    cert.insert(3, ("expected", f"type1:{h.name or 'custom'}"))
    return ConstructionResult(g, _descriptor(1, h, None), cert)


def space_form_metric(n: int, curvature) -> list[list[RatFunc]]:
    """4 delta_ij / (|c| (1 + sign(c) rho^2)^2): constant sectional curvature c != 0, rho^2 = sum (x^i)^2."""
    c = Q(curvature)
    if not c:
        raise ValueError("space_form_metric needs nonzero curvature")
    N = n + 2
    rho = Poly.zero(N)
    for i in range(1, n + 1):
        rho = rho + Poly.var(N, i, 2)
    sign = 1 if c > 0 else -1
    diag = RatFunc(Poly.const(N, 4), (rho * sign + 1) ** 2 * abs(c))
    zero = as_ratfunc(Poly.zero(N))
    return [[diag if i == j else zero for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------


@dataclass
class Decision:
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def block_algebras(d: HolonomyDescriptor) -> tuple[list[Subalgebra], int]:
    """The ideals h_i as subalgebras of so(n_i), and n_{s+1}."""
    dec = d.decomposed()
    if not dec.is_direct_sum:
        raise AlgebraError("undecomposed input: h is not the direct sum of its block ideals")
    if dec.permutation is None:
        raise AlgebraError("undecomposed input: the blocks of h are not coordinate subspaces")
    out = []
    start = 0
    for k, size in enumerate(dec.sizes):
        coords = sorted(dec.permutation[start : start + size])
        start += size
        ideal = dec.ideals[k]
        mats = [b[np.ix_(coords, coords)] for b in ideal.basis]
        out.append(Subalgebra.spanned_by(size, mats, ideal.name))
    return out, dec.n_trivial


def _block_report(b: Subalgebra) -> curvspace.SpaceReport:
    return curvspace.spaces(b)


def type_gate(typ: int, regime: str, lam=None) -> Decision | None:
    """The refusal that follows from the type alone, or None when h must be inspected."""
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}")
    if typ in (3, 4):
        return Decision(False, f"type {typ} is excluded: an Einstein or totally Ricci-isotropic metric has holonomy of type 1 or 2")
    einstein = regime == "einstein" and (lam is None or Q(lam) != 0)
    if einstein and typ != 1:
        return Decision(False, "type 1 required for lambda != 0: an Einstein metric with lambda != 0 has holonomy of type 1")
    return None


def admissible(d: HolonomyDescriptor, regime: str, lam=None) -> Decision:
    """Whether d can be the holonomy algebra of a metric in the regime.

    regime: "einstein" (lambda != 0), "vacuum" or "ricci-isotropic".
    """
    gate = type_gate(d.type, regime, lam)
    if gate is not None:
        return gate
    if regime == "einstein" and lam is not None and not Q(lam):
        regime = "vacuum"
    blocks, n_triv = block_algebras(d)
    reps = [_block_report(b) for b in blocks]
    if regime == "einstein":
        if n_triv:
            return Decision(False, f"h annihilates a subspace of dimension {n_triv}; lambda != 0 requires n_(s+1) = 0")
        for k, r in enumerate(reps):
            if r.dim_R1 != 1:
                return Decision(False, f"block {k + 1} has dim R1 = {r.dim_R1}; lambda != 0 requires every block to carry a curvature tensor annihilated by it")
        return Decision(True, "type 1, every block has dim R1 = 1 and h annihilates no subspace")
    if d.type == 1:
        for k, (b, r) in enumerate(zip(blocks, reps)):
            if r.dim_P1 > 0:
                return Decision(True, f"type 1 with block {k + 1} (dim P1 = {r.dim_P1}) of a non Ricci-flat Riemannian holonomy")
        return Decision(False, "type 1 requires at least one block with P1 != 0 (so, u, sp+sp(1) or symmetric Berger)")
    for k, (b, r) in enumerate(zip(blocks, reps)):
        if r.span_R0_P0 != b.dim:
            return Decision(False, f"type 2 requires every block to be spanned by Ricci-flat curvature; block {k + 1} reaches {r.span_R0_P0} of {b.dim}")
    return Decision(True, "type 2, every block is spanned by values of R0 and P0")


def ricci_isotropy_guarantee(d: HolonomyDescriptor) -> bool:
    """Type 2 with every block satisfying R = R0 and P1 = 0."""
    if d.type != 2:
        return False
    blocks, _ = block_algebras(d)
    for b in blocks:
        r = _block_report(b)
        if r.dim_R != r.dim_R0 or r.dim_P1:
            return False
    return True
