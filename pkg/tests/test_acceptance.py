"""One test per acceptance criterion; each records a PASS/FAIL line."""

import random
from contextlib import contextmanager

import pytest
from gmpy2 import mpq

from conftest import record
from helpers import random_diag_metric, random_flat_metric
from walkerhol import curvspace, forge
from walkerhol.exactnum import Poly
from walkerhol.liealg import HolonomyDescriptor, builtin
from walkerhol.walker import (
    WalkerMetric,
    is_einstein,
    is_totally_ricci_isotropic,
    is_vacuum,
    ricci,
    ricci_formulas_diag,
    ricci_formulas_flat,
)


@contextmanager
def criterion(number, title):
    """Record the outcome even when the body raises."""
    state = {"ok": False}
    try:
        yield state
    except BaseException:
        record(number, title, False)
        raise
    record(number, title, state["ok"])
    assert state["ok"], f"criterion {number} failed: {title}"


def test_p_space_classification():
    with criterion(1, "P-space classification of the builtin algebras") as c:
        no_p1 = all(
            (r.dim_P1, r.dim_P0 > 0) == (0, True)
            for r in (curvspace.spaces(builtin(x)) for x in ("su:2", "sp:1", "g2", "spin7"))
        )
        full_p1 = all(
            (r.dim_P1, r.dim_P0 > 0) == (builtin(x).n, True)
            for x, r in ((x, curvspace.spaces(builtin(x))) for x in ("so:3", "so:4", "u:2", "spsp1:1"))
        )
        r = curvspace.spaces(builtin("so3irr5"))
        c["ok"] = no_p1 and full_p1 and (r.dim_P1, r.dim_P0) == (5, 0)


def test_r_space_splitting():
    with criterion(2, "R-space splitting of the builtin algebras") as c:
        ricci_flat = all(
            r.dim_R == r.dim_R0 > 0 for r in (curvspace.spaces(builtin(x)) for x in ("su:2", "sp:1", "g2", "spin7"))
        )
        one_r1 = all(
            curvspace.spaces(builtin(x)).dim_R1 == 1 for x in ("spsp1:1", "u:2", "so:3", "so:4", "so:5", "so3irr5")
        )
        r = curvspace.spaces(builtin("so3irr5"))
        c["ok"] = ricci_flat and one_r1 and r.dim_R == r.dim_R1 == 1 and r.symmetric_berger


def test_lorentzian_curvature_dimension_identity():
    with criterion(3, "dim R(g^{1,h}) by brute force equals 1 + n + n(n+1)/2 + dim R(h) + dim P(h)") as c:
        ok = True
        for name in ("trivial:2", "so:2", "so:3", "su:2"):
            h = builtin(name)
            n = h.n
            brute = curvspace.two_form_space_dim(curvspace.g1_basis(h), n + 2)
            r = curvspace.spaces(h)
            ok = ok and brute == 1 + n + n * (n + 1) // 2 + r.dim_R + r.dim_P
        c["ok"] = ok


def test_ricci_formulas_match_the_general_pipeline():
    with criterion(4, "closed Ricci formulas agree with the Christoffel pipeline on 20 + 20 random metrics") as c:
        rng = random.Random(20240607)
        ok = True
        for k in range(20):
            n = 2 + k % 4
            g = random_flat_metric(rng, n, maxdeg=4)
            ok = ok and ricci_formulas_flat(g).equals(ricci(g))
            d = random_diag_metric(rng, n, maxdeg=4)
            ok = ok and ricci_formulas_diag(d).equals(ricci(d))
        c["ok"] = ok


@pytest.mark.slow
def test_g2_and_spin7_vacuum_constructions():
    with criterion(5, "G2 and spin(7) type 2 vacuum metrics with holonomy spans 21 and 29") as c:
        ok = True
        for name, dim_metric, span in (("g2", 9, 21), ("spin7", 10, 29)):
            res = forge.construct_type2_vacuum(forge.ConstructionSpec(builtin(name), forge.default_P_list(builtin(name), 2)[:1], 2))
            cert = res.cert()
            ok = ok and res.metric.nvars == dim_metric and cert["N"] == 1
            ok = ok and is_vacuum(res.metric) and cert["holonomy_dim"] == span
        c["ok"] = ok


def test_so3_irreducible_type1_construction():
    with criterion(6, "type 1 vacuum metric for the irreducible so(3) in so(5)") as c:
        h = builtin("so3irr5")
        P = forge.default_P_list(h, 1)
        res = forge.construct_type1_vacuum(forge.ConstructionSpec(h, P, 1))
        g = res.metric
        N = g.nvars
        rt = curvspace.ricci_tilde(P[0])
        f1 = sum((Poly.var(N, 1 + k) * (2 * rt[k]) for k in range(h.n)), Poly.zero(N))
        f1_found = g.f.coefficient_in(0, 1)
        f0 = g.f - Poly.var(N, 0) * f1_found
        c["ok"] = (
            N == 7
            and len(P) == 1
            and is_vacuum(g)
            and f1_found == f1
            and not f1.is_zero()
            and g.f.degree_in(0) == 1
            and f0.degree() == 4
            and res.cert()["holonomy_dim"] == 9
        )


def test_einstein_sphere_example():
    with criterion(7, "Einstein metric with lambda = 1 over the unit 2-sphere") as c:
        N = 4
        h = forge.space_form_metric(2, 1)
        f0 = Poly.var(N, 1, 2) - Poly.var(N, 2, 2)
        res = forge.construct_type1_einstein(h, 1, f0, certify_holonomy=False)
        c["ok"] = is_einstein(res.metric, 1) and not is_vacuum(res.metric)


def test_poisson_solver():
    with criterion(8, "Poisson solver on 100 random quadratic sources and three closed forms") as c:
        rng = random.Random(8)
        ok = True
        for _ in range(100):
            n0 = rng.randint(2, 7)
            N = n0 + 2
            xs = list(range(1, n0 + 1))
            H = Poly.const(N, mpq(rng.randint(-9, 9), rng.randint(1, 4)))
            for i in xs:
                H = H + Poly.var(N, i) * mpq(rng.randint(-9, 9), rng.randint(1, 4))
                for j in xs[i - 1 :]:
                    H = H + Poly.var(N, i) * Poly.var(N, j) * mpq(rng.randint(-9, 9), rng.randint(1, 4))
            ok = ok and forge.poisson_solve(H, xs).laplacian(xs) == H
        N = 5
        xs = [1, 2, 3]
        x1 = Poly.var(N, 1)
        ok = ok and forge.poisson_solve(Poly.const(N, 1), xs) == x1 * x1 * mpq(1, 2)
        ok = ok and forge.poisson_solve(x1, xs) == x1 ** 3 * mpq(1, 6)
        ok = ok and forge.poisson_solve(x1 * x1, xs) == x1 ** 4 * mpq(1, 12)
        c["ok"] = ok


def test_ricci_isotropy_without_vacuum():
    with criterion(9, "su(2) metric with d0 f = 0 is totally Ricci-isotropic but not vacuum") as c:
        h = builtin("su:2")
        P = forge.default_P_list(h, 2)
        assert not any(curvspace.ricci_tilde(P[0]))
        N = h.n + 2
        x = [Poly.var(N, i) for i in range(N)]
        f = x[1] ** 3 * x[5] + x[2] * x[3] * x[4] - x[4] ** 2 * mpq(5, 2) + x[1] * x[5] ** 2 + 7
        g = WalkerMetric.flat(h.n, u=forge.build_u(P), f=f)
        c["ok"] = 0 not in f.variables() and not is_vacuum(g) and is_totally_ricci_isotropic(g)


def _emitted_descriptors():
    out = []
    for name in ("su:2", "sp:1"):
        res = forge.construct_type2_vacuum(builtin(name), certify_holonomy=False)
        out.append((f"emitted type 2 {name}", res.expected_holonomy, "vacuum", None))
    for name in ("so:3", "so3irr5"):
        res = forge.construct_type1_vacuum(builtin(name), certify_holonomy=False)
        out.append((f"emitted type 1 {name}", res.expected_holonomy, "vacuum", None))
    N = 4
    res = forge.construct_type1_einstein(forge.space_form_metric(2, 1), 1, Poly.var(N, 1, 2) - Poly.var(N, 2, 2))
    out.append(("emitted einstein sphere", res.expected_holonomy, "einstein", 1))
    return out


def test_admissibility_gates():
    with criterion(10, "admissibility decisions on a 12 case table") as c:
        u2, su2 = builtin("u:2"), builtin("su:2")
        type3 = HolonomyDescriptor(3, u2, phi=list(u2.coordinates(u2.center().basis[0])))
        type4 = HolonomyDescriptor(4, su2, m=2, psi=[[mpq(0)] * su2.dim] * 2)
        refused = [
            ("type 2 su:2 lambda 1", HolonomyDescriptor(2, su2), "einstein", 1),
            ("type 2 g2 lambda -1", HolonomyDescriptor(2, builtin("g2")), "einstein", -1),
            ("type 3 einstein", type3, "einstein", 1),
            ("type 3 vacuum", type3, "vacuum", None),
            ("type 4 vacuum", type4, "vacuum", None),
            ("type 4 ricci-isotropic", type4, "ricci-isotropic", None),
            ("type 1 g2 vacuum", HolonomyDescriptor(1, builtin("g2")), "vacuum", None),
        ]
        accepted = _emitted_descriptors()
        assert len(refused) + len(accepted) == 12
        ok = all(not forge.admissible(d, regime, lam) for _, d, regime, lam in refused)
        ok = ok and all(forge.admissible(d, regime, lam) for _, d, regime, lam in accepted)
        c["ok"] = ok
