import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_diag_metric, random_flat_metric
from walkerhol.exactnum import Poly, as_ratfunc
from walkerhol.forge import space_form_metric
from walkerhol.walker import (
    MetricError,
    WalkerMetric,
    classify_walker_type,
    einstein_constant,
    einstein_defects,
    hessian_nondegenerate,
    infinitesimal_holonomy,
    inverse_metric,
    is_totally_ricci_isotropic,
    is_vacuum,
    lowered_riemann,
    null_frame,
    ricci,
    ricci_formulas_diag,
    ricci_formulas_flat,
)

N = 4


def x(i):
    return Poly.var(N, i)


def r(p):
    return as_ratfunc(p)


def flat_oracle_metric():
    u = [x(1) * x(2) * x(3) + x(2) ** 2, x(1) ** 2 * x(3) ** 2 - x(2) * x(3)]
    f = x(0) ** 2 * x(1) + x(0) * x(2) * x(3) + x(1) ** 3 * x(3)
    return WalkerMetric.flat(2, u=u, f=f)


def general_oracle_metric():
    h = [[r(x(3) ** 2 + 1), r(x(1))], [r(x(1)), r(Poly.const(N, 2))]]
    return WalkerMetric(2, "general", [x(2) * x(3), Poly.zero(N)], x(1) * x(2) + x(0) * x(1), h=h)


# values computed independently with sympy (Christoffel symbols from the explicit inverse)
ORACLE = [
    (flat_oracle_metric, (0, 1, 2, 3), {(0, 3): 1, (1, 3): -1, (2, 3): -6, (3, 3): "-71/2"}),
    (flat_oracle_metric, ("1/2", -1, "2/3", 2), {(0, 3): -1, (1, 3): "-1/2", (2, 3): -2, (3, 3): "15025/324"}),
    (general_oracle_metric, (0, 1, 2, 3), {(1, 3): "182/361", (2, 3): "3/361", (3, 3): "244/361"}),
    (general_oracle_metric, ("1/2", -1, "2/3", 2), {(1, 3): "83/162", (2, 3): "-2/81", (3, 3): "271/486"}),
]


@pytest.mark.parametrize("make,point,expected", ORACLE)
def test_ricci_against_frozen_oracle(make, point, expected):
    g = make()
    pt = [mpq(v) for v in point]
    ric = ricci(g).components
    for a in range(N):
        for b in range(a, N):
            assert as_ratfunc(ric[a][b]).evaluate(pt) == mpq(expected.get((a, b), 0))


def test_pp_wave():
    g = WalkerMetric.flat(2, f=x(1) ** 2)
    ric = ricci(g)
    assert ric.nonzero() == [(3, 3)]
    assert ric.components[3][3] == Poly.const(N, -1)
    vac = WalkerMetric.flat(2, f=x(1) ** 2 - x(2) ** 2 + x(1) * x(2) * x(3))
    assert is_vacuum(vac)


def test_pp_wave_holonomy_is_translations():
    g = WalkerMetric.flat(2, f=x(1) ** 2 - x(2) ** 2 + x(1) * x(2) * x(3))
    span = infinitesimal_holonomy(g)
    assert span.dim == 2 and span.is_closed()
    labels = span.labels()
    for v in span.basis:
        support = {labels[k] for k, c in enumerate(v) if c}
        assert support <= {"p^e1", "p^e2"}
    c = classify_walker_type(span)
    assert c.dim_translations == 2 and c.dim_A == 0


def test_minkowski_has_zero_holonomy():
    span = infinitesimal_holonomy(WalkerMetric.minkowski(3))
    assert span.dim == 0
    c = classify_walker_type(span)
    assert c.type is None and "flat" in c.reason


def test_sphere_walker_metric():
    h = space_form_metric(2, 1)
    g = WalkerMetric(2, "diag", [Poly.zero(N)] * 2, Poly.zero(N), h=h)
    ric = ricci(g).components
    # Ric(h) = h for the unit 2-sphere, and the null directions see nothing
    assert as_ratfunc(ric[1][1]) == h[0][0] and as_ratfunc(ric[2][2]) == h[1][1]
    assert ricci(g).nonzero() == [(1, 1), (2, 2)]
    assert einstein_constant(g) == 0
    assert einstein_defects(g, 0) == [(1, 1), (2, 2)]


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 3))
def test_flat_formulas_match_pipeline(seed, n):
    g = random_flat_metric(random.Random(seed), n, maxdeg=3)
    assert ricci_formulas_flat(g).equals(ricci(g))


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 3))
def test_diag_formulas_match_pipeline(seed, n):
    g = random_diag_metric(random.Random(seed), n, maxdeg=3)
    assert ricci_formulas_diag(g).equals(ricci(g))


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 10**6))
def test_riemann_symmetries(seed):
    g = random_flat_metric(random.Random(seed), 2, maxdeg=3)
    R = lowered_riemann(g)
    zero = as_ratfunc(Poly.zero(N))

    def get(a, b, c, d):
        return as_ratfunc(R.get((a, b, c, d), zero))

    for a in range(N):
        for b in range(N):
            for c in range(N):
                for d in range(N):
                    if c == d or a == b:
                        continue
                    assert get(a, b, c, d) == -get(b, a, c, d)
                    assert get(a, b, c, d) == get(c, d, a, b)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_walker_ricci_has_no_x0_row(seed):
    g = random_flat_metric(random.Random(seed), 3, maxdeg=3)
    ric = ricci(g).components
    assert all(ric[0][i].is_zero() for i in range(g.n + 1))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6), st.tuples(*[st.integers(-3, 3)] * 5))
def test_null_frame_gram(seed, point):
    rng = random.Random(seed)
    g = random_diag_metric(rng, 3, maxdeg=2)
    try:
        frame = null_frame(g, point)
    except (MetricError, ZeroDivisionError, ArithmeticError):
        return
    n1 = g.nvars - 1
    G = frame.gram
    assert G[0][0] == 0 and G[n1][n1] == 0 and G[0][n1] == 1
    for i in range(1, n1):
        assert G[0][i] == 0 and G[n1][i] == 0
        assert G[i][i] > 0
        for j in range(i + 1, n1):
            assert G[i][j] == 0
        if frame.normalized:
            assert G[i][i] == 1


def test_inverse_metric_is_inverse():
    g = general_oracle_metric()
    comps = [[as_ratfunc(c) for c in row] for row in g.components()]
    inv = [[as_ratfunc(c) for c in row] for row in inverse_metric(g)]
    for a in range(N):
        for b in range(N):
            s = as_ratfunc(Poly.zero(N))
            for c in range(N):
                s = s + comps[a][c] * inv[c][b]
            assert s == as_ratfunc(Poly.const(N, int(a == b)))


def test_metric_validation():
    with pytest.raises(MetricError):
        WalkerMetric.flat(2, u=[x(0), Poly.zero(N)])
    with pytest.raises(MetricError):
        WalkerMetric(2, "diag", [Poly.zero(N)] * 2, Poly.zero(N), h=[[r(x(3) + 1), r(Poly.zero(N))], [r(Poly.zero(N)), r(Poly.const(N, 1))]])
    with pytest.raises(MetricError):
        WalkerMetric(2, "general", [Poly.zero(N)] * 2, Poly.zero(N), h=[[r(Poly.const(N, 1)), r(x(1))], [r(x(2)), r(Poly.const(N, 1))]])
    with pytest.raises(MetricError):
        WalkerMetric(2, "bogus", [Poly.zero(N)] * 2, Poly.zero(N))


def test_ricci_isotropy_and_hessian():
    g = WalkerMetric.flat(2, f=x(1) ** 2)
    assert not is_vacuum(g)
    # only Ric_qq survives and q is null, so Ric o Ric = 0
    assert is_totally_ricci_isotropic(g)
    assert not hessian_nondegenerate(g)
    assert hessian_nondegenerate(WalkerMetric.flat(2, f=x(1) ** 2 + x(1) * x(2) ** 2 * x(3)))


def test_formulas_refuse_wrong_family():
    with pytest.raises(MetricError):
        ricci_formulas_flat(general_oracle_metric())
    with pytest.raises(MetricError):
        ricci_formulas_diag(flat_oracle_metric())
