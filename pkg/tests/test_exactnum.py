import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from walkerhol.exactnum import (
    EvaluationError,
    ParseError,
    Poly,
    Q,
    RatFunc,
    fmt_q,
    parse_poly,
    parse_ratfunc,
    series_inverse,
)

N = 4

coef = st.builds(lambda p, q: mpq(p, q), st.integers(-6, 6), st.integers(1, 4))
exps = st.tuples(*[st.integers(0, 3)] * N)
polys = st.dictionaries(exps, coef, max_size=5).map(lambda t: Poly(N, t))
points = st.tuples(*[coef] * N)


def x(i):
    return Poly.var(N, i)


def test_rational_coercion():
    assert Q("3/6") == mpq(1, 2)
    assert Q(2, 4) == mpq(1, 2)
    assert fmt_q(mpq(4, 2)) == "2"
    assert fmt_q(mpq(-1, 3)) == "-1/3"
    with pytest.raises(TypeError):
        Q(0.5)


def test_parse_and_print():
    p = parse_poly("2/3*x1^2*x3 - x0 + 5", N)
    assert p == x(1) ** 2 * x(3) * mpq(2, 3) - x(0) + 5
    assert parse_poly(str(p), N) == p
    assert str(Poly.zero(N)) == "0"


@pytest.mark.parametrize("bad", ["x", "2*", "x1^", "x9", "1/0*x1", "x1 +* x2"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_poly(bad, N)


@given(polys)
def test_print_parse_round_trip(p):
    assert parse_poly(str(p), N) == p


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Poly.zero(N)


@given(polys, polys, st.integers(0, N - 1))
def test_leibniz_rule(a, b, i):
    assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)


@given(polys, polys, points)
def test_evaluation_is_a_ring_map(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


@settings(max_examples=40)
@given(polys, points, points)
def test_taylor_recovers_the_polynomial(p, pt, q):
    # a full-degree Taylor expansion is p re-centred at pt
    t = p.taylor(pt, p.degree() if not p.is_zero() else 0)
    assert t.evaluate([a - b for a, b in zip(q, pt)]) == p.evaluate(q)


def test_taylor_low_order_terms():
    p = x(1) ** 3 + x(1) * x(2)
    t = p.taylor((0, 1, 2, 0), 1)
    # p(1,2) = 3; dp/dx1 = 3 + 2 = 5; dp/dx2 = 1
    assert t.constant_term() == 3
    assert t.terms[(0, 1, 0, 0)] == 5
    assert t.terms[(0, 0, 1, 0)] == 1
    assert t.degree() == 1


def test_laplacian():
    p = x(1) ** 2 - x(2) ** 2 + x(1) * x(2) * x(3)
    assert p.laplacian([1, 2]).is_zero()
    assert (x(1) ** 4).laplacian([1, 2]) == x(1) ** 2 * 12


def test_ratfunc_arithmetic_and_equality():
    a = RatFunc(x(1), x(2) + 1)
    b = RatFunc(x(1) * (x(3) + 2), (x(2) + 1) * (x(3) + 2))
    assert a == b
    assert (a + a) == RatFunc(x(1) * 2, x(2) + 1)
    assert (a * a.inverse()).simplify().is_poly()
    assert a.diff(2) == RatFunc(-x(1), (x(2) + 1) ** 2)


def test_ratfunc_pole():
    a = RatFunc(x(1), x(2))
    with pytest.raises(EvaluationError):
        a.evaluate((0, 1, 0, 0))
    assert a.evaluate((0, 1, 2, 0)) == mpq(1, 2)


def test_ratfunc_text_round_trip():
    a = RatFunc(x(1) * 4, (x(1) ** 2 + x(2) ** 2 + 1) ** 2)
    assert parse_ratfunc(str(a), N) == a
    with pytest.raises(ParseError):
        parse_ratfunc("(x1) / (0)", N)


def test_series_inverse():
    p = x(1) + 2
    inv = series_inverse(p, 3)
    assert (p * inv).truncate(3) == Poly.const(N, 1)


@settings(max_examples=30)
@given(polys, points)
def test_ratfunc_taylor_matches_value(p, pt):
    den = x(1) ** 2 + 1
    r = RatFunc(p, den)
    assert r.taylor(pt, 1).constant_term() == r.evaluate(pt)
