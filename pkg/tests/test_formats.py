import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from walkerhol.exactnum import ParseError, Poly, as_ratfunc
from walkerhol.formats import (
    format_value,
    load_algebra,
    parse_value,
    read_soalg,
    read_walker,
    write_soalg,
    write_walker,
)
from walkerhol.forge import space_form_metric
from walkerhol.liealg import builtin
from walkerhol.walker import WalkerMetric

N = 4


def x(i):
    return Poly.var(N, i)


@pytest.mark.parametrize("name", ["so:3", "su:2", "so3irr5"])
def test_soalg_round_trip(name):
    h = builtin(name)
    back = read_soalg(write_soalg(h))
    assert back.n == h.n and back.dim == h.dim and back.same_span(h)


def test_soalg_file_source(tmp_path):
    path = tmp_path / "custom.soalg"
    path.write_text(write_soalg(builtin("u:2")))
    assert load_algebra(f"file:{path}").dim == 4
    assert load_algebra(str(path)).dim == 4


@pytest.mark.parametrize(
    "text",
    [
        "n = 2\nbasis = 1\nM[1] = [[0,1],[-1,0]]\n",
        "soalgv1\nn = 2\nbasis = 1\nM[1] = [[1,0],[0,0]]\n",
        "soalgv1\nn = 2\nbasis = 2\nM[1] = [[0,1],[-1,0]]\nM[2] = [[0,2],[-2,0]]\n",
        "soalgv1\nn = 2\nbasis = 2\nM[1] = [[0,1],[-1,0]]\n",
        "soalgv1\nn = 2\nbasis = 1\nM[1] = [[0,1,0],[-1,0]]\n",
        "soalgv1\nn = 2\nbasis = 1\nwhat = 3\n",
    ],
)
def test_soalg_errors(text):
    with pytest.raises(ParseError):
        read_soalg(text)


def test_builtin_sum_source():
    h = load_algebra("builtin:su:2+trivial:1+so:2")
    assert h.n == 7 and h.dim == 4
    with pytest.raises(ParseError):
        load_algebra("builtin:nope:3")
    with pytest.raises(ParseError):
        load_algebra("/does/not/exist.soalg")


def test_walker_flat_round_trip():
    g = WalkerMetric.flat(2, u=[x(1) * x(2) * x(3), Poly.zero(N)], f=x(0) * x(1) - x(2) ** 2 * mpq(1, 3))
    cert = [("vacuum", False), ("N", 1), ("lambda", mpq(1, 2)), ("expected", "type1:so:2")]
    text = write_walker(g, cert)
    assert "u[2]" not in text
    back, cert_back = read_walker(text)
    assert back.same_as(g)
    assert cert_back == cert


def test_walker_rational_h_round_trip():
    h = space_form_metric(2, -1)
    g = WalkerMetric(2, "diag", [Poly.zero(N)] * 2, x(1) ** 2 - x(2) ** 2, h=h)
    back, _ = read_walker(write_walker(g))
    assert back.family == "diag" and back.same_as(g)


def test_walker_general_round_trip():
    h = [[as_ratfunc(x(3) ** 2 + 1), as_ratfunc(x(1))], [as_ratfunc(x(1)), as_ratfunc(Poly.const(N, 2))]]
    g = WalkerMetric(2, "general", [x(2) * x(3), Poly.zero(N)], x(1) * x(2), h=h)
    back, _ = read_walker(write_walker(g))
    assert back.same_as(g)


@pytest.mark.parametrize(
    "text",
    [
        "n = 2\nfamily = flat\n",
        "walkerv1\nfamily = flat\n",
        "walkerv1\nn = 2\nfamily = odd\n",
        "walkerv1\nn = 2\nfamily = flat\nu[3] = x1\n",
        "walkerv1\nn = 2\nfamily = flat\nu[1] = x0\n",
        "walkerv1\nn = 2\nfamily = diag\nh = flat\n",
        "walkerv1\nn = 2\nfamily = diag\nh[1][1] = 1\n",
        "walkerv1\nn = 2\nfamily = flat\nf = x1 +\n",
        "walkerv1\nn = 2\nfamily = flat\nh[1][1] = 1\n",
    ],
)
def test_walker_errors(text):
    with pytest.raises(ParseError):
        read_walker(text)


@settings(max_examples=30)
@given(st.one_of(st.booleans(), st.integers(-100, 100), st.builds(mpq, st.integers(-9, 9), st.integers(2, 9))))
def test_value_round_trip(v):
    assert parse_value(format_value(v)) == v
