import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from walkerhol.liealg import (
    AlgebraError,
    HolonomyDescriptor,
    SimElement,
    Subalgebra,
    bivector_labels,
    bivector_to_sim,
    bracket,
    builtin,
    decompose,
    direct_sum,
    elementary_skew,
    from_skew_coords,
    sim_to_bivector,
    skew_coords,
)

DIMS = {
    "so:4": 6,
    "u:2": 4,
    "su:2": 3,
    "su:3": 8,
    "sp:1": 3,
    "sp:2": 10,
    "spsp1:1": 6,
    "spsp1:2": 13,
    "g2": 14,
    "spin7": 21,
    "so3irr5": 3,
    "trivial:3": 0,
}


@pytest.mark.parametrize("name,dim", sorted(DIMS.items()))
def test_builtin_dimensions_and_closure(name, dim):
    h = builtin(name)
    assert h.dim == dim
    assert h.is_independent()
    assert h.is_closed()


@pytest.mark.parametrize("name", ["so:4", "u:2", "su:2", "sp:1", "spsp1:1", "g2", "spin7", "so3irr5"])
def test_irreducible_builtins_have_one_block(name):
    dec = decompose(builtin(name))
    assert dec.s == 1 and dec.n_trivial == 0 and dec.is_direct_sum


def test_inclusions():
    assert builtin("su:2").derived().same_span(builtin("su:2"))
    u2 = builtin("u:2")
    assert all(u2.contains(b) for b in builtin("su:2").basis)
    assert u2.center().dim == 1
    so7 = builtin("so:7")
    assert all(so7.contains(b) for b in builtin("g2").basis)


def test_so3irr5_is_so3():
    h = builtin("so3irr5")
    # [e1, e2] = +-e3 type structure: the derived algebra is everything and the centre is zero
    assert h.derived().dim == 3
    assert h.center().dim == 0


def test_direct_sum_decomposition():
    h = direct_sum([builtin("so:2"), builtin("su:2")], 1)
    dec = decompose(h)
    assert dec.sizes == [2, 4]
    assert dec.n_trivial == 1
    assert [i.dim for i in dec.ideals] == [1, 3]
    assert dec.active_coordinates() == [0, 1, 2, 3, 4, 5]


def test_closure_of_generators():
    a = elementary_skew(3, 0, 1)
    b = elementary_skew(3, 1, 2)
    h = Subalgebra.spanned_by(3, [a, b])
    assert not h.is_closed()
    assert h.closure().dim == 3


def test_builtin_errors():
    with pytest.raises(AlgebraError):
        builtin("g2:8")
    with pytest.raises(AlgebraError):
        builtin("nope:2")
    with pytest.raises(AlgebraError):
        builtin("so:1")


def test_subalgebra_rejects_non_skew():
    m = np.empty((2, 2), dtype=object)
    m[:] = mpq(0)
    m[0, 0] = mpq(1)
    with pytest.raises(AlgebraError):
        Subalgebra(2, (m,))


small = st.integers(-4, 4).map(mpq)


@settings(max_examples=50)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), small, st.lists(small, min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2), st.lists(small, min_size=n, max_size=n))))
def test_sim_bivector_round_trip(data):
    n, a, A, X = data
    e = SimElement(a, from_skew_coords(n, A), tuple(X))
    v = sim_to_bivector(e)
    assert len(v) == len(bivector_labels(n))
    back = bivector_to_sim(v)
    assert back.a == e.a and tuple(back.X) == e.X and bool(np.all(back.A == e.A))
    assert SimElement.from_matrix(e.matrix()).a == a


def test_sim_bracket_of_translations_vanishes():
    n = 2
    X1 = SimElement(mpq(0), from_skew_coords(n, [0]), (mpq(1), mpq(0))).matrix()
    X2 = SimElement(mpq(0), from_skew_coords(n, [0]), (mpq(0), mpq(1))).matrix()
    assert not bracket(X1, X2).any()


def test_descriptor_validation():
    u2 = builtin("u:2")
    HolonomyDescriptor(2, u2).validate()
    # phi must vanish on [h, h]; the centre direction of u(2) carries it
    z = u2.center().basis[0]
    phi = [c for c in u2.coordinates(z)]
    HolonomyDescriptor(3, u2, phi=phi).validate()
    with pytest.raises(AlgebraError):
        HolonomyDescriptor(3, builtin("su:2"), phi=[mpq(1), mpq(0), mpq(0)]).validate()
    with pytest.raises(AlgebraError):
        HolonomyDescriptor(5, u2).validate()


def test_skew_coords_round_trip():
    m = elementary_skew(4, 1, 3)
    assert bool(np.all(from_skew_coords(4, skew_coords(m)) == m))
