import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from walkerhol import linalg

# ranks and nullspaces below were computed with sympy's Matrix.rank / nullspace
FROZEN = [
    ([[1, 2, 3], [2, 4, 6], [1, 0, 1]], 2, [[-1, -1, 1]]),
    ([["1/2", 1, 0, 3], [1, 2, 0, 6], [0, 0, 1, 1], [1, 2, 1, 7]], 2, [[-2, 1, 0, 0], [-6, 0, -1, 1]]),
    ([[0, 0], [0, 0]], 0, [[1, 0], [0, 1]]),
    ([[2, -1, 0, 0, 1], [0, 3, "1/3", 0, 0], [2, 2, "1/3", 0, 1], [1, 1, 1, 1, 1]], 3, [["1/15", "2/15", "-6/5", 1, 0], ["-7/15", "1/15", "-3/5", 0, 1]]),
]


def _q(rows):
    return [[mpq(v) for v in r] for r in rows]


@pytest.mark.parametrize("rows,rank,kernel", FROZEN)
def test_against_frozen_sympy_values(rows, rank, kernel):
    rows = _q(rows)
    ncols = len(rows[0])
    assert linalg.rank(rows) == rank
    assert linalg.dense_rank(rows) == rank
    ours = linalg.nullspace(rows, ncols)
    assert len(ours) == len(kernel)
    # same kernel: each frozen vector lies in the span of ours
    ech = linalg.Echelon(ncols)
    for v in ours:
        ech.add(v)
    for v in _q(kernel):
        assert ech.contains(v)


matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3).map(mpq), min_size=c, max_size=c), min_size=1, max_size=6)
)


@settings(max_examples=60)
@given(matrices)
def test_rank_nullity(rows):
    ncols = len(rows[0])
    ker = linalg.nullspace(rows, ncols)
    assert linalg.rank(rows) + len(ker) == ncols
    for v in ker:
        for r in rows:
            assert sum((a * b for a, b in zip(r, v)), mpq(0)) == 0


@settings(max_examples=60)
@given(matrices)
def test_mod_p_rank_is_a_lower_bound(rows):
    r = linalg.rank_mod_p(rows, len(rows[0]))
    assert r is not None and r <= linalg.rank(rows)
    assert linalg.dense_rank(rows) == linalg.rank(rows)


@settings(max_examples=40)
@given(matrices)
def test_reduced_basis_spans_the_rows(rows):
    ncols = len(rows[0])
    basis = linalg.reduced_basis(rows, ncols)
    assert len(basis) == linalg.rank(rows)
    ech = linalg.Echelon(ncols)
    for v in basis:
        ech.add(v)
    assert all(ech.contains(r) for r in rows)


def test_solve_in_span_and_intersection():
    a = _q([[1, 0, 0], [0, 1, 0]])
    b = _q([[0, 1, 0], [0, 0, 1]])
    assert linalg.solve_in_span(a, _q([[2, 3, 0]])[0]) == [2, 3]
    assert linalg.solve_in_span(a, _q([[0, 0, 1]])[0]) is None
    inter = linalg.intersect(a, b)
    assert len(inter) == 1 and inter[0][1] != 0 and inter[0][0] == inter[0][2] == 0


def test_orthogonal_complement_with_gram():
    amb = _q([[1, 0], [0, 1]])
    sub = _q([[1, 1]])
    comp = linalg.orthogonal_complement(sub, amb, gram=_q([[1, 0], [0, 2]]))
    (v,) = comp
    assert v[0] + 2 * v[1] == 0


def test_mat_inverse():
    a = _q([[2, 1], [1, 1]])
    inv = linalg.mat_inverse(a)
    assert linalg.matmul(a, inv) == _q([[1, 0], [0, 1]])
    with pytest.raises(ZeroDivisionError):
        linalg.mat_inverse(_q([[1, 2], [2, 4]]))
