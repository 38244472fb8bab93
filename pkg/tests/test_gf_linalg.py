import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclohom.gf_linalg import (
    FieldError,
    NoSolution,
    PrimeFieldMatrix,
    Subspace,
    as_field,
    dense_rank,
    kronecker,
    rref,
    solve,
)

PRIMES = [2, 3, 5, 7]


@st.composite
def matrices(draw, max_side=6):
    p = draw(st.sampled_from(PRIMES))
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return PrimeFieldMatrix.from_dense(p, np.array(vals, dtype=object).reshape(r, c))


def naive_rank(M):
    # plain row reduction on a list of lists
    p = M.p
    a = [[int(x) for x in row] for row in M.to_dense()]
    rank = 0
    for c in range(M.cols):
        piv = next((i for i in range(rank, M.rows) if a[i][c] % p), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(M.rows):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def test_field_rejects_composites():
    for n in (0, 1, 4, 9):
        with pytest.raises(FieldError):
            as_field(n)
    assert as_field(5).inv(2) == 3


def test_identity_and_zero():
    assert PrimeFieldMatrix.identity(3, 4).rank() == 4
    assert PrimeFieldMatrix.zeros(3, 2, 5).is_zero()
    assert PrimeFieldMatrix.zeros(3, 0, 0).rank() == 0


def test_entries_reduced_mod_p():
    M = PrimeFieldMatrix(3, 2, 2, {(0, 0): 4, (1, 1): 3})
    assert M.entries == {(0, 0): 1}


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_agrees_with_naive_and_dense(M):
    r = M.rank()
    assert r == naive_rank(M)
    assert r == dense_rank(M.to_dense().astype(np.int64), M.p)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(M):
    r, ker, img = rref(M)
    assert r + ker.dim == M.cols
    assert img.dim == r
    for v in ker.vectors():
        assert not M.apply(v)


@settings(max_examples=40, deadline=None)
@given(matrices(), st.data())
def test_solve_round_trip(M, data):
    x = data.draw(st.lists(st.integers(0, M.p - 1), min_size=M.cols, max_size=M.cols))
    v = M.apply(dict(enumerate(x)))
    y = solve(M, v)
    assert M.apply(dict(enumerate(y))) == {i: c for i, c in v.items() if c}


def test_solve_raises_outside_image():
    M = PrimeFieldMatrix(3, 2, 1, {(0, 0): 1})
    with pytest.raises(NoSolution):
        solve(M, [0, 1])


@settings(max_examples=40, deadline=None)
@given(matrices(max_side=4), st.data())
def test_product_is_associative(A, data):
    p = A.p
    k = data.draw(st.integers(0, 4))
    B = PrimeFieldMatrix.from_dense(p, np.array(
        data.draw(st.lists(st.integers(0, p - 1), min_size=A.cols * k, max_size=A.cols * k)),
        dtype=object).reshape(A.cols, k))
    C = PrimeFieldMatrix.identity(p, k).scale(2)
    assert ((A @ B) @ C).entries == (A @ (B @ C)).entries


def test_kronecker_rank_multiplies():
    A = PrimeFieldMatrix(5, 2, 2, {(0, 0): 1, (1, 0): 2, (0, 1): 3})
    B = PrimeFieldMatrix(5, 2, 3, {(0, 0): 1, (1, 2): 4})
    assert kronecker(A, B).rank() == A.rank() * B.rank()


def test_subspace_intersection_and_preimage():
    S = Subspace.span(3, 3, [{0: 1}, {1: 1}])
    T = Subspace.span(3, 3, [{1: 1}, {2: 1}])
    assert S.intersect(T).dim == 1
    f = PrimeFieldMatrix(3, 3, 3, {(0, 0): 1, (1, 1): 1})
    assert S.preimage(f).dim == 3
    assert T.preimage(f).dim == 2


def test_field_mismatch():
    with pytest.raises(FieldError):
        PrimeFieldMatrix.identity(3, 2) @ PrimeFieldMatrix.identity(5, 2)
