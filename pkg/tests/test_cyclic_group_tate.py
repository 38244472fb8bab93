import pytest
from hypothesis import given, settings, strategies as st

from cyclohom.cyclic_group_tate import (
    CyclicGroupModule,
    Expansion,
    TateKind,
    build_K,
    epsilon_maps,
    extended_tate_dims,
    is_tight,
    norm_map,
    periodic_expand,
    tate_dims,
)
from cyclohom.gf_linalg import PrimeFieldMatrix
from cyclohom.oracle import brute_group_homology


def _elementary(p, n, i, j, c):
    ents = {(k, k): 1 for k in range(n)}
    ents[(i, j)] = c
    return PrimeFieldMatrix(p, n, n, ents)


@st.composite
def modules(draw, orders=(2, 3, 4, 5, 6)):
    p = draw(st.sampled_from([2, 3, 5]))
    order = draw(st.sampled_from(orders))
    lengths = draw(st.lists(st.sampled_from([d for d in range(1, order + 1) if order % d == 0]),
                            min_size=1, max_size=3))
    perm, base = [], 0
    for L in lengths:
        perm += [base + (k + 1) % L for k in range(L)]
        base += L
    sigma = CyclicGroupModule.permutation(p, order, perm).sigma
    n = sigma.rows
    for _ in range(draw(st.integers(0, 3)) if n > 1 else 0):
        i, j = draw(st.sampled_from([(a, b) for a in range(n) for b in range(n) if a != b]))
        c = draw(st.integers(1, p - 1))
        sigma = _elementary(p, n, i, j, c) @ sigma @ _elementary(p, n, i, j, -c)
    return CyclicGroupModule(order, sigma)


def test_trivial_module_over_its_prime():
    for p in (2, 3, 5):
        assert set(tate_dims(CyclicGroupModule.trivial(p, p)).values()) == {1}


def test_free_module_is_tate_acyclic():
    assert set(tate_dims(CyclicGroupModule.regular(3, 3, copies=2)).values()) == {0}


def test_coprime_order_vanishes():
    assert set(tate_dims(CyclicGroupModule.trivial(5, 3)).values()) == {0}


def test_homology_of_trivial_module():
    h = tate_dims(CyclicGroupModule.trivial(3, 3), TateKind.HOMOLOGY, range(0, 5))
    assert h == {n: 1 for n in range(0, 5)}


@settings(max_examples=50, deadline=None)
@given(modules())
def test_agrees_with_oracle(M):
    brute = brute_group_homology(M.order, M.sigma, 4)
    assert tate_dims(M, TateKind.TATE, range(-4, 5)) == brute["tate"]
    h = tate_dims(M, TateKind.HOMOLOGY, range(1, 5))
    assert h == {i: brute["homology"][i] for i in range(1, 5)}


@settings(max_examples=30, deadline=None)
@given(modules(orders=(2, 3)), st.integers(1, 3))
def test_extended_complex_matches(M, k):
    ambient = M.order * k
    plain = tate_dims(M, TateKind.TATE, range(-3, 4))
    assert extended_tate_dims(M.order, ambient, M, range(-3, 4)) == plain


@settings(max_examples=30, deadline=None)
@given(modules())
def test_tate_is_two_periodic(M):
    t = tate_dims(M, TateKind.TATE, range(-4, 5))
    assert all(t[n] == t[n + 2] for n in range(-4, 3))


def test_norm_of_regular_module_has_rank_one():
    R = CyclicGroupModule.regular(3, 3)
    assert norm_map(R.sigma, 3).rank() == 1


def test_sigma_of_wrong_order_rejected():
    with pytest.raises(ValueError):
        CyclicGroupModule.permutation(3, 2, [1, 2, 0])


def test_expansion_window():
    K = build_K(CyclicGroupModule.trivial(3, 3))
    per = periodic_expand(K, Expansion.PER, (-2, 2))
    assert per.complex.dim(0) > 0


@settings(max_examples=30, deadline=None)
@given(modules())
def test_periodic_expansions_agree_on_modules(M):
    # a module is bounded, so u-completion in either direction changes nothing
    d = [tate_dims(M, k, range(-3, 4)) for k in (TateKind.TATE, TateKind.COTATE, TateKind.POLY)]
    assert d[0] == d[1] == d[2]


def test_tightness():
    assert is_tight(CyclicGroupModule.trivial(3, 3)).tight
    assert is_tight(CyclicGroupModule.regular(3, 3)).tight
    eps = epsilon_maps(CyclicGroupModule.trivial(5, 5), 5)
    assert eps.odd_iso
