import pytest
from hypothesis import given, settings, strategies as st

from cyclohom.config import StabilizationPolicy
from cyclohom.cyclic_objects import build_anat, builder, corpus, ground_field, product
from cyclohom.periodic_homology import (
    PERIODIC_POLICY,
    StandardFiltrationIndex,
    build_tsygan,
    compare_5dia,
    cp_poly_dims,
    hc_dims,
    hh_dims,
    hp_dims,
    hpbar_dims,
    restricted_dims,
)
from cyclohom.oracle import bar_hh_dims, direct_hc_dims, direct_hpbar_window

DEG = range(-2, 3)
ALT = {n: 1 if n % 2 == 0 else 0 for n in DEG}


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.sampled_from(["field", "truncpoly:2", "group:2", "product:field+field"]))
def test_hh_matches_bar_complex(p, shorthand):
    A = builder(shorthand, p)
    assert hh_dims(A, range(0, 4)).dims == bar_hh_dims(A, 3)


@pytest.mark.parametrize("name", ["field", "dual", "square", "exterior"])
def test_hc_matches_direct_quotient(name):
    A = corpus(3)[name]
    assert hc_dims(A, range(0, 4)).dims == direct_hc_dims(A, 3)


def test_hc_methods_agree():
    A = corpus(3)["dual"]
    assert hc_dims(A, range(0, 3), method="reduced").dims == hc_dims(A, range(0, 3), method="direct").dims


def test_hc_of_field_alternates():
    assert hc_dims(ground_field(5), range(0, 5)).dims == {0: 1, 1: 0, 2: 1, 3: 0, 4: 1}


def test_hc_unknown_method():
    with pytest.raises(ValueError):
        hc_dims(ground_field(3), method="magic")


@pytest.mark.parametrize("p", [2, 3, 5])
def test_hp_of_ground_field(p):
    r = hp_dims(ground_field(p), DEG)
    assert r.stabilized and r.dims == ALT
    assert all(c.stabilized for c in r.certificates.values())


@pytest.mark.parametrize("p", [2, 3])
def test_hpbar_of_ground_field(p):
    r = hpbar_dims(ground_field(p), DEG)
    assert r.stabilized and r.dims == ALT


def test_hpbar_within_direct_bounds():
    A = ground_field(3)
    lo, hi = direct_hpbar_window(A, 0, rows=8)
    assert lo <= hpbar_dims(A, [0]).value(0) <= hi


def test_cp_and_restricted_of_field():
    A = ground_field(3)
    assert cp_poly_dims(A, DEG).dims == ALT
    assert restricted_dims(A, "CPf", DEG).dims == ALT
    with pytest.raises(ValueError):
        restricted_dims(A, "CPx", DEG)


def test_tight_budget_gives_bounds():
    r = hpbar_dims(corpus(3)["dual"], DEG, PERIODIC_POLICY.with_max_stages(3))
    assert not r.stabilized
    for n in DEG:
        v = r.value(n)
        assert isinstance(v, tuple) and v[0] <= v[1]


def test_snake_pattern_of_ground_field():
    # the lattice of the constant functor: N multiplies by m + 1 on even rows,
    # 1 - sigma by 2 on odd rows, and b, b' alternate between 1 and 0
    p = 5
    W = build_tsygan(ground_field(p), (-2, 1), 8)
    L = W.lattice
    scalar = lambda M: M.column(0).get(0, 0)
    for m in range(9):
        if m % 2 == 0:
            assert scalar(L.horizontal(0, m)) == (m + 1) % p
            assert scalar(L.horizontal(1, m)) == 0
        else:
            assert scalar(L.horizontal(0, m)) == 0
            assert scalar(L.horizontal(1, m)) == 2
        if m >= 1:
            assert scalar(L.vertical(0, m)) == (1 if m % 2 == 0 else 0)
            assert scalar(L.vertical(1, m)) == (0 if m % 2 == 0 else 1)


def test_tsygan_window_checks_relations():
    W = build_tsygan(corpus(3)["dual"], (-2, 3), 3)
    assert W.cell_dim(0, 2) == 8


def test_standard_filtration_index():
    f = StandardFiltrationIndex(3)
    assert f(0, 0, 0) == 1
    assert f(5, 2, 0) == -1
    assert f(0, 0, 3) == 0
    assert f(0, 0, 1) == 0


def test_compare_certifies_bounded_maps():
    pol = PERIODIC_POLICY.with_max_stages(3)
    rep = compare_5dia(ground_field(3), DEG, pol, StabilizationPolicy(3, 4, 0))
    for m in ("l", "r", "R"):
        assert rep.maps[m].iso is True


def test_additivity_of_hc():
    F = ground_field(3)
    FF = product(F, F)
    assert hc_dims(FF, range(0, 4)).dims == {n: 2 * v for n, v in hc_dims(F, range(0, 4)).dims.items()}


def test_module_input_accepted():
    E = build_anat(ground_field(3), 3)
    assert hh_dims(E, range(0, 3)).dims == {0: 1, 1: 0, 2: 0}
