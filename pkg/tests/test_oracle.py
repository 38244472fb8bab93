import pytest
from hypothesis import given, settings, strategies as st

from cyclohom.cyclic_objects import builder, corpus, ground_field, product
from cyclohom.gf_linalg import PrimeFieldMatrix
from cyclohom.oracle import (
    OracleBudget,
    bar_hh_dims,
    brute_group_homology,
    direct_hc_dims,
    direct_hpbar_window,
    small_resolution_hh,
)
from cyclohom.periodic_homology import hpbar_dims


def test_bar_examples():
    assert bar_hh_dims(ground_field(3), 3) == {0: 1, 1: 0, 2: 0, 3: 0}
    assert bar_hh_dims(corpus(3)["dual"], 3) == {0: 2, 1: 1, 2: 1, 3: 1}
    F = ground_field(3)
    assert bar_hh_dims(product(F, F), 2) == {0: 2, 1: 0, 2: 0}


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(2, 3))
def test_bar_matches_small_resolution(p, n):
    # two independent paths for F_p[x]/x^n
    assert bar_hh_dims(builder(f"truncpoly:{n}", p), 3) == small_resolution_hh(n, p, 3)


def test_bar_budget():
    with pytest.raises(OracleBudget):
        bar_hh_dims(corpus(3)["matrix2"], 8, max_dim=1000)


def test_group_oracle_examples():
    triv = PrimeFieldMatrix.identity(3, 1)
    assert set(brute_group_homology(3, triv, 4)["tate"].values()) == {1}
    reg = PrimeFieldMatrix(3, 3, 3, {((j + 1) % 3, j): 1 for j in range(3)})
    assert set(brute_group_homology(3, reg, 4)["tate"].values()) == {0}
    assert set(brute_group_homology(2, triv, 4)["tate"].values()) == {0}


def test_group_oracle_rejects_wrong_order():
    swap = PrimeFieldMatrix(3, 2, 2, {(0, 1): 1, (1, 0): 1})
    with pytest.raises(ValueError):
        brute_group_homology(3, swap, 2)


def test_direct_hpbar_examples():
    assert direct_hpbar_window(ground_field(3), 0, rows=10) == (1, 1)
    assert direct_hpbar_window(ground_field(3), 0, rows=-1) == (0, 0)


def test_direct_hpbar_brackets_tower():
    A = corpus(3)["dual"]
    lo, hi = direct_hpbar_window(A, 0, rows=8)
    v = hpbar_dims(A, [0]).value(0)
    t_lo, t_hi = v if isinstance(v, tuple) else (v, v)
    assert lo <= hi
    # the two bracketings overlap
    assert max(lo, t_lo) <= min(hi, t_hi)


def test_direct_hc_of_field():
    assert direct_hc_dims(ground_field(5), 3) == {0: 1, 1: 0, 2: 1, 3: 0}


def test_oracle_shares_only_linear_algebra():
    import ast
    import inspect

    import cyclohom.oracle as oracle
    tree = ast.parse(inspect.getsource(oracle))
    mods = {n.module for n in ast.walk(tree) if isinstance(n, ast.ImportFrom) and n.level}
    assert mods <= {"gf_linalg"}
