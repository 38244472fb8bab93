import pytest
from hypothesis import given, settings, strategies as st

from cyclohom.complex_engine import homology_dims
from cyclohom.cyclic_objects import (
    AlgebraError,
    build_algebra,
    build_anat,
    builder,
    check_cyclic_relations,
    corpus,
    diagonal_bimodule,
    edgewise,
    free_bimodule,
    hoch_coeff,
    restrict_j,
)

SHORTHANDS = ["field", "truncpoly:2", "truncpoly:3", "group:2", "group:3", "matrix:2",
              "exterior", "product:field+truncpoly/2"]


def dual_data(p=3):
    return {"p": p, "basis": ["1", "x"], "degrees": {"1": 0, "x": 0}, "unit": "1",
            "mul": [["1", "1", "1", 1], ["1", "x", "x", 1], ["x", "1", "x", 1]]}


def test_dual_numbers_from_json_spec():
    A = build_algebra(dual_data())
    assert A.dim == 2 and A.p == 3
    assert A.product(1, 1) == {}


def test_builder_in_spec():
    assert build_algebra({"p": 5, "builder": "matrix:2"}).dim == 4


def test_unknown_label_reported():
    data = dual_data()
    data["mul"].append(["x", "z", "x", 1])
    with pytest.raises(AlgebraError) as info:
        build_algebra(data)
    assert any("'z'" in v for v in info.value.violations)


def test_missing_unit():
    data = dual_data()
    del data["unit"]
    with pytest.raises(AlgebraError):
        build_algebra(data)


def test_non_associative_rejected():
    data = dual_data()
    data["basis"].append("y")
    data["degrees"]["y"] = 0
    data["mul"] += [["1", "y", "y", 1], ["y", "1", "y", 1], ["x", "y", "1", 1]]
    with pytest.raises(AlgebraError):
        build_algebra(data)


def test_leibniz_violation_rejected():
    data = {"p": 3, "basis": ["1", "x"], "degrees": {"1": 0, "x": 1}, "unit": "1",
            "mul": [["1", "1", "1", 1], ["1", "x", "x", 1], ["x", "1", "x", 1]],
            "diff": [["1", "x", 1]]}
    with pytest.raises(AlgebraError):
        build_algebra(data)


def test_bad_characteristic():
    with pytest.raises(AlgebraError):
        build_algebra({"p": 4, "builder": "field"})


def test_unknown_builder():
    with pytest.raises(AlgebraError):
        builder("quaternion", 3)


def test_corpus_contents():
    C = corpus(3)
    assert set(C) == {"field", "dual", "square", "matrix2", "group3", "exterior"}
    assert C["square"].dim == 2 and C["matrix2"].dim == 4


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.sampled_from(SHORTHANDS))
def test_cyclic_relations_hold(p, shorthand):
    A = builder(shorthand, p)
    top = 3 if A.dim <= 2 else 2
    rep = check_cyclic_relations(build_anat(A, top))
    assert rep.ok, rep.failures[:3]
    assert rep.checked > 0


@pytest.mark.parametrize("p", [2, 3])
def test_edgewise_relations(p):
    A = builder("truncpoly:2", p)
    W = edgewise(build_anat(A, p * 3 - 1), p, 2)
    assert check_cyclic_relations(W, 2).ok


def test_edgewise_needs_word_module():
    with pytest.raises(TypeError):
        edgewise(object(), 3)


def test_restriction_sigma_has_order_level():
    A = builder("truncpoly:2", 3)
    W = edgewise(build_anat(A, 8), 3, 2)
    R = restrict_j(W)
    assert R.order == 3


@pytest.mark.parametrize("shorthand", ["field", "truncpoly:2", "group:2"])
def test_free_coefficients_are_acyclic(shorthand):
    A = builder(shorthand, 3)
    M = free_bimodule(A)
    assert not M.check()
    h = homology_dims(hoch_coeff(A, M, 1, 3).ch_complex())
    assert h[0] == A.dim
    assert h[1] == h[2] == 0


def test_diagonal_coefficients_give_hochschild():
    A = builder("truncpoly:2", 3)
    D = diagonal_bimodule(A)
    assert not D.check()
    h = homology_dims(hoch_coeff(A, D, 1, 3).ch_complex())
    assert [h[n] for n in range(3)] == [2, 1, 1]
