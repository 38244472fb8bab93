import pytest
from hypothesis import given, settings, strategies as st

from cyclohom.complex_engine import ChainComplex
from cyclohom.cyclic_group_tate import CyclicGroupModule
from cyclohom.cyclic_objects import corpus, ground_field, product
from cyclohom.conjugate_frobenius import (
    FrobeniusTwistTag,
    I_dims,
    NotTight,
    TensorPower,
    adaptedness_check,
    conjugate_e1,
    conjugate_pages,
    invariant_complex,
    psi_check,
    psi_constant,
)
from cyclohom.gf_linalg import PrimeFieldMatrix


@st.composite
def small_complexes(draw, primes=(3,)):
    p = draw(st.sampled_from(primes))
    a = draw(st.integers(1, 2))
    if draw(st.booleans()):
        return ChainComplex.build(p, {0: a}, {}, 0, 0)
    b = draw(st.integers(1, 2))
    ents = {(i, j): draw(st.integers(0, p - 1)) for i in range(a) for j in range(b)}
    return ChainComplex.build(p, {0: a, 1: b}, {1: PrimeFieldMatrix(p, a, b, ents)}, 0, 1)


@settings(max_examples=15, deadline=None)
@given(small_complexes())
def test_psi_on_random_complexes(M):
    rep = psi_check(M)
    assert rep.ok, rep.violations
    assert rep.I_dims == {n: M.dim(n) for n in M.degrees() if M.dim(n)}


def test_psi_over_f5_module():
    rep = psi_check(ChainComplex.build(5, {0: 2}, {}, 0, 0))
    assert rep.ok and rep.I_dims == {0: 2}


def test_constants():
    assert psi_constant(3) == 2
    assert psi_constant(5) == 3
    # independent of the probe
    assert psi_constant(3, 2) == psi_constant(3, 1)
    assert psi_constant(5, 2) == psi_constant(5, 1)


def test_tensor_power_rotation_has_order_p():
    M = ChainComplex.build(3, {0: 1, 1: 1}, {1: PrimeFieldMatrix(3, 1, 1, {(0, 0): 1})}, 0, 1)
    T = TensorPower(M, 3)
    for w in (w for ws in T.words.values() for w in ws):
        sign, t = 1, w
        for _ in range(3):
            s, t = T._rotate(t)
            sign *= s
        assert t == w and sign == 1


def test_power_is_rotation_invariant():
    M = ChainComplex.build(3, {0: 2}, {}, 0, 0)
    T = TensorPower(M, 3)
    v = T.power(0, {0: 1, 1: 2})
    sigma = T.E.sig(0)
    assert sigma.apply(v) == v


def test_invariants_need_odd_p():
    E = CyclicGroupModule.trivial(2, 2).as_complex(0)
    with pytest.raises(ValueError):
        invariant_complex(E, 2)
    assert I_dims(E, 2).dims == {0: 1}


def test_not_tight_reports_witness():
    E = CyclicGroupModule.trivial(3, 3).as_complex(1)
    with pytest.raises(NotTight) as info:
        I_dims(E, 3)
    assert info.value.report.degrees[1]["support_ok"] is False


def test_regular_module_has_no_invariants():
    assert I_dims(CyclicGroupModule.regular(3, 3).as_complex(0), 3).dims == {0: 0}


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 50), min_size=4, max_size=4))
def test_frobenius_twist_is_identity_over_prime_field(p, vals):
    M = PrimeFieldMatrix(p, 2, 2, {(i // 2, i % 2): v for i, v in enumerate(vals)})
    assert FrobeniusTwistTag(p).matrix(M) == M


@pytest.mark.parametrize("name", ["field", "dual", "exterior"])
def test_adaptedness(name):
    rep = adaptedness_check(corpus(3)[name], 3, 1)
    assert rep.ok, rep.failures


def test_adaptedness_rejects_wrong_prime():
    with pytest.raises(ValueError):
        adaptedness_check(ground_field(5), 3, 1)


def test_e1_of_ground_field():
    e1 = conjugate_e1(ground_field(3), 3, range(-2, 3), (-1, 1))
    assert e1.kind == "HH"
    assert [e1.total(n) for n in range(-2, 3)] == [1, 0, 1, 0, 1]
    assert e1.table[(0, 0)] == 1 and e1.table[(1, -2)] == 1 and e1.table[(-1, 2)] == 1


def test_e1_at_two_uses_cyclic_homology():
    e1 = conjugate_e1(ground_field(2), 2, range(0, 2), (0, 0))
    assert e1.kind == "HC<eps>"
    assert e1.parts[(0, 0)] == {"u": 1, "eps": 0}
    assert e1.parts[(0, 1)] == {"u": 0, "eps": 1}


def test_pages_of_ground_field():
    P = conjugate_pages(ground_field(3), 3, 1, range(-1, 2), rows=6, step=2)
    assert P.periodic and P.monotone and P.stabilized
    assert P.total(0) == 1 and P.total(1) == 0


def test_pages_are_additive():
    F = ground_field(3)
    a = conjugate_pages(F, 3, 1, [0], rows=5)
    b = conjugate_pages(product(F, F), 3, 1, [0], rows=5)
    keep = [k for k in a.infinity if k[1] + 2 * k[0] <= 3]
    assert {k: 2 * a.infinity[k] for k in keep} == {k: b.infinity[k] for k in keep}
    assert b.total(0) == 2 * a.total(0)


def test_pages_need_odd_p():
    with pytest.raises(ValueError):
        conjugate_pages(ground_field(2), 2)
