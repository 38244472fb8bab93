import pytest
from hypothesis import given, settings, strategies as st

from cyclohom.complex_engine import (
    BicomplexWindow,
    ChainComplex,
    ChainMap,
    ComplexError,
    FilteredComplex,
    MixedComplex,
    Tower,
    certify,
    cone,
    h_trunc,
    homology_dims,
    ss_page,
    stabilized_homology,
    total,
    truncate,
)
from cyclohom.config import StabilizationPolicy
from cyclohom.gf_linalg import PrimeFieldMatrix, rref


@st.composite
def complexes(draw):
    """C_2 -> C_1 -> C_0 with d^2 = 0 by construction."""
    p = draw(st.sampled_from([2, 3, 5]))
    n0, n1, n2 = (draw(st.integers(0, 4)) for _ in range(3))
    ents = {(i, j): draw(st.integers(0, p - 1)) for i in range(n0) for j in range(n1)}
    d1 = PrimeFieldMatrix(p, n0, n1, ents)
    ker = rref(d1)[1].vectors()
    cols = []
    for _ in range(n2):
        v = {}
        for k in ker:
            c = draw(st.integers(0, p - 1))
            for i, x in k.items():
                v[i] = (v.get(i, 0) + c * x) % p
        cols.append(v)
    d2 = PrimeFieldMatrix.from_columns(p, n1, cols) if n2 else PrimeFieldMatrix(p, n1, 0)
    return ChainComplex.build(p, {0: n0, 1: n1, 2: n2}, {1: d1, 2: d2}, 0, 2)


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_euler_characteristic(C):
    h = homology_dims(C)
    assert sum((-1) ** n * h[n] for n in h) == sum((-1) ** n * C.dim(n) for n in C.degrees())


@settings(max_examples=40, deadline=None)
@given(complexes())
def test_cone_of_identity_is_acyclic(C):
    ident = ChainMap(C, C, {n: PrimeFieldMatrix.identity(C.p, C.dim(n)) for n in C.degrees()}).check()
    assert all(v == 0 for v in homology_dims(cone(ident)).values())


@settings(max_examples=40, deadline=None)
@given(complexes(), st.data())
def test_spectral_sequence_converges(C, data):
    fdeg = {n: [data.draw(st.integers(0, 2)) for _ in range(C.dim(n))] for n in C.degrees()}
    # a basis-vector filtration is only a subcomplex filtration when d respects it
    FC = FilteredComplex.from_degrees(C, fdeg)
    try:
        FC.check()
    except ComplexError:
        FC = FilteredComplex.trivial(C)
    h = homology_dims(C)
    for n in C.degrees():
        total_inf = sum(ss_page(FC, 5, i, n) for i in range(FC.f_lo, FC.f_hi + 1))
        assert total_inf == h[n]
        # E_1 bounds E_inf from above
        assert sum(ss_page(FC, 1, i, n) for i in range(FC.f_lo, FC.f_hi + 1)) >= h[n]


def test_ss_rejects_page_zero():
    C = ChainComplex.build(3, {0: 1})
    with pytest.raises(ValueError):
        ss_page(FilteredComplex.trivial(C), 0, 0, 0)


def test_build_rejects_nonzero_square():
    d1 = PrimeFieldMatrix(3, 1, 1, {(0, 0): 1})
    d2 = PrimeFieldMatrix(3, 1, 1, {(0, 0): 1})
    with pytest.raises(ComplexError):
        ChainComplex.build(3, {0: 1, 1: 1, 2: 1}, {1: d1, 2: d2})


def test_build_rejects_bad_shape():
    with pytest.raises(ComplexError):
        ChainComplex.build(3, {0: 1, 1: 2}, {1: PrimeFieldMatrix(3, 2, 2, {(0, 0): 1})})


def test_mixed_complex_check():
    C = ChainComplex.build(3, {0: 1, 1: 1})
    B = PrimeFieldMatrix(3, 1, 1, {(0, 0): 1})
    MixedComplex(C, {0: B}).check()
    D = ChainComplex.build(3, {0: 1, 1: 1, 2: 1}, {2: PrimeFieldMatrix(3, 1, 1, {(0, 0): 1})})
    with pytest.raises(ComplexError):
        MixedComplex(D, {0: B, 1: B}).check()


def test_bicomplex_total_homology():
    # two squares of identities anticommuting: total complex acyclic
    one = PrimeFieldMatrix.identity(5, 1)
    B = BicomplexWindow(one.field, 0, 1, 0, 1, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1},
                        {(1, 0): one, (1, 1): one}, {(0, 1): one, (1, 1): -one}).check()
    assert set(homology_dims(total(B)).values()) == {0}


def test_truncations_of_trivial_filtration():
    # with F^0 = everything and F^1 = 0, tau^n / beta^n is H_n placed in degree n
    d1 = PrimeFieldMatrix(3, 1, 2, {(0, 0): 1})
    C = ChainComplex.build(3, {0: 1, 1: 2}, {1: d1})
    FC = FilteredComplex.trivial(C)
    for n in (0, 1):
        Q = h_trunc(FC, n).base
        assert homology_dims(Q)[n] == homology_dims(C)[n]
        assert sum(homology_dims(Q).values()) == homology_dims(C)[n]
    assert truncate(FC, "tau", 5).base.dim(1) == 0
    with pytest.raises(ValueError):
        truncate(FC, "gamma", 0)


def test_certify_constant_tower():
    pol = StabilizationPolicy(steps=3, max_stages=6)
    cert = certify(lambda s: 2, lambda s, t: 2, pol)
    assert cert.stabilized and cert.dim == 2 and cert.stage == 1


def test_certify_growing_tower_reports_bounds():
    pol = StabilizationPolicy(steps=3, max_stages=5)
    cert = certify(lambda s: s, lambda s, t: min(s, t), pol)
    assert not cert.stabilized and cert.dim is None
    assert cert.bounds[0] <= cert.bounds[1]


def test_certify_without_observations_has_no_bounds():
    pol = StabilizationPolicy(steps=3, max_stages=2, lookahead=2)
    cert = certify(lambda s: 1, lambda s, t: 1, pol)
    assert not cert.stabilized and cert.bounds is None


def test_lookahead_discards_transient_classes():
    # each stage has one class that dies in the next stage, plus one stable class
    pol0 = StabilizationPolicy(steps=3, max_stages=6, lookahead=0)
    pol1 = StabilizationPolicy(steps=3, max_stages=6, lookahead=1)
    dims = lambda s: 1 + (s % 2)
    rank = lambda s, t: dims(s) if s == t else 1
    assert not certify(dims, rank, pol0).stabilized
    cert = certify(dims, rank, pol1)
    assert cert.stabilized and cert.dim == 1


def test_stabilized_homology_of_inclusion_tower():
    p = 3
    stages = [ChainComplex.build(p, {0: k + 1}, {}, 0, 0) for k in range(2)]
    stages += [stages[-1]] * 4
    maps = []
    for a, b in zip(stages, stages[1:]):
        m = PrimeFieldMatrix(p, b.dim(0), a.dim(0), {(i, i): 1 for i in range(a.dim(0))})
        maps.append(ChainMap(a, b, {0: m}))
    cert = stabilized_homology(Tower(stages, maps), 0, StabilizationPolicy(steps=3, max_stages=6))
    assert cert.stabilized and cert.dim == 2
