"""Verification suites behind ``cyclohom verify``.

Each suite returns a SuiteResult made of named checks.  A check is "pass",
"fail" or "unstable" (a tower did not stabilize inside its budget).
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import oracle
from .complex_engine import ChainComplex, ComplexError
from .config import StabilizationPolicy
from .conjugate_frobenius import conjugate_e1, conjugate_pages, psi_check, psi_constant
from .cyclic_group_tate import (
    CyclicGroupModule,
    build_K,
    extended_tate_dims,
    tate_dims,
)
from .cyclic_objects import (
    build_anat,
    check_cyclic_relations,
    corpus,
    edgewise,
    ground_field,
    matrix_algebra,
    product,
    truncated_poly,
)
from .gf_linalg import PrimeFieldMatrix
from .periodic_homology import (
    PERIODIC_POLICY,
    PRODUCT_POLICY,
    build_tsygan,
    compare_5dia,
    hc_dims,
    hpbar_dims,
    row_schedule,
)

PASS, FAIL, UNSTABLE = "pass", "fail", "unstable"


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)

    def add(self, label: str, status, detail=None):
        if status is True:
            status = PASS
        elif status is False:
            status = FAIL
        self.checks.append({"check": label, "status": status, "detail": detail})

    @property
    def status(self) -> str:
        seen = {c["status"] for c in self.checks}
        if FAIL in seen:
            return FAIL
        if UNSTABLE in seen:
            return UNSTABLE
        return PASS

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        return {"suite": self.name, "status": self.status, "checks": self.checks}


# ---------------------------------------------------------------------------
# structural relations

def relations(primes=(2, 3, 5), depth: int = 3, **_) -> SuiteResult:
    res = SuiteResult("relations")
    for p in primes:
        for name, A in corpus(p).items():
            E = build_anat(A, depth)
            rep = check_cyclic_relations(E)
            res.add(f"F_{p} {name}: cyclic relations ({rep.checked} identities)", rep.ok,
                    rep.failures[:3] or None)
            try:
                build_tsygan(E, (-2, 3), depth)
                res.add(f"F_{p} {name}: Tsygan lattice d^2 = 0", True)
            except ComplexError as exc:
                res.add(f"F_{p} {name}: Tsygan lattice d^2 = 0", False, str(exc))
            ok, why = True, None
            for m in range(depth + 1):
                sd = E.rot_matrix(m).scale(E.dagger_sign(m))
                try:
                    build_K(CyclicGroupModule(E.order(m), sd))
                except (ComplexError, ValueError) as exc:
                    ok, why = False, f"level {m}: {exc}"
                    break
            res.add(f"F_{p} {name}: B^2 = 0 and dB + Bd = 0 on every level", ok, why)
        W = edgewise(build_anat(ground_field(p), 2 * p - 1), p, 1)
        rep = check_cyclic_relations(W)
        res.add(f"F_{p}: relations of the edgewise subdivision", rep.ok, rep.failures[:3] or None)
    return res


# ---------------------------------------------------------------------------
# Tate homology

def tate(primes=(2, 3, 5), **_) -> SuiteResult:
    res = SuiteResult("tate")
    degrees = range(-4, 5)
    for p in primes:
        triv = CyclicGroupModule.trivial(p, p)
        dims = tate_dims(triv, degrees=degrees)
        res.add(f"p={p}: trivial F_p over Z/{p} has dim 1 in [-4,4]",
                all(v == 1 for v in dims.values()), dims)
        free = CyclicGroupModule.regular(p, p, 2)
        dims = tate_dims(free, degrees=degrees)
        res.add(f"p={p}: free module gives 0", not any(dims.values()), dims)
        other = 3 if p != 3 else 2
        dims = tate_dims(CyclicGroupModule.trivial(p, other), degrees=degrees)
        res.add(f"p={p}: trivial module over Z/{other} gives 0", not any(dims.values()), dims)
        for ambient in (p, 2 * p, 3 * p):
            ext = extended_tate_dims(p, ambient, triv, degrees)
            plain = tate_dims(triv, degrees=degrees)
            res.add(f"p={p}: extended complex for Z/{p} in Z/{ambient} matches", ext == plain, ext)
        samples = [
            CyclicGroupModule.permutation(p, p, [(j + 1) % p for j in range(p)]),
            CyclicGroupModule.trivial(p, p, 2),
            # a single Jordan block: a non-split extension of k by k
            CyclicGroupModule(p, PrimeFieldMatrix(p, 2, 2, {(0, 0): 1, (0, 1): 1, (1, 1): 1})),
        ]
        for k, M in enumerate(samples):
            ours = tate_dims(M, degrees=degrees)
            brute = oracle.brute_group_homology(p, M.sigma, 4)["tate"]
            res.add(f"p={p}: oracle agrees on module #{k} (dim {M.dim})", ours == brute,
                    {"main": ours, "oracle": brute})
    return res


# ---------------------------------------------------------------------------
# tensor powers

def random_complexes(seed: int = 0, count: int = 50):
    """Seeded sample of (p, kind, dims, differential entries) descriptions."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        p = 3 if k % 2 == 0 else 5
        if k % 4 < 2:
            out.append((p, "module", (rng.randint(1, 4),), {}))
        else:
            if p == 3:
                a, b = rng.randint(1, 3), rng.randint(1, 3)
            else:
                # keep the 5-th tensor power small: total dimension at most 4
                a = rng.randint(1, 2)
                b = rng.randint(1, 4 - a)
            ents = {(i, j): rng.randrange(p) for i in range(a) for j in range(b)}
            out.append((p, "complex", (a, b), ents))
    return out


def build_sample(desc) -> ChainComplex:
    p, kind, dims, ents = desc
    if kind == "module":
        return ChainComplex.build(p, {0: dims[0]}, {}, 0, 0)
    a, b = dims
    return ChainComplex.build(p, {0: a, 1: b}, {1: PrimeFieldMatrix(p, a, b, ents)}, 0, 1)


def _psi_one(args):
    desc, seed = args
    rep = psi_check(build_sample(desc), desc[0], seed=seed)
    return rep.as_dict()


def tensor(seed: int = 0, count: int = 50, threads: int = 1, **_) -> SuiteResult:
    res = SuiteResult("tensor")
    descs = random_complexes(seed, count)
    jobs = [(d, seed + i) for i, d in enumerate(descs)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            reports = list(ex.map(_psi_one, jobs))
    else:
        reports = [_psi_one(j) for j in jobs]
    consts: dict = {}
    for (p, kind, dims, _), rep in zip(descs, reports):
        label = f"p={p} {kind} dims {list(dims)}"
        res.add(f"{label}: tight, psi additive and bijective, degree law",
                rep["tight"] and rep["iso"] and rep["additive"] and rep["degree_law"],
                rep["violations"][:2] or rep["I_dims"])
        if rep["constant"] is not None:
            consts.setdefault(p, set()).add(rep["constant"])
            res.add(f"{label}: a from M equals the probe and psi = a^m psi~ is a chain map",
                    rep["constant"] == rep["probe_constant"] and rep["chain_map"] is True,
                    {"a": rep["constant"], "probe": rep["probe_constant"]})
    for p in (3, 5):
        by_basis = {s: psi_constant(p, s) for s in range(1, p)}
        res.add(f"p={p}: probe constant independent of the probe basis",
                len(set(by_basis.values())) == 1, by_basis)
        res.add(f"p={p}: constants from {len(consts.get(p, ()))} random complexes agree",
                consts.get(p, {psi_constant(p)}) == {psi_constant(p)}, sorted(consts.get(p, [])))
    return res


# ---------------------------------------------------------------------------
# Morita invariance, the comparison diagram, edgewise subdivision

def _dims_status(r):
    return PASS if r.stabilized else UNSTABLE


def morita(p: int = 3, policy: StabilizationPolicy | None = None, **_) -> SuiteResult:
    res = SuiteResult("morita")
    degrees = range(-2, 3)
    a = hpbar_dims(ground_field(p), degrees, policy)
    b = hpbar_dims(matrix_algebra(2, p), degrees, policy)
    # the reduced model is exact in the column direction; the row depth is the budget
    E = build_anat(matrix_algebra(2, p), 0)
    deepest = max(row_schedule(E, len(c.stage_dims) - 1 + c.lookahead) for c in b.certificates.values())
    detail = {"F_p": a.as_dict()["dims"], "M_2(F_p)": b.as_dict()["dims"],
              "stable from stage": {n: b.certificates[n].stage for n in b.certificates},
              "deepest row": deepest}
    if not (a.stabilized and b.stabilized):
        res.add("HP-bar(M_2(F_p)) = HP-bar(F_p) on [-2,2]", UNSTABLE, detail)
    else:
        res.add("HP-bar(M_2(F_p)) = HP-bar(F_p) on [-2,2]", a.dims == b.dims, detail)
    return res


def comparison(p: int = 3, policy: StabilizationPolicy | None = None,
               hp_policy: StabilizationPolicy | None = None, names=None, **_) -> SuiteResult:
    res = SuiteResult("comparison")
    policy = policy or PERIODIC_POLICY.with_max_stages(3)
    hp_policy = hp_policy or PRODUCT_POLICY.with_max_stages(4)
    algebras = corpus(p)
    # matrix2 and group3 give the same structural verdicts at far higher cost
    names = names or ["field", "square", "dual", "exterior"]
    for name in names:
        A = algebras[name]
        rep = compare_5dia(A, range(-2, 3), policy, hp_policy)
        wanted = ("l", "r", "R") if A.degree_zero else ("r", "R")
        for m in wanted:
            v = rep.maps[m]
            res.add(f"{name}: {m} is an isomorphism", v.iso is True, v.reason)
    return res


def edgewise_suite(p: int = 3, degrees=range(0, 4), **_) -> SuiteResult:
    res = SuiteResult("edgewise")
    for A in (ground_field(p), truncated_poly(2, p)):
        top = max(degrees) + 1
        W = edgewise(build_anat(A, p * (top + 1) - 1), p, top)
        a = hc_dims(W, degrees).dims
        b = hc_dims(A, degrees).dims
        res.add(f"{A.name or 'A'}: HC(i_{p}^* A-natural) = HC(A-natural) in degrees "
                f"{min(degrees)}..{max(degrees)}", a == b, {"edgewise": a, "plain": b})
    return res


# ---------------------------------------------------------------------------
# the conjugate spectral sequence

def conjugate(p: int = 3, policy: StabilizationPolicy | None = None, rows: int = 6, **_) -> SuiteResult:
    res = SuiteResult("conjugate")
    degrees = list(range(-2, 3))
    F = ground_field(p)
    for name, A in (("F_p", F), ("F_p x F_p", product(F, F)), ("M_2(F_p)", matrix_algebra(2, p))):
        e1 = conjugate_e1(A, p, degrees, (-1, 1))
        hp = hpbar_dims(A, degrees, policy)
        totals = {n: e1.total(n) for n in degrees}
        detail = {"E1": totals, "HP-bar": {n: hp.value(n) for n in degrees}}
        if not hp.stabilized:
            res.add(f"{name}: E_1 totals equal HP-bar", UNSTABLE, detail)
        else:
            res.add(f"{name}: E_1 totals equal HP-bar", totals == hp.dims, detail)
    A = truncated_poly(2, p)
    e1 = conjugate_e1(A, p, degrees, (-1, 2))
    hp = hpbar_dims(A, degrees, policy)
    for n in degrees:
        v = hp.value(n)
        detail = {"E1 window": e1.total(n), "HP-bar": v}
        if not hp.certificates[n].stabilized:
            res.add(f"dual numbers: window E_1 >= HP-bar in degree {n}", UNSTABLE, detail)
        else:
            res.add(f"dual numbers: window E_1 >= HP-bar in degree {n}", e1.total(n) >= v, detail)
    P = conjugate_pages(A, p, 1, degrees, rows=rows, step=2)
    res.add("dual numbers: pages are u-periodic and monotone in r", P.periodic and P.monotone)
    inf0 = P.total(0)
    detail = {"E_inf total (resolved columns)": inf0, "HP-bar_0": hp.value(0),
              "pages stable in rows": P.stabilized}
    if not (P.stabilized and hp.certificates[0].stabilized):
        res.add("dual numbers: E_inf sums to HP-bar in degree 0", UNSTABLE, detail)
    else:
        res.add("dual numbers: E_inf sums to HP-bar in degree 0", inf0 == hp.dims[0], detail)
    return res


SUITES = {
    "relations": relations,
    "tate": tate,
    "tensor": tensor,
    "morita": morita,
    "comparison": comparison,
    "edgewise": edgewise_suite,
    "conjugate": conjugate,
}


def run_suite(name: str, **kwargs) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(**kwargs)
