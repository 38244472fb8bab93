"""Frobenius twist, tensor powers, the invariant functor I and the conjugate
spectral sequence.

For a complex M over F_p the p-th tensor power carries the cyclic
permutation action (with Koszul signs).  It is tight, and m -> m^(x)p
identifies the Frobenius twist of M with I(M^(x)p).  The differential of
I(E) comes from the Tate total complex of E filtered by the p-rescaled
stupid filtration: I(E) is tau^1 / beta^1 of that filtered complex, with
I(E)_m sitting in total degree m + 1.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .complex_engine import (
    ChainComplex,
    ComplexError,
    FilteredComplex,
    _tau_space,
    h_trunc_parts,
    ss_page,
)
from .cyclic_group_tate import (
    CyclicGroupComplex,
    Expansion,
    TightReport,
    build_K,
    is_tight,
    norm_map,
    periodic_expand,
)
from .cyclic_objects import AlgebraPresentation, build_anat, edgewise
from .gf_linalg import Echelon, PrimeFieldMatrix, Subspace, vec_axpy
from .periodic_homology import StandardFiltrationIndex, hc_dims, hh_dims
from .reduced import ReducedModel


class NotTight(ValueError):
    def __init__(self, report: TightReport):
        bad = {i: v for i, v in report.degrees.items()
               if not (v["eps_odd_iso"] and v["support_ok"])}
        super().__init__(f"complex is not tight; failing degrees {bad}")
        self.report = report
        self.witness = bad


# ---------------------------------------------------------------------------
# Frobenius twist

@dataclass(frozen=True)
class FrobeniusTwistTag:
    """Marks data as Frobenius twisted.  Over F_p, r -> r^p is the identity."""
    p: int

    def dims(self, table) -> dict:
        return dict(table)

    def matrix(self, M: PrimeFieldMatrix) -> PrimeFieldMatrix:
        return PrimeFieldMatrix(M.field, M.rows, M.cols,
                                {ij: pow(a, self.p, M.p) for ij, a in M.entries.items()})


# ---------------------------------------------------------------------------
# tensor powers

class TensorPower:
    """M^(x)p with the cyclic permutation moving the last factor to the front."""

    def __init__(self, M: ChainComplex, p: int):
        self.M = M
        self.p = p
        q = M.p
        basis = [(n, i) for n in M.degrees() for i in range(M.dim(n))]
        self.basis = basis
        self.bpos = {b: k for k, b in enumerate(basis)}
        by_deg: dict = {}
        for t in itertools.product(range(len(basis)), repeat=p):
            by_deg.setdefault(sum(basis[a][0] for a in t), []).append(t)
        self.words = by_deg
        self.index = {l: {t: k for k, t in enumerate(ws)} for l, ws in by_deg.items()}
        dims = {l: len(ws) for l, ws in by_deg.items()}
        sig, d = {}, {}
        for l, ws in by_deg.items():
            ents = {}
            for k, t in enumerate(ws):
                s, v = self._rotate(t)
                ents[(self.index[l][v], k)] = s
            sig[l] = PrimeFieldMatrix(q, len(ws), len(ws), ents)
            if l - 1 in by_deg:
                cols = [self._d_word(t) for t in ws]
                d[l] = PrimeFieldMatrix.from_columns(q, dims[l - 1],
                                                     [{self.index[l - 1][u]: c for u, c in col.items()}
                                                      for col in cols])
        lo, hi = (p * M.lo, p * M.hi) if dims else (0, 0)
        C = ChainComplex.build(q, dims, d, lo, hi)
        self.E = CyclicGroupComplex(p, C, sig)

    def _deg(self, a: int) -> int:
        return self.basis[a][0]

    def _rotate(self, t: tuple) -> tuple[int, tuple]:
        last = self._deg(t[-1])
        rest = sum(self._deg(a) for a in t[:-1])
        return (-1 if (last * rest) % 2 else 1), (t[-1],) + t[:-1]

    def _d_word(self, t: tuple) -> dict:
        M, q = self.M, self.M.p
        out: dict = {}
        before = 0
        for j, a in enumerate(t):
            n, i = self.basis[a]
            if n - 1 >= M.lo and M.dim(n - 1):
                sign = -1 if before % 2 else 1
                for i2, c in M.diff(n).column(i).items():
                    u = t[:j] + (self.bpos[(n - 1, i2)],) + t[j + 1:]
                    out[u] = (out.get(u, 0) + sign * c) % q
            before += n
        return {u: c for u, c in out.items() if c}

    def power(self, n: int, v) -> dict:
        """v^(x)p in degree p*n, v a vector of M_n."""
        q = self.M.p
        items = [(self.bpos[(n, i)], c) for i, c in v.items() if c % q]
        idx = self.index.get(self.p * n, {})
        out: dict = {}
        for combo in itertools.product(items, repeat=self.p):
            t = tuple(a for a, _ in combo)
            c = 1
            for _, x in combo:
                c = c * x % q
            k = idx[t]
            out[k] = (out.get(k, 0) + c) % q
        return {k: c for k, c in out.items() if c}


def _invariants_mod_norms(sigma: PrimeFieldMatrix, p: int):
    """(kernel of 1 - sigma as vectors, echelon of the norm image)."""
    one = PrimeFieldMatrix.identity(sigma.field, sigma.rows)
    z = Echelon(sigma.p, track=True).extend((one - sigma).columns())
    norms = Echelon(sigma.p).extend(norm_map(sigma, p).columns())
    return z.kernel, norms


# ---------------------------------------------------------------------------
# the complex I(E)

@dataclass
class InvariantComplex:
    """I(E) with I(E)_m = I(E_{pm}); diff[m] maps degree m to m - 1."""
    p: int
    dims: dict
    diff: dict
    _reducers: dict = field(repr=False, default_factory=dict)
    _place: object = field(repr=False, default=None)

    def class_of(self, m: int, v: dict) -> dict:
        """Coordinates in I(E)_m of an invariant vector v of E_{pm}."""
        if self.dims.get(m, 0) == 0:
            return {}
        return self._reducers[m + 1](self._place(m, v))

    def as_dict(self) -> dict:
        return {"dims": self.dims,
                "diff": {m: M.to_dense().tolist() for m, M in self.diff.items()}}


def invariant_complex(E: CyclicGroupComplex, p: int | None = None, check: bool = True) -> InvariantComplex:
    """I(E) for a tight complex of Z/p-modules, p odd."""
    p = E.field.p if p is None else p
    if p == 2:
        raise ValueError("the rescaled stupid filtration only yields a single complex I(E) for odd p")
    if check:
        rep = is_tight(E, p)
        if not rep.tight:
            raise NotTight(rep)
    C = E.complex
    m_lo, m_hi = -(-C.lo // p), C.hi // p
    K = build_K(E)
    X = periodic_expand(K, Expansion.POLY, (m_lo, m_hi + 2))
    fdeg = {}
    for N in X.complex.degrees():
        seq = []
        for _, j in X.cells.get(N, []):
            seq += [-((j - 1) // p)] * C.dim(j - 1) + [-(j // p)] * C.dim(j)
        fdeg[N] = seq
    FC = FilteredComplex.from_degrees(X.complex, fdeg)
    out, _, reducers = h_trunc_parts(FC, 1)
    dims = {m: out.dim(m + 1) for m in range(m_lo, m_hi + 1)}
    diff = {m: out.diff(m + 1) for m in range(m_lo + 1, m_hi + 1)}

    def place(m, v):
        # K1 block of the cell holding E_{pm} in total degree m + 1
        N, j = m + 1, p * m + 1
        off = 0
        for kk, jj in X.cells[N]:
            if jj == j:
                return {off + i: c for i, c in v.items()}
            off += K.base.dim(jj)
        raise ComplexError(f"no cell for E_{p * m} in total degree {N}")
    return InvariantComplex(p, dims, diff, reducers, place)


@dataclass
class IDims:
    p: int
    dims: dict
    diff: dict | None
    tight: TightReport

    def as_dict(self) -> dict:
        return {"p": self.p, "dims": self.dims,
                "diff": None if self.diff is None else
                {m: M.to_dense().tolist() for m, M in self.diff.items()},
                "tight": self.tight.as_dict()}


def I_dims(E: CyclicGroupComplex, p: int | None = None) -> IDims:
    p = E.field.p if p is None else p
    rep = is_tight(E, p)
    if not rep.tight:
        raise NotTight(rep)
    if p == 2:
        # degreewise only: I(E)_n = I(E_{2n})
        C = E.complex
        dims = {n: rep.degrees.get(2 * n, {}).get("I") or 0
                for n in range(-(-C.lo // 2), C.hi // 2 + 1)}
        return IDims(p, dims, None, rep)
    ic = invariant_complex(E, p, check=False)
    return IDims(p, ic.dims, ic.diff, rep)


# ---------------------------------------------------------------------------
# psi and the constant a

def _solve_constant(T: TensorPower, ic: InvariantComplex) -> int | None:
    """The a with psi~(d x) = a d(psi~ x), or None when d vanishes on M."""
    M, q = T.M, T.M.p
    found = set()
    for m in M.degrees():
        if m - 1 < M.lo or not M.dim(m) or not M.dim(m - 1) or m not in ic.diff:
            continue
        for i in range(M.dim(m)):
            lhs = ic.class_of(m - 1, T.power(m - 1, M.diff(m).column(i)))
            rhs = ic.diff[m].apply(ic.class_of(m, T.power(m, {i: 1})))
            if not rhs:
                if lhs:
                    raise ComplexError(f"psi~ d is nonzero where d psi~ vanishes (degree {m}, x = e_{i})")
                continue
            j = next(iter(rhs))
            a = lhs.get(j, 0) * pow(rhs[j], -1, q) % q
            if {k: a * v % q for k, v in rhs.items() if a * v % q} != lhs:
                raise ComplexError(f"psi~ d is not proportional to d psi~ (degree {m}, x = e_{i})")
            found.add(a)
    if len(found) > 1:
        raise ComplexError(f"inconsistent constants {sorted(found)}")
    return found.pop() if found else None


def _probe(p: int, scale: int) -> ChainComplex:
    """F_p -> F_p in degrees 1, 0 with d = scale."""
    return ChainComplex.build(p, {0: 1, 1: 1}, {1: PrimeFieldMatrix(p, 1, 1, {(0, 0): scale})}, 0, 1)


@lru_cache(maxsize=None)
def psi_constant(p: int, scale: int = 1) -> int:
    """The constant a for the prime p, from the two-term contractible probe."""
    if p == 2:
        # F_2 has a single unit, so the invertible constant is forced
        return 1
    T = TensorPower(_probe(p, scale), p)
    ic = invariant_complex(T.E, p)
    a = _solve_constant(T, ic)
    if a is None or a == 0:
        raise ComplexError("the probe did not produce an invertible constant")
    return a


@dataclass
class PsiReport:
    p: int
    tight: bool
    iso: bool
    additive: bool
    degree_law: bool
    I_dims: dict
    constant: int | None
    probe_constant: int
    chain_map: bool | None
    violations: list

    @property
    def ok(self) -> bool:
        return (self.tight and self.iso and self.additive and self.degree_law
                and self.chain_map is not False
                and (self.constant is None or self.constant == self.probe_constant))

    def as_dict(self) -> dict:
        return {"p": self.p, "tight": self.tight, "iso": self.iso, "additive": self.additive,
                "degree_law": self.degree_law, "I_dims": self.I_dims, "constant": self.constant,
                "probe_constant": self.probe_constant, "chain_map": self.chain_map,
                "violations": self.violations, "ok": self.ok}


def psi_check(M: ChainComplex, p: int | None = None, seed: int = 0, pairs: int = 4,
              constant_limit: int = 200) -> PsiReport:
    """Check tightness of M^(x)p and that psi(m) = m^(x)p is an isomorphism onto I.

    The constant a is solved from M itself when M has a nonzero differential
    and the tensor power has at most ``constant_limit`` basis vectors per degree.
    """
    q = M.p
    p = q if p is None else p
    if p != q:
        raise ValueError(f"M is over F_{q}, expected F_{p}")
    rng = random.Random(seed)
    T = TensorPower(M, p)
    rep = is_tight(T.E, p)
    violations = []
    iso = additive = law = True
    I = {}
    for l in T.E.complex.degrees():
        dim_l = T.E.complex.dim(l)
        if not dim_l:
            continue
        inv, norms = _invariants_mod_norms(T.E.sig(l), p)
        Il = len(inv) - norms.rank
        if l % p:
            if Il:
                law = False
                violations.append({"kind": "degree_law", "degree": l, "I": Il})
            continue
        n = l // p
        I[n] = Il
        if Il != M.dim(n):
            law = False
            violations.append({"kind": "degree_law", "degree": l, "I": Il, "expected": M.dim(n)})
        inv_e = Echelon(q).extend(inv)
        e = Echelon(q)
        e.pivots = dict(norms.pivots)
        for i in range(M.dim(n)):
            w = T.power(n, {i: 1})
            if not inv_e.contains(w):
                iso = False
                violations.append({"kind": "not_invariant", "degree": n, "x": {i: 1}})
            elif not e.add(w):
                iso = False
                violations.append({"kind": "not_injective", "degree": n, "x": {i: 1}})
        if e.rank - norms.rank != Il:
            iso = False
            violations.append({"kind": "not_surjective", "degree": n,
                               "image": e.rank - norms.rank, "I": Il})
        for _ in range(pairs):
            x = {i: rng.randrange(q) for i in range(M.dim(n))}
            y = {i: rng.randrange(q) for i in range(M.dim(n))}
            s = {i: (x[i] + y[i]) % q for i in x}
            diff = T.power(n, s)
            diff = vec_axpy(diff, -1, T.power(n, x), q)
            diff = vec_axpy(diff, -1, T.power(n, y), q)
            if not norms.contains(diff):
                additive = False
                violations.append({"kind": "not_additive", "degree": n, "x": x, "y": y})
    probe = psi_constant(p)
    a, chain = None, None
    small = max((T.E.complex.dim(l) for l in T.E.complex.degrees()), default=0) <= constant_limit
    has_d = any(not M.diff(n).is_zero() for n in M.degrees() if n - 1 >= M.lo)
    if p != 2 and has_d and small and rep.tight:
        ic = invariant_complex(T.E, p, check=False)
        a = _solve_constant(T, ic)
        if a is not None:
            chain = _normalized_is_chain_map(T, ic, a)
    return PsiReport(p, rep.tight, iso, additive, law, I, a, probe, chain, violations)


def _normalized_is_chain_map(T: TensorPower, ic: InvariantComplex, a: int) -> bool:
    """psi = a^m psi~ in degree m commutes with the differentials."""
    M, q = T.M, T.M.p
    for m in ic.diff:
        if not M.dim(m) or m - 1 < M.lo:
            continue
        for i in range(M.dim(m)):
            lhs = ic.class_of(m - 1, T.power(m - 1, M.diff(m).column(i)))
            lhs = {k: v * pow(a, m - 1, q) % q for k, v in lhs.items()}
            rhs = ic.diff[m].apply(ic.class_of(m, T.power(m, {i: 1})))
            rhs = {k: v * pow(a, m, q) % q for k, v in rhs.items()}
            if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                return False
    return True


# ---------------------------------------------------------------------------
# p-adaptedness of A-natural

def _restricted_complex(E, n: int, p: int) -> CyclicGroupComplex:
    """Level n of E as a complex of Z/p-modules (internal grading), sigma = t^(n+1)."""
    t = E.rot_matrix(n)
    s = PrimeFieldMatrix.identity(t.field, t.rows)
    for _ in range(E.order(n) // p):
        s = t @ s
    degs = E.internal_degrees(n)
    groups: dict = {}
    for k, g in enumerate(degs):
        groups.setdefault(g, []).append(k)
    pos = {g: {k: i for i, k in enumerate(ks)} for g, ks in groups.items()}

    def block(M, src, dst):
        ents = {}
        for j, k in enumerate(groups[src]):
            for r, v in M.column(k).items():
                if r in pos.get(dst, {}):
                    ents[(pos[dst][r], j)] = v
        return PrimeFieldMatrix(t.field, len(groups.get(dst, [])), len(groups[src]), ents)
    sig = {g: block(s, g, g) for g in groups}
    d = {}
    if E.has_internal_differential:
        D = E.dint_matrix(n)
        d = {g: block(D, g, g - 1) for g in groups if g - 1 in groups}
    dims = {g: len(ks) for g, ks in groups.items()}
    C = ChainComplex.build(t.field, dims, d, min(groups), max(groups))
    return CyclicGroupComplex(p, C, sig)


@dataclass
class AdaptednessReport:
    p: int
    levels: dict
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"p": self.p, "levels": self.levels, "failures": self.failures, "ok": self.ok}


def adaptedness_check(A: AlgebraPresentation, p: int, N: int) -> AdaptednessReport:
    """Is i_p^*(A-natural) tight at levels 0..N, with I of the size of A-natural?"""
    if A.p != p:
        raise ValueError(f"algebra is over F_{A.p}, expected F_{p}")
    src = build_anat(A, p * (N + 1) - 1)
    E = edgewise(src, p, N)
    levels, failures = {}, []
    for n in range(N + 1):
        G = _restricted_complex(E, n, p)
        rep = is_tight(G, p)
        by_deg = {i: (v["I"] or 0) for i, v in rep.degrees.items()}
        # expected: I in internal degree p*j has the dimension of (A-natural)_n in degree j
        want: dict = {}
        for g in src.internal_degrees(n):
            want[g] = want.get(g, 0) + 1
        got = {i // p: v for i, v in by_deg.items() if v}
        match = got == {j: v for j, v in want.items() if v}
        levels[n] = {"tight": rep.tight, "I": sum(by_deg.values()), "expected": src.dim(n),
                     "I_by_degree": got}
        if not rep.tight:
            failures.append({"level": n, "reason": "not tight", "degrees": rep.degrees})
        elif not match:
            failures.append({"level": n, "reason": "I dims differ from A-natural",
                             "got": got, "expected": want})
    return AdaptednessReport(p, levels, failures)


# ---------------------------------------------------------------------------
# the conjugate spectral sequence

@dataclass
class ConjugateE1:
    p: int
    kind: str            # "HH" for odd p, "HC<eps>" for p = 2
    table: dict          # (k, n) -> dim
    parts: dict          # (k, n) -> {"u": dim, "eps": dim} for p = 2
    twist: FrobeniusTwistTag

    def total(self, n: int) -> int:
        return sum(v for (k, m), v in self.table.items() if m == n)

    def as_dict(self) -> dict:
        return {"p": self.p, "kind": self.kind,
                "table": {f"{k},{n}": v for (k, n), v in sorted(self.table.items())},
                "totals": {n: self.total(n) for n in sorted({n for _, n in self.table})}}


def conjugate_e1(A, p: int, degrees=range(-2, 3), window: tuple[int, int] = (-1, 1)) -> ConjugateE1:
    """E_1 of the conjugate sequence: HH_{n+2k} (odd p) or the HC table with eps (p = 2)."""
    degrees = list(degrees)
    ks = range(window[0], window[1] + 1)
    top = max([n + 2 * k for n in degrees for k in ks] + [0]) + (1 if p == 2 else 0)
    tag = FrobeniusTwistTag(p)
    table, parts = {}, {}
    if p != 2:
        hh = tag.dims(hh_dims(A, range(0, top + 1)).dims)
        for n in degrees:
            for k in ks:
                j = n + 2 * k
                table[(k, n)] = hh[j] if j >= 0 else 0
        return ConjugateE1(p, "HH", table, parts, tag)
    hc = tag.dims(hc_dims(A, range(0, top + 1)).dims)
    for n in degrees:
        for k in ks:
            j = n + 2 * k
            u = hc[j] if j >= 0 else 0
            e = hc[j + 1] if j + 1 >= 0 else 0
            table[(k, n)] = u + e
            parts[(k, n)] = {"u": u, "eps": e}
    return ConjugateE1(p, "HC<eps>", table, parts, tag)


@dataclass
class ConjugatePage:
    p: int
    r: int
    rows: int
    table: dict                      # (k, n) -> dim of E_r
    pages: dict                      # r -> {(k, n): dim}, r = 1..last
    infinity: dict                   # (k, n) -> dim of E_infinity
    periodic: bool
    monotone: bool
    stabilized: bool | None = None
    stage_rows: list = field(default_factory=list)

    def total(self, n: int, page: dict | None = None, resolved: bool = True) -> int:
        """Sum over the columns in degree n; by default only resolved columns count."""
        page = self.infinity if page is None else page
        return sum(v for (k, m), v in page.items()
                   if m == n and (not resolved or _resolved((k, m), self.rows)))

    def as_dict(self) -> dict:
        # cells beyond the resolved range carry truncation junk and are left out
        enc = lambda t: {f"{k},{n}": v for (k, n), v in sorted(t.items()) if _resolved((k, n), self.rows)}
        degrees = sorted({n for _, n in self.infinity})
        return {"p": self.p, "r": self.r, "rows": self.rows, "table": enc(self.table),
                "infinity": enc(self.infinity),
                "totals": {str(n): self.total(n) for n in degrees},
                "periodic": self.periodic, "monotone": self.monotone,
                "stabilized": self.stabilized, "stage_rows": self.stage_rows,
                "resolved": f"cells with n + 2k <= {self.rows - 2}"}


class ConjugateWindow:
    """The V-filtered rows <= M complex of i_p^*(A-natural) on a degree window."""

    def __init__(self, A: AlgebraPresentation, p: int, rows: int, lo: int, hi: int):
        if A.p != p:
            raise ValueError(f"algebra is over F_{A.p}, expected F_{p}")
        self.p, self.rows, self.lo, self.hi = p, rows, lo, hi
        E = edgewise(build_anat(A, p * (rows + 1) - 1), p, rows)
        model = ReducedModel(E, "periodic")
        degs = range(lo - 2, hi + 3)
        gens = {N: model.generators(N, rows) for N in degs}
        dims = {N: len(g) for N, g in gens.items()}
        d = {}
        for N in range(lo - 1, hi + 3):
            cols = model._columns(gens[N], gens[N - 1])
            d[N] = PrimeFieldMatrix.from_columns(p, dims[N - 1], cols) if cols else \
                PrimeFieldMatrix(p, dims[N - 1], 0)
        C = ChainComplex.build(p, dims, d, lo - 2, hi + 2)
        std = StandardFiltrationIndex(p)
        fdeg = {N: [std(c, m, model.orbit_data(m, rep)[0].degree) for c, m, rep, _ in g]
                for N, g in gens.items()}
        FC = FilteredComplex.from_degrees(C, fdeg)
        self.complex, self.standard = C, FC
        vals = [v for seq in fdeg.values() for v in seq] or [0]
        fmin, fmax = min(vals), max(vals)
        # V^i = tau^(2i-1); full below, zero above this range on the window
        i_lo = (fmin + lo - 3) // 2
        i_hi = (fmax + hi + 3) // 2 + 1
        live = range(lo - 1, hi + 2)
        filt = {}
        for i in range(i_lo, i_hi + 1):
            for N in live:
                filt[(i, N)] = _tau_space(FC, 2 * i - 1, N)
        for N in live:
            if filt[(i_lo, N)].dim != C.dim(N) or filt[(i_hi, N)].dim != 0:
                raise ComplexError("conjugate filtration range is too narrow")
        self.V = FilteredComplex(C, i_lo, i_hi, filt)

    def page(self, r: int, n: int) -> dict:
        """{V index i: dim E_r^{i}} in total degree n."""
        V = self.V
        return {i: ss_page(V, r, i, n) for i in range(V.f_lo, V.f_hi + 1)}

    @property
    def last_page(self) -> int:
        return self.V.f_hi - self.V.f_lo + 2


def _pages(W: ConjugateWindow, degrees, r_max: int) -> dict:
    out = {}
    for r in range(1, r_max + 1):
        t = {}
        for n in degrees:
            for i, v in W.page(r, n).items():
                # V^i / V^(i+1) carries HH_{n+2-2i}; column k = 1 - i gives HH_{n+2k}
                t[(1 - i, n)] = v
        out[r] = t
    return out


def conjugate_pages(A: AlgebraPresentation, p: int, r: int = 1, degrees=range(-2, 3),
                    rows: int = 6, step: int | None = None) -> ConjugatePage:
    """Pages of the conjugate sequence of i_p^*(A-natural), rows <= rows.

    A second window with ``step`` more rows is computed; ``stabilized`` records
    whether the E_infinity tables agree on the columns both windows resolve.
    """
    if p == 2:
        raise ValueError("the conjugate filtration pages are defined for odd p; "
                         "use conjugate_e1 for the p = 2 table")
    degrees = list(degrees)
    lo, hi = min(degrees), max(degrees)
    W = ConjugateWindow(A, p, rows, lo, hi)
    last = W.last_page
    pages = _pages(W, degrees, max(r, last))
    inf = pages[max(r, last)]
    monotone = all(pages[s + 1][key] <= pages[s][key] for s in range(1, len(pages)) for key in pages[s])
    # u-periodicity: E(i + 1, n) = E(i, n - 2), i.e. column k + 1 in degree n - 2 ... k in n
    periodic = True
    for t in pages.values():
        for (k, n), v in t.items():
            if (k + 1, n - 2) in t and t[(k + 1, n - 2)] != v:
                periodic = False
    stabilized, stage_rows = None, [rows]
    if step:
        W2 = ConjugateWindow(A, p, rows + step, lo, hi)
        inf2 = _pages(W2, degrees, W2.last_page)[W2.last_page]
        stage_rows.append(rows + step)
        resolved = [key for key in inf if _resolved(key, rows)]
        stabilized = all(inf[key] == inf2.get(key, 0) for key in resolved)
    return ConjugatePage(p, r, rows, pages[r], pages, inf, periodic, monotone, stabilized, stage_rows)


def _resolved(key, rows: int) -> bool:
    """Columns whose E_1 entry needs rows well below the truncation."""
    k, n = key
    return n + 2 * k <= rows - 2
