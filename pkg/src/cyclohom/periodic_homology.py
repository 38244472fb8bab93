"""The Tsygan lattice of a cyclic module and the periodic theories built on it.

Lattice conventions.  Cell (c, m) holds E_m.  Even columns carry the
Hochschild differential b = sum_{i<=m} (-1)^i d_i, odd columns the acyclic
b' = sum_{i<m} (-1)^i d_i.  Horizontal maps go from column c to c - 1: the
map 1 - sigma-dagger out of odd columns and the norm N-dagger out of even
ones.  The total differential on a cell of internal degree q is

    D = h + (-1)^c v + (-1)^(c+m) delta,        total degree c + m + q.

Rows <= M and columns <= K are subcomplexes, columns >= K are quotients.
The theories are read off as follows.

    HH          columns 0 and 1 (the cone of 1 - sigma-dagger)
    HC          columns >= 0
    HP          limit over the quotients "columns >= -2s"
    hp, HP-bar  colimit over the subcomplexes "rows <= M"

For every input handled here the rows E_m are bounded complexes and the
internal degrees are bounded below, so the sum-total complex of the lattice
is literally the polynomial, co-periodic and both restricted complexes at
once; only HP (the product side) is different.  ``compare_5dia`` records
this as an identity certificate for the maps l, r and R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .complex_engine import Certificate, ChainComplex, ComplexError, certify
from .config import Budget, DEFAULT_BUDGET, StabilizationPolicy
from .cyclic_objects import (
    AlgebraPresentation,
    BudgetExceeded,
    CyclicModuleData,
    WordCyclicModule,
    build_anat,
)
from .gf_linalg import Echelon, PrimeFieldMatrix
from .reduced import ReducedModel

# the co-periodic towers need a look-ahead: classes born at the top rows of a
# stage die a couple of stages later
PERIODIC_POLICY = StabilizationPolicy(steps=3, max_stages=6, lookahead=2)
PRODUCT_POLICY = StabilizationPolicy(steps=3, max_stages=8, lookahead=0)


# ---------------------------------------------------------------------------
# inputs

def as_module(X, depth: int, budget: Budget = DEFAULT_BUDGET) -> CyclicModuleData:
    """Accept an algebra (A-natural is built to the given depth) or a module."""
    if isinstance(X, AlgebraPresentation):
        return build_anat(X, depth, budget)
    if isinstance(X, CyclicModuleData):
        if X.max_level < depth and not isinstance(X, WordCyclicModule):
            raise BudgetExceeded(f"module has levels up to {X.max_level}, need {depth}")
        return X
    raise TypeError(f"expected an algebra or a cyclic module, got {type(X).__name__}")


def _deepen(E: CyclicModuleData, depth: int) -> CyclicModuleData:
    """Word modules are lazy; raise their nominal depth when a computation needs it."""
    if E.max_level >= depth:
        return E
    if isinstance(E, WordCyclicModule) and not hasattr(E, "source"):
        return build_anat(E.algebra, depth, E.budget)
    if hasattr(E, "source"):
        src = _deepen(E.source, E.r * (depth + 1) - 1)
        return type(E)(src, E.r, depth)
    raise BudgetExceeded(f"module has levels up to {E.max_level}, need {depth}")


def _degree_range(E: CyclicModuleData) -> tuple[int, int]:
    """Bounds for the internal degree per tensor factor (0, 0 for matrix modules)."""
    if isinstance(E, WordCyclicModule):
        d = E.algebra.degrees
        return min(d), max(d)
    return 0, 0


# ---------------------------------------------------------------------------
# the lattice

class Lattice:
    """Cached matrices of the lattice of one cyclic module."""

    def __init__(self, E: CyclicModuleData):
        self.E = E
        self.p = E.p
        self._h: dict = {}
        self._v: dict = {}
        self._dint: dict = {}
        self._degs: dict = {}

    def degrees(self, m: int) -> list[int]:
        if m not in self._degs:
            self._degs[m] = self.E.internal_degrees(m)
        return self._degs[m]

    def sigma_dagger(self, m: int) -> PrimeFieldMatrix:
        return self.E.rot_matrix(m).scale(self.E.dagger_sign(m))

    def horizontal(self, c: int, m: int) -> PrimeFieldMatrix:
        """Map from cell (c, m) to (c - 1, m)."""
        key = (c % 2, m)
        if key not in self._h:
            s = self.sigma_dagger(m)
            d = self.E.dim(m)
            one = PrimeFieldMatrix.identity(self.p, d)
            if c % 2:
                self._h[key] = one - s
            else:
                acc, pw = one, one
                for _ in range(self.E.order(m) - 1):
                    pw = s @ pw
                    acc = acc + pw
                self._h[key] = acc
        return self._h[key]

    def vertical(self, c: int, m: int) -> PrimeFieldMatrix:
        """b (even c) or b' (odd c) from row m to row m - 1, without the column sign."""
        key = (c % 2, m)
        if key not in self._v:
            E = self.E
            top = m + 1 if c % 2 == 0 else m
            acc = PrimeFieldMatrix(self.p, E.dim(m - 1), E.dim(m))
            for i in range(top):
                f = E.face_matrix(m, i)
                acc = acc - f if i % 2 else acc + f
            self._v[key] = acc
        return self._v[key]

    def internal(self, m: int) -> PrimeFieldMatrix:
        if m not in self._dint:
            self._dint[m] = self.E.dint_matrix(m)
        return self._dint[m]

    def d_cell(self, c: int, m: int, j: int) -> dict:
        """Total differential of basis vector j of cell (c, m): {(c', m', j'): coef}."""
        out = {}
        for i, v in self.horizontal(c, m).column(j).items():
            out[(c - 1, m, i)] = v
        if m >= 1:
            s = -1 if c % 2 else 1
            for i, v in self.vertical(c, m).column(j).items():
                out[(c, m - 1, i)] = (s * v) % self.p
        if self.E.has_internal_differential:
            s = -1 if (c + m) % 2 else 1
            for i, v in self.internal(m).column(j).items():
                out[(c, m, i)] = (s * v) % self.p
        return out


@dataclass(frozen=True)
class Region:
    """Cells with c_lo <= c <= c_hi and m <= m_hi (None = unbounded).

    Columns >= c_lo is a quotient, columns <= c_hi and rows <= m_hi are
    subcomplexes, so every region is a subquotient of the lattice.
    """
    c_lo: int | None = None
    c_hi: int | None = None
    m_hi: int | None = None

    def contains(self, c: int, m: int) -> bool:
        return ((self.c_lo is None or c >= self.c_lo) and (self.c_hi is None or c <= self.c_hi)
                and (self.m_hi is None or m <= self.m_hi) and m >= 0)

    def max_row(self, E, n: int) -> int:
        """Largest row that can meet total degree n."""
        bounds = []
        if self.m_hi is not None:
            bounds.append(self.m_hi)
        if self.c_lo is not None:
            lo, _ = _degree_range(E)
            if lo < 0:
                raise ComplexError("negative internal degrees need an explicit row bound")
            bounds.append(n - self.c_lo)
        if not bounds:
            raise ComplexError("region is infinite in this degree")
        return max(min(bounds), -1)


class KeyedStage:
    """H_n of a complex whose bases are lists of hashable keys."""

    def __init__(self, p: int, here: list, d_n: list[dict], d_up: list[dict]):
        self.p = p
        self.here = here
        self._pos = {g: i for i, g in enumerate(here)}
        self.cycles = Echelon(p, track=True).extend(d_n).kernel
        self.bound = Echelon(p).extend(d_up)
        self.dim = len(self.cycles) - self.bound.rank

    def map_rank(self, source: "KeyedStage") -> int:
        """Rank of the map induced by matching keys (keys missing here map to zero)."""
        e = Echelon(self.p)
        e.pivots = dict(self.bound.pivots)
        base = e.rank
        pos = self._pos
        for z in source.cycles:
            v = {}
            for j, c in z.items():
                i = pos.get(source.here[j])
                if i is not None:
                    v[i] = c
            e.add(v)
        return e.rank - base


class LatticeRegionComplex:
    """Sum-total complex of a region, assembled degree by degree."""

    def __init__(self, lattice: Lattice, region: Region, budget: Budget = DEFAULT_BUDGET):
        self.L = lattice
        self.region = region
        self.budget = budget
        self._basis: dict = {}

    def basis(self, n: int) -> list:
        if n in self._basis:
            return self._basis[n]
        E = self.L.E
        out = []
        for m in range(self.region.max_row(E, n) + 1):
            if m > E.max_level:
                raise BudgetExceeded(f"level {m} is beyond the module depth {E.max_level}")
            if E.dim(m) > self.budget.max_cell_dim:
                raise BudgetExceeded(f"level {m} has dimension {E.dim(m)}")
            for j, q in enumerate(self.L.degrees(m)):
                c = n - m - q
                if self.region.contains(c, m):
                    out.append((c, m, j))
        self._basis[n] = out
        return out

    def columns(self, n: int) -> list[dict]:
        tgt = {k: i for i, k in enumerate(self.basis(n - 1))}
        cols = []
        for key in self.basis(n):
            col = {}
            for k, v in self.L.d_cell(*key).items():
                i = tgt.get(k)
                if i is not None and v:
                    col[i] = v
            cols.append(col)
        return cols

    def stage(self, n: int) -> KeyedStage:
        return KeyedStage(self.L.p, self.basis(n), self.columns(n), self.columns(n + 1))

    def chain_complex(self, lo: int, hi: int) -> ChainComplex:
        dims = {n: len(self.basis(n)) for n in range(lo, hi + 1)}
        d = {n: PrimeFieldMatrix.from_columns(self.L.p, dims[n - 1], self.columns(n))
             for n in range(lo + 1, hi + 1)}
        return ChainComplex.build(self.L.p, dims, d, lo, hi)


# ---------------------------------------------------------------------------
# windows and filtrations

@dataclass
class TsyganWindow:
    source: CyclicModuleData
    k0: int
    k1: int
    m_max: int
    lattice: Lattice = field(repr=False)

    def cell_dim(self, c: int, m: int) -> int:
        return self.source.dim(m)

    def horizontal(self, c: int, m: int) -> PrimeFieldMatrix:
        return self.lattice.horizontal(c, m)

    def vertical(self, c: int, m: int) -> PrimeFieldMatrix:
        return self.lattice.vertical(c, m)

    def region(self) -> Region:
        return Region(self.k0, self.k1, self.m_max)

    def total(self, lo: int, hi: int) -> ChainComplex:
        return LatticeRegionComplex(self.lattice, self.region()).chain_complex(lo, hi)

    def check(self) -> "TsyganWindow":
        """b^2 = 0, b'^2 = 0, b(1 - s) = (1 - s)b', (1 - s)N = N(1 - s) = 0, D^2 = 0."""
        L = self.lattice
        for m in range(self.m_max + 1):
            one_minus = L.horizontal(1, m)
            norm = L.horizontal(0, m)
            if not (one_minus @ norm).is_zero() or not (norm @ one_minus).is_zero():
                raise ComplexError(f"(1 - sigma) N != 0 on row {m}")
            if m >= 1:
                b, bp = L.vertical(0, m), L.vertical(1, m)
                if not (b @ L.horizontal(1, m) - L.horizontal(1, m - 1) @ bp).is_zero():
                    raise ComplexError(f"b(1 - sigma) != (1 - sigma)b' on row {m}")
                if not (bp @ L.horizontal(0, m) - L.horizontal(0, m - 1) @ b).is_zero():
                    raise ComplexError(f"b'N != Nb on row {m}")
            if m >= 2:
                for c in (0, 1):
                    if not (L.vertical(c, m - 1) @ L.vertical(c, m)).is_zero():
                        raise ComplexError(f"vertical d^2 != 0 in column parity {c}, row {m}")
        lo, hi = self._degree_window()
        C = self.total(lo, hi)
        for n in range(lo + 1, hi):
            if not (C.diff(n) @ C.diff(n + 1)).is_zero():
                raise ComplexError(f"total differential squares to a nonzero map in degree {n + 1}")
        return self

    def _degree_window(self) -> tuple[int, int]:
        lo_q, hi_q = 0, 0
        for m in range(self.m_max + 1):
            degs = self.lattice.degrees(m)
            lo_q, hi_q = min(lo_q, min(degs)), max(hi_q, max(degs))
        return self.k0 + lo_q, self.k1 + self.m_max + hi_q


def build_tsygan(E, cols: tuple[int, int], rows: int, check: bool = True) -> TsyganWindow:
    E = as_module(E, rows)
    if rows > E.max_level:
        raise BudgetExceeded(f"rows {rows} exceed the module depth {E.max_level}")
    W = TsyganWindow(E, cols[0], cols[1], rows, Lattice(E))
    return W.check() if check else W


@dataclass(frozen=True)
class StandardFiltrationIndex:
    """Filtration degree of a lattice cell under the standard filtration.

    The stupid filtration of the cyclic complex puts row m in F^i for
    i <= -m, the internal grading (stupid filtration of E, rescaled by
    ``scale``) adds floor(-q / scale), and the standard filtration shifts the
    result by one.  The lattice differential never lowers the index.
    """
    scale: int = 1

    def __call__(self, c: int, m: int, q: int) -> int:
        return 1 - m + math.floor(-q / self.scale)


# ---------------------------------------------------------------------------
# results

@dataclass
class DimsResult:
    theory: str
    dims: dict
    certificates: dict = field(default_factory=dict)
    method: str = ""

    @property
    def stabilized(self) -> bool:
        return all(c.stabilized for c in self.certificates.values())

    def value(self, n: int):
        """The dimension, or a (lower, upper) bounds pair when not certified."""
        if n in self.dims and self.dims[n] is not None:
            return self.dims[n]
        cert = self.certificates.get(n)
        return tuple(cert.bounds) if cert is not None and cert.bounds is not None else None

    def as_dict(self) -> dict:
        return {
            "theory": self.theory, "method": self.method,
            "dims": {str(n): self.value(n) for n in sorted(set(self.dims) | set(self.certificates))},
            "certificates": {str(n): c.as_dict() for n, c in sorted(self.certificates.items())},
        }


def _exact_certificate(dim: int, note: str) -> Certificate:
    return Certificate(True, dim, 1, "exact", 0, [dim], [dim], [], None, note)


# ---------------------------------------------------------------------------
# HH and HC

def _word_depth_ok(X) -> bool:
    return isinstance(X, (AlgebraPresentation, WordCyclicModule))


def hh_dims(E, degrees=range(0, 4), budget: Budget = DEFAULT_BUDGET) -> DimsResult:
    """Hochschild homology: the cone of 1 - sigma-dagger, columns 0 and 1."""
    degrees = list(degrees)
    top = max(degrees) + 1
    M = _deepen(as_module(E, top, budget), top)
    _check_nonnegative(M)
    C = LatticeRegionComplex(Lattice(M), Region(0, 1, top), budget)
    out, certs = {}, {}
    for n in degrees:
        d = C.stage(n).dim if n >= 0 else 0
        out[n] = d
        certs[n] = _exact_certificate(d, "finite complex")
    return DimsResult("HH", out, certs, "lattice columns 0..1")


def _check_nonnegative(E):
    lo, _ = _degree_range(E)
    if lo < 0:
        raise ComplexError("internal degrees must be non-negative for the first-quadrant theories")


def hc_dims(E, degrees=range(0, 4), method: str = "auto", budget: Budget = DEFAULT_BUDGET) -> DimsResult:
    """Cyclic homology: the first quadrant (columns >= 0), finite in each degree."""
    degrees = list(degrees)
    top = max(degrees) + 1
    M = _deepen(as_module(E, top, budget), top)
    _check_nonnegative(M)
    if method == "auto":
        method = "reduced" if isinstance(M, WordCyclicModule) else "direct"
    out, certs = {}, {}
    if method == "reduced":
        R = ReducedModel(M, "quadrant", budget)
        for n in degrees:
            d = R.stage(n, max(n + 1, 0)).dim if n >= 0 else 0
            out[n], certs[n] = d, _exact_certificate(d, "finite complex (reduced model)")
    elif method == "direct":
        C = LatticeRegionComplex(Lattice(M), Region(0, None, top), budget)
        for n in degrees:
            d = C.stage(n).dim if n >= 0 else 0
            out[n], certs[n] = d, _exact_certificate(d, "finite complex")
    else:
        raise ValueError(f"unknown method {method!r}")
    return DimsResult("HC", out, certs, method)


# ---------------------------------------------------------------------------
# HP: the product side

def hp_dims(E, degrees=range(-2, 3), policy: StabilizationPolicy | None = None,
            budget: Budget = DEFAULT_BUDGET) -> DimsResult:
    """Periodic cyclic homology as the limit over the quotients "columns >= -2s".

    Stage s in degree n is HC_{n+2s}; the tower maps are the projections.
    """
    policy = policy or PRODUCT_POLICY
    degrees = list(degrees)
    out, certs = {}, {}
    base = as_module(E, 0, budget)
    _check_nonnegative(base)
    for n in degrees:
        stages: dict = {}

        def stage(s, n=n, stages=stages):
            if s not in stages:
                depth = n + 2 * s + 1
                M = _deepen(base, max(depth, 0))
                C = LatticeRegionComplex(Lattice(M), Region(-2 * s, None, None), budget)
                stages[s] = C.stage(n)
            return stages[s]

        def rank(s, t):
            return stage(s).dim if s == t else stage(s).map_rank(stage(t))

        cert = _run_certify(lambda s: stage(s).dim, rank, policy, "quotient")
        certs[n] = cert
        out[n] = cert.dim if cert.stabilized else None
    return DimsResult("HP", out, certs, "quotient tower of column cut-offs")


def _run_certify(stage_dim, rank, policy, direction) -> Certificate:
    """certify, turning a budget overflow into an uncertified result."""
    seen = []

    def sd(s):
        v = stage_dim(s)
        seen.append(v)
        return v
    try:
        return certify(sd, rank, policy, direction)
    except BudgetExceeded as exc:
        lo = min(seen) if seen else 0
        hi = max(seen) if seen else None
        return Certificate(False, None, None, direction, policy.lookahead, seen, [], [],
                           (lo, hi), f"budget exhausted after {len(seen)} stages: {exc}")


# ---------------------------------------------------------------------------
# sum side: hp, HP-bar and the restricted complexes

def row_schedule(E: CyclicModuleData, s: int) -> int:
    """Row bound of stage s: new homology appears every p rows of a level-1 module."""
    p = E.p
    step = p if E.level % p else 1
    return step * (s + 1) - 1


class RowTower:
    """The rows <= M subcomplexes of the sum-total lattice, one per stage."""

    def __init__(self, E, method: str = "auto", budget: Budget = DEFAULT_BUDGET):
        self.base = as_module(E, 0, budget)
        self.budget = budget
        if method == "auto":
            method = "reduced" if isinstance(self.base, WordCyclicModule) else "direct"
        self.method = method
        self._model = None
        self._stages: dict = {}
        if method == "reduced":
            self._model = ReducedModel(self.base, "periodic", budget)
        elif method != "direct":
            raise ValueError(f"unknown method {method!r}")

    def rows(self, s: int) -> int:
        return row_schedule(self.base, s)

    def stage(self, n: int, s: int):
        key = (n, s)
        if key not in self._stages:
            M = self.rows(s)
            if self.method == "reduced":
                self._model.E = _deepen(self._model.E, M)
                self._stages[key] = self._model.stage(n, M)
            else:
                E = _deepen(self.base, M)
                C = LatticeRegionComplex(Lattice(E), Region(None, None, M), self.budget)
                self._stages[key] = C.stage(n)
        return self._stages[key]

    def rank(self, n: int, s: int, t: int) -> int:
        if s == t:
            return self.stage(n, s).dim
        big, small = self.stage(n, t), self.stage(n, s)
        if self.method == "reduced":
            return big.image_rank(small)
        return big.map_rank(small)

    def certificate(self, n: int, policy: StabilizationPolicy) -> Certificate:
        return _run_certify(lambda s: self.stage(n, s).dim,
                            lambda s, t: self.rank(n, s, t), policy, "sub")


def _sum_side(theory: str, E, degrees, policy, method, budget, tower=None) -> DimsResult:
    policy = policy or PERIODIC_POLICY
    tower = tower or RowTower(E, method, budget)
    out, certs = {}, {}
    for n in degrees:
        cert = tower.certificate(n, policy)
        certs[n] = cert
        out[n] = cert.dim if cert.stabilized else None
    note = f"colimit over rows <= M ({tower.method})"
    return DimsResult(theory, out, certs, note)


def hpbar_dims(E, degrees=range(-2, 3), policy: StabilizationPolicy | None = None,
               method: str = "auto", budget: Budget = DEFAULT_BUDGET) -> DimsResult:
    """Co-periodic cyclic homology, from the standard filtration by rows."""
    return _sum_side("HP-bar", E, list(degrees), policy, method, budget)


def cp_poly_dims(E, degrees=range(-2, 3), policy: StabilizationPolicy | None = None,
                 method: str = "auto", budget: Budget = DEFAULT_BUDGET) -> DimsResult:
    """Polynomial periodic cyclic homology: direct limit of finite windows."""
    return _sum_side("hp", E, list(degrees), policy, method, budget)


def restricted_dims(E, side: str = "CPbarf", degrees=range(-2, 3),
                    policy: StabilizationPolicy | None = None, method: str = "auto",
                    budget: Budget = DEFAULT_BUDGET) -> DimsResult:
    """The restricted complexes: complete each row, then take the cyclic totalization.

    A row of the lattice is the 2-periodic complex of one E_m; as E_m is a
    bounded complex its completion (either side) is the row itself, so the
    totalization is the sum-total complex again.
    """
    if side not in ("CPf", "CPbarf"):
        raise ValueError("side must be CPf or CPbarf")
    M = as_module(E, 0, budget)
    _require_bounded_rows(M)
    return _sum_side(side, M, list(degrees), policy, method, budget)


def _require_bounded_rows(E):
    # finite-dimensional rows are bounded complexes; matrix modules always are
    if not isinstance(E, CyclicModuleData):
        raise TypeError("expected a cyclic module")


# ---------------------------------------------------------------------------
# the comparison diagram

@dataclass
class MapVerdict:
    name: str
    source: str
    target: str
    iso: bool | None
    reason: str

    def as_dict(self):
        return {"map": self.name, "source": self.source, "target": self.target,
                "iso": self.iso, "reason": self.reason}


@dataclass
class ComparisonReport:
    theories: dict
    maps: dict
    degrees: list

    def as_dict(self):
        return {"degrees": self.degrees,
                "theories": {k: v.as_dict() for k, v in self.theories.items()},
                "maps": {k: v.as_dict() for k, v in self.maps.items()}}


def _identity_reasons(E) -> dict:
    """Which of l, r, R are identities of complexes for this input."""
    lo, hi = _degree_range(E)
    rows_bounded = True  # every E_m is finite-dimensional
    out = {}
    if rows_bounded:
        why = "every row E_m is a bounded complex, so completing a row changes nothing"
        out["l"] = (True, why + "; cp and CP^f are the same complex")
        out["r"] = (True, why + "; cp and CPbar^f are the same complex")
    if lo >= 0:
        out["R"] = (True, "internal degrees are >= 0, so in each degree only finitely many "
                          "positive u-powers occur and CPbar^f = CPbar termwise")
    else:
        out["R"] = (None, "negative internal degrees: not an identity of complexes")
    return out


def compare_5dia(E, degrees=range(-2, 3), policy: StabilizationPolicy | None = None,
                 hp_policy: StabilizationPolicy | None = None, method: str = "auto",
                 budget: Budget = DEFAULT_BUDGET) -> ComparisonReport:
    """Dimensions of cp, CP^f, CPbar^f, CPbar and CP, and a verdict on each map.

    l : cp -> CP^f, r : cp -> CPbar^f, R : CPbar^f -> CPbar, L : CP^f -> CP.
    """
    degrees = list(degrees)
    M = as_module(E, 0, budget)
    tower = RowTower(M, method, budget)
    th = {}
    for name in ("cp", "CPf", "CPbarf", "CPbar"):
        th[name] = _sum_side(name, M, degrees, policy, method, budget, tower=tower)
    try:
        th["CP"] = hp_dims(M, degrees, hp_policy, budget)
    except (ComplexError, BudgetExceeded) as exc:
        th["CP"] = DimsResult("CP", {n: None for n in degrees}, {}, f"not computed: {exc}")

    ident = _identity_reasons(M)
    maps = {}
    for name, src, tgt in (("l", "cp", "CPf"), ("r", "cp", "CPbarf"), ("R", "CPbarf", "CPbar")):
        iso, why = ident.get(name, (None, "no structural argument"))
        if iso is None:
            iso, why = _dimension_verdict(th[src], th[tgt], degrees)
        maps[name] = MapVerdict(name, src, tgt, iso, why)
    iso, why = _dimension_verdict(th["CPf"], th["CP"], degrees)
    maps["L"] = MapVerdict("L", "CPf", "CP", iso, why)
    return ComparisonReport(th, maps, degrees)


def _dimension_verdict(a: DimsResult, b: DimsResult, degrees) -> tuple[bool | None, str]:
    bad, unknown = [], []
    for n in degrees:
        x, y = a.dims.get(n), b.dims.get(n)
        if x is None or y is None:
            unknown.append(n)
        elif x != y:
            bad.append(n)
    if bad:
        return False, f"dimensions differ in degrees {bad}"
    if unknown:
        return None, f"not certified in degrees {unknown}"
    return True, "certified dimensions agree in every degree of the window"
