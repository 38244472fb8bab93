"""Finite-window chain complexes, bicomplexes and filtered complexes.

Grading is homological: d_n maps C_n to C_{n-1}.  Everything outside the
window [lo, hi] is zero.  Filtrations are decreasing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .config import StabilizationPolicy
from .gf_linalg import (
    Echelon,
    FieldPrime,
    PrimeFieldMatrix,
    Subspace,
    as_field,
    vec_axpy,
    vec_scale,
)


class ComplexError(ValueError):
    pass


class NotStabilized(RuntimeError):
    def __init__(self, message, bounds=None, certificate=None):
        super().__init__(message)
        self.bounds = bounds
        self.certificate = certificate


@dataclass(frozen=True)
class ChainComplex:
    field: FieldPrime
    lo: int
    hi: int
    dims: Mapping[int, int]
    d: Mapping[int, PrimeFieldMatrix]

    @classmethod
    def build(cls, p, dims: Mapping[int, int], d: Mapping[int, PrimeFieldMatrix] | None = None,
              lo: int | None = None, hi: int | None = None, check: bool = True) -> "ChainComplex":
        f = as_field(p)
        dims = {int(n): int(v) for n, v in dims.items() if v}
        keys = list(dims) or [0]
        lo = min(keys) if lo is None else lo
        hi = max(keys) if hi is None else hi
        for n in dims:
            if not lo <= n <= hi:
                raise ComplexError(f"degree {n} lies outside the window [{lo},{hi}]")
        dd = {}
        for n, m in (d or {}).items():
            if m.is_zero():
                continue
            if (m.cols, m.rows) != (dims.get(n, 0), dims.get(n - 1, 0)):
                raise ComplexError(f"d_{n} has shape {m.shape}, expected "
                                   f"{(dims.get(n - 1, 0), dims.get(n, 0))}")
            dd[n] = m
        c = cls(f, lo, hi, dims, dd)
        if check:
            c.check()
        return c

    @property
    def p(self) -> int:
        return self.field.p

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def diff(self, n: int) -> PrimeFieldMatrix:
        m = self.d.get(n)
        if m is None:
            return PrimeFieldMatrix(self.field, self.dim(n - 1), self.dim(n))
        return m

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def check(self):
        for n in self.degrees():
            if n in self.d and n - 1 in self.d:
                if not (self.d[n - 1] @ self.d[n]).is_zero():
                    raise ComplexError(f"d_{n - 1} d_{n} != 0")

    def shift(self, k: int) -> "ChainComplex":
        """C[k]: degree n holds C_{n-k}; differential sign (-1)^k."""
        s = -1 if k % 2 else 1
        return ChainComplex(self.field, self.lo + k, self.hi + k,
                            {n + k: v for n, v in self.dims.items()},
                            {n + k: m.scale(s) for n, m in self.d.items()})


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    maps: Mapping[int, PrimeFieldMatrix]

    def at(self, n: int) -> PrimeFieldMatrix:
        m = self.maps.get(n)
        if m is None:
            return PrimeFieldMatrix(self.source.field, self.target.dim(n), self.source.dim(n))
        return m

    def check(self):
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for n in range(lo, hi + 1):
            lhs = self.target.diff(n) @ self.at(n)
            rhs = self.at(n - 1) @ self.source.diff(n)
            if lhs != rhs:
                raise ComplexError(f"chain map fails to commute with d in degree {n}")
        return self

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        keys = set(self.maps) & set(other.maps)
        return ChainMap(other.source, self.target, {n: self.maps[n] @ other.maps[n] for n in keys})


@dataclass(frozen=True)
class MixedComplex:
    base: ChainComplex
    B: Mapping[int, PrimeFieldMatrix]

    def Bmap(self, n: int) -> PrimeFieldMatrix:
        m = self.B.get(n)
        if m is None:
            return PrimeFieldMatrix(self.base.field, self.base.dim(n + 1), self.base.dim(n))
        return m

    def check(self):
        C = self.base
        for n in range(C.lo - 1, C.hi + 1):
            if not (self.Bmap(n + 1) @ self.Bmap(n)).is_zero():
                raise ComplexError(f"B^2 != 0 in degree {n}")
            dB = C.diff(n + 1) @ self.Bmap(n)
            Bd = self.Bmap(n - 1) @ C.diff(n)
            if not (dB + Bd).is_zero():
                raise ComplexError(f"dB + Bd != 0 in degree {n}")
        return self


@dataclass(frozen=True)
class HomologyResult:
    dim: int
    representatives: list


def _kernel(M: PrimeFieldMatrix) -> list[dict]:
    return Echelon(M.p, track=True).extend(M.columns()).kernel


def homology(C: ChainComplex, n: int) -> HomologyResult:
    """Dimension of H_n and cycle representatives completing the boundaries."""
    Z = _kernel(C.diff(n))
    e = Echelon(C.p).extend(C.diff(n + 1).columns())
    reps = [z for z in Z if e.add(z)]
    return HomologyResult(len(reps), reps)


def homology_dims(C: ChainComplex, degrees: Iterable[int] | None = None) -> dict[int, int]:
    degrees = C.degrees() if degrees is None else degrees
    return {n: homology(C, n).dim for n in degrees}


def cycles(C: ChainComplex, n: int) -> Subspace:
    return Subspace.span(C.p, C.dim(n), _kernel(C.diff(n)))


def boundaries(C: ChainComplex, n: int) -> Subspace:
    return Subspace.span(C.p, C.dim(n), C.diff(n + 1).columns())


def induced_rank(f: ChainMap, n: int) -> int:
    """Rank of H_n(f)."""
    B = boundaries(f.target, n).vectors()
    e = Echelon(f.source.p).extend(B)
    base = e.rank
    for z in _kernel(f.source.diff(n)):
        e.add(f.at(n).apply(z))
    return e.rank - base


def _block(p, rows: Sequence[int], cols: Sequence[int], blocks: Mapping[tuple[int, int], PrimeFieldMatrix]):
    """Assemble a block matrix; blocks keyed by (block_row, block_col)."""
    roff = [0]
    for r in rows:
        roff.append(roff[-1] + r)
    coff = [0]
    for c in cols:
        coff.append(coff[-1] + c)
    ents = {}
    for (bi, bj), m in blocks.items():
        for (i, j), v in m.entries.items():
            ents[(roff[bi] + i, coff[bj] + j)] = v
    return PrimeFieldMatrix(p, roff[-1], coff[-1], ents)


def cone(f: ChainMap) -> ChainComplex:
    """cone_n = C'_n + C_{n-1} with d(c', c) = (d c' + f c, -d c)."""
    C, D = f.source, f.target
    if C.field != D.field:
        raise ComplexError("field mismatch")
    lo = min(D.lo, C.lo + 1)
    hi = max(D.hi, C.hi + 1)
    dims = {n: D.dim(n) + C.dim(n - 1) for n in range(lo, hi + 1)}
    d = {}
    for n in range(lo, hi + 1):
        rows = [D.dim(n - 1), C.dim(n - 2)]
        cols = [D.dim(n), C.dim(n - 1)]
        d[n] = _block(C.field, rows, cols, {
            (0, 0): D.diff(n), (0, 1): f.at(n - 1), (1, 1): -C.diff(n - 1)})
    return ChainComplex.build(C.field, dims, d, lo, hi)


@dataclass(frozen=True)
class BicomplexWindow:
    """Cells (i, j) of total degree i + j; dh lowers i, dv lowers j."""
    field: FieldPrime
    i0: int
    i1: int
    j0: int
    j1: int
    dims: Mapping[tuple[int, int], int]
    dh: Mapping[tuple[int, int], PrimeFieldMatrix]
    dv: Mapping[tuple[int, int], PrimeFieldMatrix]

    def dim(self, i, j) -> int:
        if not (self.i0 <= i <= self.i1 and self.j0 <= j <= self.j1):
            return 0
        return self.dims.get((i, j), 0)

    def _get(self, table, i, j, ti, tj):
        m = table.get((i, j))
        if m is None or self.dim(ti, tj) == 0 or self.dim(i, j) == 0:
            return PrimeFieldMatrix(self.field, self.dim(ti, tj), self.dim(i, j))
        return m

    def h(self, i, j):
        return self._get(self.dh, i, j, i - 1, j)

    def v(self, i, j):
        return self._get(self.dv, i, j, i, j - 1)

    def check(self):
        for i in range(self.i0, self.i1 + 1):
            for j in range(self.j0, self.j1 + 1):
                if not (self.h(i - 1, j) @ self.h(i, j)).is_zero():
                    raise ComplexError(f"dh^2 != 0 at {(i, j)}")
                if not (self.v(i, j - 1) @ self.v(i, j)).is_zero():
                    raise ComplexError(f"dv^2 != 0 at {(i, j)}")
                if not (self.h(i, j - 1) @ self.v(i, j) + self.v(i - 1, j) @ self.h(i, j)).is_zero():
                    raise ComplexError(f"dh, dv do not anticommute at {(i, j)}")
        return self


def total(B: BicomplexWindow, mode: str = "sum") -> ChainComplex:
    """Totalization; on a finite rectangle sum and product agree."""
    if mode not in ("sum", "product"):
        raise ValueError(f"unknown mode {mode!r}")
    lo, hi = B.i0 + B.j0, B.i1 + B.j1
    cells = {n: [(i, n - i) for i in range(B.i0, B.i1 + 1) if B.j0 <= n - i <= B.j1]
             for n in range(lo - 1, hi + 2)}
    dims = {n: sum(B.dim(*c) for c in cells[n]) for n in range(lo, hi + 1)}
    d = {}
    for n in range(lo, hi + 1):
        src, dst = cells[n], cells[n - 1]
        idx = {c: k for k, c in enumerate(dst)}
        blocks = {}
        for b, (i, j) in enumerate(src):
            if (i - 1, j) in idx:
                blocks[(idx[(i - 1, j)], b)] = B.h(i, j)
            if (i, j - 1) in idx:
                blocks[(idx[(i, j - 1)], b)] = B.v(i, j)
        d[n] = _block(B.field, [B.dim(*c) for c in dst], [B.dim(*c) for c in src], blocks)
    return ChainComplex.build(B.field, dims, d, lo, hi)


# ---------------------------------------------------------------------------
# filtered complexes

@dataclass(frozen=True)
class FilteredComplex:
    """Decreasing filtration: F^i = everything for i <= f_lo, 0 for i > f_hi."""
    base: ChainComplex
    f_lo: int
    f_hi: int
    filtration: Mapping[tuple[int, int], Subspace]

    def F(self, i: int, n: int) -> Subspace:
        C = self.base
        if i <= self.f_lo:
            return Subspace.full(C.p, C.dim(n))
        if i > self.f_hi:
            return Subspace.zero(C.p, C.dim(n))
        s = self.filtration.get((i, n))
        return Subspace.full(C.p, C.dim(n)) if s is None else s

    @classmethod
    def from_degrees(cls, C: ChainComplex, fdeg: Mapping[int, Sequence[int]]) -> "FilteredComplex":
        """Filtration where basis vector k of C_n sits in filtration degree fdeg[n][k]."""
        vals = [v for seq in fdeg.values() for v in seq] or [0]
        lo, hi = min(vals), max(vals)
        filt = {}
        for n in C.degrees():
            seq = fdeg.get(n, [])
            for i in range(lo, hi + 1):
                filt[(i, n)] = Subspace.span(C.p, C.dim(n), [{k: 1} for k, v in enumerate(seq) if v >= i])
        return cls(C, lo, hi, filt)

    @classmethod
    def trivial(cls, C: ChainComplex) -> "FilteredComplex":
        return cls.from_degrees(C, {n: [0] * C.dim(n) for n in C.degrees()})

    def check(self):
        C = self.base
        for n in C.degrees():
            for i in range(self.f_lo, self.f_hi + 1):
                if not self.F(i + 1, n) <= self.F(i, n):
                    raise ComplexError(f"filtration not decreasing at ({i},{n})")
                if not self.F(i, n).image(C.diff(n)) <= self.F(i, n - 1):
                    raise ComplexError(f"d does not preserve F^{i} in degree {n}")
        return self

    def gr(self, i: int) -> ChainComplex:
        """Associated graded piece F^i / F^{i+1}."""
        sub = {n: self.F(i, n) for n in self.base.degrees()}
        quo = {n: self.F(i + 1, n) for n in self.base.degrees()}
        return _subquotient(self.base, sub, quo)[0]


def _coords(basis: list[dict], p: int):
    e = Echelon(p, track=True).extend(basis)

    def coord(v):
        c = e.express(v)
        if c is None:
            raise ComplexError("vector outside the expected subspace")
        return c
    return coord


def _subquotient(C: ChainComplex, sub: Mapping[int, Subspace], quo: Mapping[int, Subspace]):
    """The complex sub/quo (quo inside sub, both d-stable).

    Returns (complex, lift) where lift[n] lists ambient vectors of the chosen
    complement basis, and a reducer to quotient coordinates.
    """
    p = C.p
    lifts, reducers = {}, {}
    for n in C.degrees():
        q = quo.get(n) or Subspace.zero(p, C.dim(n))
        s = sub.get(n) or Subspace.zero(p, C.dim(n))
        comp = s.complement_in(q)
        lifts[n] = comp
        qv = q.vectors()
        e = Echelon(p, track=True).extend(qv + comp)
        nq = len(qv)

        def red(v, e=e, nq=nq):
            c = e.express(v)
            if c is None:
                raise ComplexError("vector outside the expected subspace")
            return {j - nq: a for j, a in c.items() if j >= nq}
        reducers[n] = red
    dims = {n: len(lifts[n]) for n in C.degrees()}
    d = {}
    for n in C.degrees():
        if n - 1 < C.lo:
            continue
        cols = [reducers[n - 1](C.diff(n).apply(v)) for v in lifts[n]]
        d[n] = PrimeFieldMatrix.from_columns(p, dims.get(n - 1, 0), cols) if cols else \
            PrimeFieldMatrix(p, dims.get(n - 1, 0), 0)
    out = ChainComplex.build(C.field, dims, d, C.lo, C.hi)
    return out, lifts, reducers


def _filtered_subquotient(FC: FilteredComplex, sub, quo) -> FilteredComplex:
    C = FC.base
    out, lifts, reducers = _subquotient(C, sub, quo)
    filt = {}
    for n in C.degrees():
        for i in range(FC.f_lo, FC.f_hi + 2):
            inter = FC.F(i, n).intersect(sub[n])
            red = reducers[n]
            filt[(i, n)] = Subspace.span(C.p, out.dim(n), [red(v) for v in inter.vectors()])
    return FilteredComplex(out, FC.f_lo, FC.f_hi + 1, filt)


def _tau_space(FC: FilteredComplex, n: int, i: int) -> Subspace:
    C = FC.base
    a = FC.F(n - i, i)
    pre = FC.F(n + 1 - i, i - 1).preimage(C.diff(i))
    return a.intersect(pre)


def _beta_space(FC: FilteredComplex, n: int, i: int) -> Subspace:
    C = FC.base
    return FC.F(n + 1 - i, i) + FC.F(n - i, i + 1).image(C.diff(i + 1))


def truncate(FC: FilteredComplex, kind: str, n: int) -> FilteredComplex:
    """tau^n or beta^n as a subcomplex with the induced filtration."""
    C = FC.base
    if kind == "tau":
        sub = {i: _tau_space(FC, n, i) for i in C.degrees()}
    elif kind == "beta":
        sub = {i: _beta_space(FC, n, i) for i in C.degrees()}
    else:
        raise ValueError(f"unknown truncation {kind!r}")
    zero = {i: Subspace.zero(C.p, C.dim(i)) for i in C.degrees()}
    return _filtered_subquotient(FC, sub, zero)


def h_trunc(FC: FilteredComplex, n: int) -> FilteredComplex:
    """tau^n / beta^n with the induced filtration."""
    C = FC.base
    tau = {i: _tau_space(FC, n, i) for i in C.degrees()}
    beta = {i: _beta_space(FC, n, i) for i in C.degrees()}
    return _filtered_subquotient(FC, tau, beta)


def h_trunc_parts(FC: FilteredComplex, n: int):
    """Like ``h_trunc`` but returns (complex, lifts, reducers).

    reducers[i] sends a vector of tau^n in degree i to its coordinates in
    tau^n / beta^n.
    """
    C = FC.base
    tau = {i: _tau_space(FC, n, i) for i in C.degrees()}
    beta = {i: _beta_space(FC, n, i) for i in C.degrees()}
    return _subquotient(C, tau, beta)


def ss_page(FC: FilteredComplex, r: int, i: int, n: int) -> int:
    """dim E_r^{i,n} = Z_r / (Z_{r-1}^{i+1} + B_{r-1}) in degree n."""
    if r < 1:
        raise ValueError("pages start at r = 1")
    C = FC.base
    d_n, d_up = C.diff(n), C.diff(n + 1)
    Fi = FC.F(i, n)
    Z = Fi.intersect(FC.F(i + r, n - 1).preimage(d_n))
    Z1 = FC.F(i + 1, n).intersect(FC.F(i + r, n - 1).preimage(d_n))
    B = Fi.intersect(FC.F(i - r + 1, n + 1).image(d_up))
    return Z.dim - (Z1 + B).dim


def ss_table(FC: FilteredComplex, r: int, degrees: Iterable[int]) -> dict[tuple[int, int], int]:
    return {(i, n): ss_page(FC, r, i, n)
            for n in degrees for i in range(FC.f_lo, FC.f_hi + 1)}


# ---------------------------------------------------------------------------
# towers and stabilization

@dataclass
class Certificate:
    stabilized: bool
    dim: int | None
    stage: int | None
    direction: str
    lookahead: int
    stage_dims: list
    image_dims: list
    map_ranks: list
    bounds: tuple | None = None
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "stabilized": self.stabilized, "dim": self.dim, "stage": self.stage,
            "direction": self.direction, "lookahead": self.lookahead,
            "stage_dims": list(self.stage_dims), "image_dims": list(self.image_dims),
            "map_ranks": list(self.map_ranks),
            "bounds": list(self.bounds) if self.bounds is not None else None,
            "note": self.note,
        }


def certify(stage_dim: Callable[[int], int], rank: Callable[[int, int], int],
            policy: StabilizationPolicy, direction: str = "sub") -> Certificate:
    """Stabilization test on a tower of homology groups H_0, H_1, ...

    rank(s, t) for s <= t is the rank of the tower map between H_s and H_t
    (H_s -> H_t for sub towers, H_t -> H_s for quotient towers).  With
    lookahead L we watch the images W_s = im(H_s <-> H_{s+L}); the tower is
    declared stable at s once the maps W_s -> W_{s+1} are isomorphisms for
    ``policy.steps`` consecutive indices.  L = 0 is the plain test.
    """
    L = policy.lookahead
    N = policy.max_stages
    dims, imgs, ranks = [], [], []
    run = 0
    for s in range(N - L):
        dims.append(stage_dim(s))
        w = dims[s] if L == 0 else rank(s, s + L)
        imgs.append(w)
        if s == 0:
            continue
        r = rank(s - 1, s + L)
        ranks.append(r)
        run = run + 1 if r == imgs[s - 1] == w else 0
        if run >= policy.steps - 1:
            # stages are reported 1-based
            return Certificate(True, w, s - run + 1, direction, L, dims, imgs, ranks)
    if not imgs:
        # budget does not exceed the lookahead: nothing was observed
        return Certificate(False, None, None, direction, L, dims, imgs, ranks, None,
                           f"stage budget {N} leaves no stage to observe with lookahead {L}")
    last_w, last_h = imgs[-1], dims[-1]
    bounds = (min(last_w, last_h), max(last_h, max(imgs)))
    return Certificate(False, None, None, direction, L, dims, imgs, ranks, bounds,
                       "not stabilized within the stage budget")


@dataclass(frozen=True)
class Tower:
    """Stages with maps between consecutive stages.

    direction 'sub': maps[s] : stages[s] -> stages[s+1] (injections).
    direction 'quotient': maps[s] : stages[s+1] -> stages[s] (surjections).
    """
    stages: Sequence[ChainComplex]
    maps: Sequence[ChainMap]
    direction: str = "sub"


def stabilized_homology(tower: Tower, n: int, policy: StabilizationPolicy | None = None) -> Certificate:
    policy = policy or StabilizationPolicy()
    stages = list(tower.stages)
    policy = policy.with_max_stages(min(policy.max_stages, len(stages)))
    cache: dict = {}

    def composite(s, t):
        key = (s, t)
        if key not in cache:
            if tower.direction == "sub":
                f = tower.maps[s]
                for k in range(s + 1, t):
                    f = tower.maps[k].compose(f)
            else:
                f = tower.maps[s]
                for k in range(s + 1, t):
                    f = f.compose(tower.maps[k])
            cache[key] = f
        return cache[key]

    def rank(s, t):
        if s == t:
            return homology(stages[s], n).dim
        return induced_rank(composite(s, t), n)

    return certify(lambda s: homology(stages[s], n).dim, rank, policy, tower.direction)
