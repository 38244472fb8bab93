"""Group homology and Tate homology of cyclic groups.

A module over Z/n is a matrix ``sigma`` with sigma^n = 1.  The mixed
complex K(E) of coinvariants has, in degree k, a K_1-part holding E_{k-1}
and a K_0-part holding E_k; d = 1 - sigma from K_1 to K_0 and B is the norm
from K_0 to K_1.  Its four expansions give group homology (exp) and the
three flavours of Tate homology (Per, Per-bar, per).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from .complex_engine import (
    ChainComplex,
    ChainMap,
    ComplexError,
    MixedComplex,
    _block,
    _kernel,
    homology,
    homology_dims,
)
from .gf_linalg import Echelon, FieldPrime, PrimeFieldMatrix, as_field, kronecker


class Expansion(str, enum.Enum):
    EXP = "exp"
    PER = "Per"        # V((u)), product side
    PERBAR = "PerBar"  # V((u^-1)), sum side
    POLY = "per"       # V[u, u^-1]


class TateKind(enum.Enum):
    HOMOLOGY = "homology"
    TATE = "tate"
    COTATE = "cotate"
    POLY = "poly"

    @property
    def expansion(self) -> Expansion:
        return {
            TateKind.HOMOLOGY: Expansion.EXP,
            TateKind.TATE: Expansion.PER,
            TateKind.COTATE: Expansion.PERBAR,
            TateKind.POLY: Expansion.POLY,
        }[self]


def _power(m: PrimeFieldMatrix, k: int) -> PrimeFieldMatrix:
    out = PrimeFieldMatrix.identity(m.field, m.rows)
    base = m
    while k:
        if k & 1:
            out = out @ base
        base = base @ base
        k >>= 1
    return out


def norm_map(sigma: PrimeFieldMatrix, order: int) -> PrimeFieldMatrix:
    acc = PrimeFieldMatrix(sigma.field, sigma.rows, sigma.cols)
    s = PrimeFieldMatrix.identity(sigma.field, sigma.rows)
    for _ in range(order):
        acc = acc + s
        s = sigma @ s
    return acc


def dagger(sigma: PrimeFieldMatrix, order: int) -> PrimeFieldMatrix:
    """sigma twisted by (-1)^(order+1)."""
    return sigma if order % 2 else -sigma


@dataclass(frozen=True)
class CyclicGroupModule:
    order: int
    sigma: PrimeFieldMatrix

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("group order must be positive")
        if self.sigma.rows != self.sigma.cols:
            raise ValueError("sigma must be square")
        if _power(self.sigma, self.order) != PrimeFieldMatrix.identity(self.sigma.field, self.dim):
            raise ValueError(f"sigma^{self.order} is not the identity")

    @property
    def dim(self) -> int:
        return self.sigma.rows

    @property
    def field(self) -> FieldPrime:
        return self.sigma.field

    @classmethod
    def trivial(cls, p, order: int, dim: int = 1) -> "CyclicGroupModule":
        return cls(order, PrimeFieldMatrix.identity(p, dim))

    @classmethod
    def regular(cls, p, order: int, copies: int = 1) -> "CyclicGroupModule":
        ents = {((j + 1) % order + c * order, j + c * order): 1
                for c in range(copies) for j in range(order)}
        return cls(order, PrimeFieldMatrix(p, order * copies, order * copies, ents))

    @classmethod
    def permutation(cls, p, order: int, perm: list[int], signs: list[int] | None = None):
        """sigma e_j = signs[j] * e_{perm[j]}."""
        signs = signs or [1] * len(perm)
        ents = {(perm[j], j): signs[j] for j in range(len(perm))}
        return cls(order, PrimeFieldMatrix(p, len(perm), len(perm), ents))

    def twisted(self) -> "CyclicGroupModule":
        return CyclicGroupModule(self.order, dagger(self.sigma, self.order))

    def as_complex(self, degree: int = 0) -> "CyclicGroupComplex":
        C = ChainComplex.build(self.field, {degree: self.dim}, {}, degree, degree)
        return CyclicGroupComplex(self.order, C, {degree: self.sigma})


@dataclass(frozen=True)
class CyclicGroupComplex:
    order: int
    complex: ChainComplex
    sigma: Mapping[int, PrimeFieldMatrix]

    def __post_init__(self):
        C = self.complex
        for n in C.degrees():
            s = self.sig(n)
            if _power(s, self.order) != PrimeFieldMatrix.identity(C.field, C.dim(n)):
                raise ComplexError(f"sigma in degree {n} has order not dividing {self.order}")
            if C.dim(n - 1) and C.dim(n):
                if self.sig(n - 1) @ C.diff(n) != C.diff(n) @ s:
                    raise ComplexError(f"sigma does not commute with d in degree {n}")

    @property
    def field(self) -> FieldPrime:
        return self.complex.field

    def sig(self, n: int) -> PrimeFieldMatrix:
        s = self.sigma.get(n)
        if s is None:
            return PrimeFieldMatrix.identity(self.field, self.complex.dim(n))
        return s

    def module(self, n: int) -> CyclicGroupModule:
        return CyclicGroupModule(self.order, self.sig(n))

    def twisted(self) -> "CyclicGroupComplex":
        return CyclicGroupComplex(self.order, self.complex,
                                  {n: dagger(s, self.order) for n, s in self.sigma.items()})


def _as_complex(E) -> CyclicGroupComplex:
    if isinstance(E, CyclicGroupModule):
        return E.as_complex()
    return E


def build_K(E, twisted: bool = False) -> MixedComplex:
    """The mixed complex K(E) of sigma-coinvariants (sigma-dagger when twisted)."""
    E = _as_complex(E)
    if twisted:
        E = E.twisted()
    C, n = E.complex, E.order
    lo, hi = C.lo, C.hi + 1
    dims = {k: C.dim(k - 1) + C.dim(k) for k in range(lo, hi + 1)}
    d, B = {}, {}
    for k in range(lo, hi + 1):
        # source blocks: [K1: E_{k-1}, K0: E_k]; target: [K1: E_{k-2}, K0: E_{k-1}]
        one_minus = PrimeFieldMatrix.identity(C.field, C.dim(k - 1)) - E.sig(k - 1)
        d[k] = _block(C.field, [C.dim(k - 2), C.dim(k - 1)], [C.dim(k - 1), C.dim(k)], {
            (0, 0): -C.diff(k - 1), (1, 0): one_minus, (1, 1): C.diff(k)})
        # B: degree k -> k+1, K0 E_k into K1 E_k
        B[k] = _block(C.field, [C.dim(k), C.dim(k + 1)], [C.dim(k - 1), C.dim(k)], {
            (0, 1): norm_map(E.sig(k), n)})
    base = ChainComplex.build(C.field, dims, d, lo, hi)
    return MixedComplex(base, B).check()


@dataclass(frozen=True)
class ExpandedComplex:
    """A window of an expansion.  cells[n] lists (k, j): the block u^k V_j."""
    kind: Expansion
    complex: ChainComplex
    cells: Mapping[int, list]
    exact_lo: int
    exact_hi: int
    vdims: Mapping[int, int]

    def u_matrix(self, n: int) -> PrimeFieldMatrix:
        """Multiplication by u from degree n to degree n - 2."""
        src, dst = self.cells.get(n, []), self.cells.get(n - 2, [])
        V = self.complex
        idx = {c: i for i, c in enumerate(dst)}
        # block sizes are the dims of V_j
        sizes_src = [self._size(c) for c in src]
        sizes_dst = [self._size(c) for c in dst]
        blocks = {}
        for b, (k, j) in enumerate(src):
            t = (k + 1, j)
            if t in idx:
                blocks[(idx[t], b)] = PrimeFieldMatrix.identity(V.field, sizes_src[b])
        return _block(V.field, sizes_dst, sizes_src, blocks)

    def _size(self, cell) -> int:
        return self.vdims[cell[1]]


def periodic_expand(M: MixedComplex, kind: Expansion | str, window: tuple[int, int]) -> ExpandedComplex:
    """Window [lo, hi] of Exp/Per/PerBar/per of M; homology is exact on [lo, hi].

    M is finite, so the three periodic kinds have identical cells; the
    completion direction only matters for unbounded inputs.
    """
    kind = Expansion(kind)
    lo, hi = window
    V = M.base
    vd = {j: V.dim(j) for j in V.degrees()}

    def cells_of(n):
        out = []
        for j in V.degrees():
            if (j - n) % 2 or not vd.get(j):
                continue
            k = (j - n) // 2
            if kind is Expansion.EXP and k > 0:
                continue
            out.append((k, j))
        return out

    lo_w, hi_w = lo - 1, hi + 1
    cells = {n: cells_of(n) for n in range(lo_w - 1, hi_w + 1)}
    dims = {n: sum(vd[j] for _, j in cells[n]) for n in range(lo_w, hi_w + 1)}
    d = {}
    for n in range(lo_w + 1, hi_w + 1):
        src, dst = cells[n], cells[n - 1]
        idx = {c: i for i, c in enumerate(dst)}
        blocks = {}
        for b, (k, j) in enumerate(src):
            if (k, j - 1) in idx:
                blocks[(idx[(k, j - 1)], b)] = V.diff(j)
            if (k + 1, j + 1) in idx:
                blocks[(idx[(k + 1, j + 1)], b)] = M.Bmap(j)
        d[n] = _block(V.field, [vd[j] for _, j in dst], [vd[j] for _, j in src], blocks)
    C = ChainComplex.build(V.field, dims, d, lo_w, hi_w)
    return ExpandedComplex(kind, C, {n: cells[n] for n in range(lo_w, hi_w + 1)}, lo, hi, vd)


def tate_dims(E, kind: TateKind | str = TateKind.TATE, degrees: Iterable[int] = range(-4, 5),
              twisted: bool = False) -> dict[int, int]:
    kind = TateKind(kind)
    degrees = list(degrees)
    M = build_K(E, twisted)
    X = periodic_expand(M, kind.expansion, (min(degrees), max(degrees)))
    return homology_dims(X.complex, degrees)


def tate_complex(E: CyclicGroupModule, window: tuple[int, int]) -> ChainComplex:
    return periodic_expand(build_K(E), Expansion.PER, window).complex


# ---------------------------------------------------------------------------
# the epsilon operators

def _jordan(p, order: int) -> CyclicGroupModule:
    return CyclicGroupModule(order, PrimeFieldMatrix(p, 2, 2, {(0, 0): 1, (0, 1): 1, (1, 1): 1}))


@dataclass(frozen=True)
class EpsilonMaps:
    eps_even: PrimeFieldMatrix  # H_even -> H_odd
    eps_odd: PrimeFieldMatrix   # H_odd -> H_even
    dim_even: int
    dim_odd: int

    @property
    def odd_iso(self) -> bool:
        return self.dim_odd == self.dim_even and self.eps_odd.rank() == self.dim_odd


def epsilon_maps(M: CyclicGroupModule, p: int | None = None) -> EpsilonMaps:
    """Connecting maps of 0 -> E -> E (x) k~ -> E -> 0 on Tate homology.

    k~ is the two-dimensional module with sigma a single Jordan block.
    Bases of H_0 and H_1 are the representatives chosen by ``homology``.
    """
    q = M.field.p
    if p is not None and M.order != p:
        raise ValueError(f"group order {M.order} differs from p = {p}")
    if M.order != q:
        raise ValueError("epsilon maps need the group order to equal the characteristic")
    n = M.dim
    J = _jordan(q, M.order)
    # basis of E (x) k~ is e_i (x) f_a in kronecker order, index 2*i + a; f_0 spans the sub
    tilde = CyclicGroupModule(M.order, kronecker(M.sigma, J.sigma))
    C = tate_complex(M, (-1, 2))
    Ct = tate_complex(tilde, (-1, 2))
    inc = {i: 2 * i for i in range(n)}

    def eps(i: int) -> PrimeFieldMatrix:
        src = homology(C, i).representatives
        dst = homology(C, i - 1).representatives
        e = Echelon(q, track=True).extend(C.diff(i).columns() + dst)
        nb = C.dim(i)
        cols = []
        for z in src:
            lifted = {2 * k + 1: v for k, v in z.items()}
            w = Ct.diff(i).apply(lifted)
            back = {k // 2: v for k, v in w.items()}
            if any(k % 2 for k in w):
                raise ComplexError("lift does not land in the submodule")
            c = e.express(back)
            cols.append({j - nb: a for j, a in c.items() if j >= nb})
        return PrimeFieldMatrix.from_columns(q, len(dst), cols) if cols else \
            PrimeFieldMatrix(q, len(dst), 0)
    # complexes have one module per degree; degree i carries K_{i mod 2}
    e_odd = eps(1)
    e_even = eps(0)
    return EpsilonMaps(e_even, e_odd, homology(C, 0).dim, homology(C, 1).dim)


@dataclass
class TightReport:
    p: int
    degrees: dict
    tight: bool
    note: str

    def as_dict(self):
        return {"p": self.p, "degrees": self.degrees, "tight": self.tight, "note": self.note}


SUPPORT_NOTE = "support condition: I(E_i) = 0 unless p divides i"


def is_tight(E, p: int | None = None) -> TightReport:
    E = _as_complex(E)
    q = E.field.p
    p = q if p is None else p
    if E.order != p:
        raise ValueError(f"group order {E.order} differs from p = {p}")
    report = {}
    ok = True
    for i in E.complex.degrees():
        if E.complex.dim(i) == 0:
            continue
        eps = epsilon_maps(E.module(i), p)
        I = eps.dim_even if eps.odd_iso else None
        support = eps.odd_iso and (I == 0 or i % p == 0)
        report[i] = {"eps_odd_iso": eps.odd_iso, "eps_even_zero": eps.eps_even.is_zero(),
                     "tate_even": eps.dim_even, "tate_odd": eps.dim_odd, "I": I,
                     "support_ok": support}
        ok = ok and eps.odd_iso and support
    return TightReport(p, report, ok, SUPPORT_NOTE)


# ---------------------------------------------------------------------------
# extended complexes for a subgroup Z/n of Z/m

def build_K_extended(E: CyclicGroupModule, ambient: int) -> MixedComplex:
    n = E.order
    if ambient % n:
        raise ValueError(f"{n} does not divide {ambient}")
    r = ambient // n
    q = E.field.p
    dim = E.dim
    sig_pows = [_power(E.sigma, k) for k in range(n + 1)]

    def shift_block(a: int) -> tuple[int, PrimeFieldMatrix]:
        # g^a (x) e ~ g^(a mod r) (x) sigma^(-(a // r)) e
        qa, ra = divmod(a % ambient, r)
        return ra, sig_pows[(n - qa) % n]

    size = r * dim

    def op(steps: list[int]) -> PrimeFieldMatrix:
        ents: dict = {}
        for a in range(r):
            for s in steps:
                ra, m = shift_block(a + s)
                for (i, j), v in m.entries.items():
                    key = (ra * dim + i, a * dim + j)
                    ents[key] = (ents.get(key, 0) + v) % q
        return PrimeFieldMatrix(q, size, size, ents)

    ident, one = op([0]), op([1])
    d1 = ident - one
    N = op(list(range(ambient)))
    base = ChainComplex.build(q, {0: size, 1: size}, {1: d1}, 0, 1)
    return MixedComplex(base, {0: N}).check()


def extended_tate_dims(sub_order: int, ambient_order: int, E: CyclicGroupModule,
                       degrees: Iterable[int] = range(-4, 5),
                       kind: TateKind | str = TateKind.TATE) -> dict[int, int]:
    if E.order != sub_order:
        raise ValueError("module order differs from the subgroup order")
    degrees = list(degrees)
    M = build_K_extended(E, ambient_order)
    X = periodic_expand(M, TateKind(kind).expansion, (min(degrees), max(degrees)))
    return homology_dims(X.complex, degrees)
