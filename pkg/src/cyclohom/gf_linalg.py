"""Exact linear algebra over a prime field F_p.

Matrices are stored sparsely as a mapping (row, col) -> nonzero residue.
Elimination works on sparse column vectors (dicts row -> residue) and pivots
on the first nonzero position, so every basis it produces is reproducible.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

Vec = dict  # sparse vector: index -> nonzero residue


class FieldError(ValueError):
    pass


class NoSolution(ValueError):
    """Raised by solve when the right-hand side is not in the image."""


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldPrime:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not (2 <= self.p < 2**31):
            raise FieldError(f"characteristic must be a prime in [2, 2^31), got {self.p!r}")
        if not _is_prime(int(self.p)):
            raise FieldError(f"{self.p} is not prime")
        object.__setattr__(self, "p", int(self.p))

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def __int__(self):
        return self.p


def as_field(p) -> FieldPrime:
    return p if isinstance(p, FieldPrime) else FieldPrime(int(p))


# ---------------------------------------------------------------------------
# sparse vector helpers

def vec_axpy(y: Vec, a: int, x: Mapping[int, int], p: int) -> Vec:
    """y += a*x in place (entries reduced mod p, zeros dropped)."""
    if a % p == 0:
        return y
    for k, v in x.items():
        nv = (y.get(k, 0) + a * v) % p
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)
    return y


def vec_scale(x: Mapping[int, int], a: int, p: int) -> Vec:
    a %= p
    if a == 0:
        return {}
    return {k: (v * a) % p for k, v in x.items()}


def vec_clean(x: Mapping, p: int) -> dict:
    return {k: v % p for k, v in x.items() if v % p}


class PrimeFieldMatrix:
    """Immutable sparse matrix over F_p."""

    __slots__ = ("field", "rows", "cols", "_cols")

    def __init__(self, p, rows: int, cols: int, entries: Mapping | None = None):
        self.field = as_field(p)
        if rows < 0 or cols < 0:
            raise ValueError("negative shape")
        self.rows = int(rows)
        self.cols = int(cols)
        q = self.field.p
        colmap: dict[int, dict] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i},{j}) outside {rows}x{cols}")
            v = int(v) % q
            if v:
                colmap.setdefault(j, {})[i] = v
        self._cols = colmap

    # construction -------------------------------------------------------
    @classmethod
    def _from_colmap(cls, field: FieldPrime, rows: int, cols: int, colmap: dict):
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m.cols = cols
        m._cols = {j: c for j, c in colmap.items() if c}
        return m

    @classmethod
    def from_columns(cls, p, rows: int, columns: Iterable[Mapping[int, int]]):
        f = as_field(p)
        colmap = {}
        n = 0
        for j, c in enumerate(columns):
            c = vec_clean(c, f.p)
            for i in c:
                if not 0 <= i < rows:
                    raise IndexError(f"row {i} outside {rows}")
            if c:
                colmap[j] = c
            n = j + 1
        return cls._from_colmap(f, rows, n, colmap)

    @classmethod
    def from_dense(cls, p, arr):
        a = np.asarray(arr, dtype=object)
        if a.ndim != 2:
            if a.size == 0:
                a = a.reshape(0, 0)
            else:
                raise ValueError("expected a 2d array")
        r, c = a.shape
        ents = {(i, j): int(a[i, j]) for i in range(r) for j in range(c) if int(a[i, j])}
        return cls(p, r, c, ents)

    @classmethod
    def identity(cls, p, n: int):
        return cls(p, n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, p, rows: int, cols: int):
        return cls(p, rows, cols)

    # accessors -----------------------------------------------------------
    @property
    def p(self) -> int:
        return self.field.p

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self) -> dict:
        return {(i, j): v for j, c in self._cols.items() for i, v in c.items()}

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._cols.values())

    def column(self, j: int) -> dict:
        return dict(self._cols.get(j, {}))

    def columns(self) -> list[dict]:
        return [dict(self._cols.get(j, {})) for j in range(self.cols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._cols.get(j, {}).get(i, 0)

    def is_zero(self) -> bool:
        return not self._cols

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        for j, c in self._cols.items():
            for i, v in c.items():
                a[i, j] = v
        return a

    def __repr__(self):
        return f"PrimeFieldMatrix(p={self.p}, {self.rows}x{self.cols}, nnz={self.nnz})"

    def __eq__(self, other):
        if not isinstance(other, PrimeFieldMatrix):
            return NotImplemented
        return (self.p, self.rows, self.cols, self._cols) == (other.p, other.rows, other.cols, other._cols)

    def __hash__(self):
        return hash((self.p, self.rows, self.cols, frozenset(self.entries.items())))

    # arithmetic ----------------------------------------------------------
    def _check(self, other):
        if self.field != other.field:
            raise FieldError("field mismatch")

    def apply(self, v: Mapping[int, int]) -> dict:
        """Matrix times sparse column vector."""
        out: dict = {}
        q = self.p
        for j, a in v.items():
            c = self._cols.get(j)
            if c:
                vec_axpy(out, a, c, q)
        return out

    def __matmul__(self, other: "PrimeFieldMatrix") -> "PrimeFieldMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        colmap = {j: self.apply(c) for j, c in other._cols.items()}
        return PrimeFieldMatrix._from_colmap(self.field, self.rows, other.cols, colmap)

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        colmap = {j: dict(c) for j, c in self._cols.items()}
        for j, c in other._cols.items():
            colmap[j] = vec_axpy(colmap.get(j, {}), 1, c, self.p)
        return PrimeFieldMatrix._from_colmap(self.field, self.rows, self.cols, colmap)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a: int):
        colmap = {j: vec_scale(c, a, self.p) for j, c in self._cols.items()}
        return PrimeFieldMatrix._from_colmap(self.field, self.rows, self.cols, colmap)

    @property
    def T(self) -> "PrimeFieldMatrix":
        colmap: dict = {}
        for j, c in self._cols.items():
            for i, v in c.items():
                colmap.setdefault(i, {})[j] = v
        return PrimeFieldMatrix._from_colmap(self.field, self.cols, self.rows, colmap)

    def transpose(self):
        return self.T

    def select_columns(self, idx: Iterable[int]) -> "PrimeFieldMatrix":
        idx = list(idx)
        colmap = {k: dict(self._cols[j]) for k, j in enumerate(idx) if j in self._cols}
        return PrimeFieldMatrix._from_colmap(self.field, self.rows, len(idx), colmap)

    def hstack(self, other: "PrimeFieldMatrix") -> "PrimeFieldMatrix":
        self._check(other)
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        colmap = {j: dict(c) for j, c in self._cols.items()}
        for j, c in other._cols.items():
            colmap[self.cols + j] = dict(c)
        return PrimeFieldMatrix._from_colmap(self.field, self.rows, self.cols + other.cols, colmap)

    def rank(self) -> int:
        return Echelon(self.p).extend(self.columns()).rank


# ---------------------------------------------------------------------------
# elimination

class Echelon:
    """Incremental column echelon form.

    Each pivot vector has a distinct leading (smallest) row index.  When
    ``track`` is set, every pivot also remembers which combination of the
    inserted columns produced it, which is what kernels and solve need.
    """

    def __init__(self, p, track: bool = False):
        self.p = as_field(p).p
        self.track = track
        self.pivots: dict[int, tuple[dict, dict | None]] = {}
        self.kernel: list[dict] = []
        self.pivot_columns: list[int] = []
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Mapping[int, int], combo: dict | None = None):
        """Reduce v against the pivots. Returns (residue, combo, lead)."""
        q = self.p
        v = dict(v)
        piv = self.pivots
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            r = heapq.heappop(heap)
            if r in seen:
                continue
            seen.add(r)
            a = v.get(r, 0)
            if not a:
                continue
            entry = piv.get(r)
            if entry is None:
                return v, combo, r
            pv, pc = entry
            c = (-a) % q  # pivot vectors are normalised to lead 1
            for k, x in pv.items():
                nv = (v.get(k, 0) + c * x) % q
                if nv:
                    if k not in v:
                        heapq.heappush(heap, k)
                    v[k] = nv
                else:
                    v.pop(k, None)
            if combo is not None and pc is not None:
                vec_axpy(combo, c, pc, q)
        return v, combo, None

    def add(self, v: Mapping[int, int]) -> bool:
        """Insert a column; True when it raised the rank."""
        j = self.count
        self.count += 1
        combo = {j: 1} if self.track else None
        res, combo, lead = self.reduce(v, combo)
        if lead is None:
            if self.track:
                self.kernel.append(combo)
            return False
        s = pow(res[lead], self.p - 2, self.p)
        res = vec_scale(res, s, self.p)
        if combo is not None:
            combo = vec_scale(combo, s, self.p)
        self.pivots[lead] = (res, combo)
        self.pivot_columns.append(j)
        return True

    def extend(self, vs: Iterable[Mapping[int, int]]) -> "Echelon":
        for v in vs:
            self.add(v)
        return self

    def contains(self, v: Mapping[int, int]) -> bool:
        return self.reduce(v)[2] is None

    def express(self, v: Mapping[int, int]) -> dict | None:
        """Coefficients over inserted columns whose combination is v, or None."""
        if not self.track:
            raise ValueError("express needs track=True")
        res, combo, lead = self.reduce(v, {})
        if lead is not None:
            return None
        # v - sum(...) = 0 with combo accumulated as the negative
        return vec_scale(combo, -1, self.p)


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: PrimeFieldMatrix

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise ValueError("basis rows must equal the ambient dimension")

    @property
    def dim(self) -> int:
        return self.basis.cols

    @property
    def p(self) -> int:
        return self.basis.p

    @classmethod
    def span(cls, p, ambient_dim: int, vectors: Iterable[Mapping[int, int]]) -> "Subspace":
        """Subspace spanned by the given vectors; keeps the first independent ones."""
        vectors = list(vectors)
        e = Echelon(p).extend(vectors)
        keep = [vectors[j] for j in e.pivot_columns]
        return cls(ambient_dim, PrimeFieldMatrix.from_columns(p, ambient_dim, keep))

    @classmethod
    def zero(cls, p, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, PrimeFieldMatrix(p, ambient_dim, 0))

    @classmethod
    def full(cls, p, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, PrimeFieldMatrix.identity(p, ambient_dim))

    def vectors(self) -> list[dict]:
        return self.basis.columns()

    def _echelon(self) -> Echelon:
        return Echelon(self.p).extend(self.vectors())

    def contains(self, v: Mapping[int, int]) -> bool:
        return self._echelon().contains(v)

    def __le__(self, other: "Subspace") -> bool:
        e = other._echelon()
        return all(e.contains(v) for v in self.vectors())

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.p, self.ambient_dim, self.vectors() + other.vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        a, b = self.vectors(), other.vectors()
        e = Echelon(self.p, track=True).extend(a + b)
        out = []
        for k in e.kernel:
            v: dict = {}
            for j, c in k.items():
                if j < len(a):
                    vec_axpy(v, c, a[j], self.p)
            out.append(v)
        return Subspace.span(self.p, self.ambient_dim, out)

    def preimage(self, f: PrimeFieldMatrix) -> "Subspace":
        """{x : f x in self}."""
        if f.rows != self.ambient_dim:
            raise ValueError("map target does not match the ambient space")
        n = f.cols
        cols = f.columns() + [vec_scale(w, -1, self.p) for w in self.vectors()]
        e = Echelon(self.p, track=True).extend(cols)
        out = [{j: c for j, c in k.items() if j < n} for k in e.kernel]
        return Subspace.span(self.p, n, out)

    def image(self, f: PrimeFieldMatrix) -> "Subspace":
        return Subspace.span(self.p, f.rows, [f.apply(v) for v in self.vectors()])

    def complement_in(self, other: "Subspace") -> list[dict]:
        """Vectors of self extending a basis of other (other must lie in self)."""
        e = other._echelon()
        return [v for v in self.vectors() if e.add(v)]


def _as_matrix(M) -> PrimeFieldMatrix:
    if not isinstance(M, PrimeFieldMatrix):
        raise TypeError("expected a PrimeFieldMatrix")
    return M


def rref(M: PrimeFieldMatrix) -> tuple[int, Subspace, Subspace]:
    """Rank, kernel and image of M."""
    M = _as_matrix(M)
    cols = M.columns()
    e = Echelon(M.p, track=True).extend(cols)
    image = Subspace(M.rows, PrimeFieldMatrix.from_columns(M.p, M.rows, [cols[j] for j in e.pivot_columns]))
    kernel = Subspace(M.cols, PrimeFieldMatrix.from_columns(M.p, M.cols, e.kernel))
    return e.rank, kernel, image


def rank(M: PrimeFieldMatrix) -> int:
    return M.rank()


def solve(M: PrimeFieldMatrix, v) -> list[int]:
    """Some x with M x = v; raises NoSolution otherwise."""
    M = _as_matrix(M)
    if isinstance(v, Mapping):
        vd = vec_clean(v, M.p)
    else:
        v = list(v)
        if len(v) != M.rows:
            raise ValueError(f"right-hand side has length {len(v)}, expected {M.rows}")
        vd = vec_clean(dict(enumerate(int(x) for x in v)), M.p)
    e = Echelon(M.p, track=True).extend(M.columns())
    combo = e.express(vd)
    if combo is None:
        raise NoSolution("vector is not in the image")
    x = [0] * M.cols
    for j, c in combo.items():
        x[j] = c % M.p
    return x


def kronecker(M: PrimeFieldMatrix, N: PrimeFieldMatrix) -> PrimeFieldMatrix:
    if M.field != N.field:
        raise FieldError("field mismatch")
    rN, cN = N.rows, N.cols
    q = M.p
    ents = {}
    for (i, j), a in M.entries.items():
        for (k, l), b in N.entries.items():
            ents[(i * rN + k, j * cN + l)] = a * b % q
    return PrimeFieldMatrix(M.field, M.rows * rN, M.cols * cN, ents)


def dense_rank(a: np.ndarray, p: int) -> int:
    """Rank of a dense integer array mod p by vectorised elimination."""
    a = np.array(a, dtype=np.int64) % p
    if a.size == 0:
        return 0
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        below = np.nonzero(a[r + 1:, c])[0] + r + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        r += 1
    return r
