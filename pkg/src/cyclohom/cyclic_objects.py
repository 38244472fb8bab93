"""Cyclic modules over Lambda_l and the algebras that produce them.

Conventions.  Level n of a cyclic module holds E_n, the value at [n+1].
Faces d_0..d_n go to level n-1 and the rotation t generates Z/l(n+1).
For A-natural, E_n = A^(n+1) with basis words (a_0, ..., a_n), lexicographic
with factor 0 major; t moves the last factor to the front,

    t(a_0 ... a_n) = (-1)^(|a_n|(|a_0|+...+|a_{n-1}|)) a_n a_0 ... a_{n-1},

d_i multiplies a_i a_{i+1} for i < n and d_n = d_0 t.  With this direction
of rotation the cyclic identities read d_i t = t d_{i-1} for 1 <= i <= n.

Word-backed modules never materialize a level unless a matrix is asked for,
which keeps edgewise subdivisions of small algebras usable at high levels.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .complex_engine import ChainComplex
from .config import DEFAULT_BUDGET, Budget
from .gf_linalg import FieldPrime, PrimeFieldMatrix, as_field, vec_axpy


class AlgebraError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        shown = "; ".join(self.violations[:8])
        more = f" (+{len(self.violations) - 8} more)" if len(self.violations) > 8 else ""
        super().__init__(f"invalid algebra: {shown}{more}")


class BudgetExceeded(RuntimeError):
    pass


class RelationError(AssertionError):
    pass


# ---------------------------------------------------------------------------
# algebras

@dataclass(frozen=True)
class AlgebraPresentation:
    """A finite-dimensional unital DG algebra over F_p, by structure constants.

    mul[(i, j)] is the product e_i e_j as a sparse dict; diff[i] is d(e_i),
    of homological degree -1.
    """
    field: FieldPrime
    labels: tuple
    degrees: tuple
    mul: Mapping[tuple, Mapping[int, int]]
    unit: Mapping[int, int]
    diff: Mapping[int, Mapping[int, int]]
    name: str = ""

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return len(self.labels)

    def product(self, i: int, j: int) -> Mapping[int, int]:
        return self.mul.get((i, j), {})

    def multiply(self, x: Mapping[int, int], y: Mapping[int, int]) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                vec_axpy(out, a * b, self.product(i, j), self.p)
        return out

    def d(self, x: Mapping[int, int]) -> dict:
        out: dict = {}
        for i, a in x.items():
            vec_axpy(out, a, self.diff.get(i, {}), self.p)
        return out

    @property
    def is_dg(self) -> bool:
        return any(self.degrees) or any(self.diff.values())

    @property
    def degree_zero(self) -> bool:
        return not any(self.degrees)

    def is_commutative(self) -> bool:
        for i in range(self.dim):
            for j in range(self.dim):
                s = -1 if self.degrees[i] * self.degrees[j] % 2 else 1
                a = dict(self.product(i, j))
                vec_axpy(a, -s, self.product(j, i), self.p)
                if a:
                    return False
        return True

    def validate(self) -> list[str]:
        """All violated axiom instances, as human-readable strings."""
        q, n = self.p, self.dim
        bad = []
        deg = self.degrees
        for (i, j), v in self.mul.items():
            for k in v:
                if deg[k] != deg[i] + deg[j]:
                    bad.append(f"product e{i}*e{j} has a term e{k} of the wrong degree")
        for i, v in self.diff.items():
            for k in v:
                if deg[k] != deg[i] - 1:
                    bad.append(f"d(e{i}) has a term e{k} of the wrong degree")
        for i, j, k in itertools.product(range(n), repeat=3):
            left = self.multiply(self.product(i, j), {k: 1})
            right = self.multiply({i: 1}, self.product(j, k))
            if left != right:
                bad.append(f"associativity fails on ({self.labels[i]},{self.labels[j]},{self.labels[k]})")
        for i in range(n):
            if self.multiply(self.unit, {i: 1}) != {i: 1}:
                bad.append(f"left unit law fails on {self.labels[i]}")
            if self.multiply({i: 1}, self.unit) != {i: 1}:
                bad.append(f"right unit law fails on {self.labels[i]}")
        for u in self.unit:
            if deg[u] != 0:
                bad.append("unit is not of degree 0")
        for i in range(n):
            if self.d(self.d({i: 1})):
                bad.append(f"d^2 != 0 on {self.labels[i]}")
        for i, j in itertools.product(range(n), repeat=2):
            lhs = self.d(self.product(i, j))
            rhs = self.multiply(self.d({i: 1}), {j: 1})
            s = -1 if deg[i] % 2 else 1
            vec_axpy(rhs, s, self.multiply({i: 1}, self.d({j: 1})), q)
            if lhs != rhs:
                bad.append(f"Leibniz rule fails on ({self.labels[i]},{self.labels[j]})")
        return bad


def build_algebra(data: Mapping) -> AlgebraPresentation:
    """Validate an algebra description (mapping with p, basis, degrees, unit, mul, diff)."""
    errors = []
    try:
        f = as_field(int(data["p"]))
    except Exception as exc:
        raise AlgebraError([f"bad characteristic: {exc}"])
    if "builder" in data:
        return builder(data["builder"], f.p)
    labels = tuple(str(x) for x in data.get("basis", []))
    if not labels:
        raise AlgebraError(["empty basis"])
    index = {lab: k for k, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise AlgebraError(["duplicate basis labels"])

    def ref(x):
        if isinstance(x, int) and 0 <= x < len(labels):
            return x
        if isinstance(x, str) and x in index:
            return index[x]
        errors.append(f"unknown basis element {x!r}")
        return None

    raw_deg = data.get("degrees", {})
    if isinstance(raw_deg, Mapping):
        degrees = tuple(int(raw_deg.get(lab, 0)) for lab in labels)
    else:
        degrees = tuple(int(x) for x in raw_deg) or (0,) * len(labels)
    mul: dict = {}
    for entry in data.get("mul", []):
        i, j, k, c = entry
        i, j, k = ref(i), ref(j), ref(k)
        if None in (i, j, k):
            continue
        vec_axpy(mul.setdefault((i, j), {}), int(c), {k: 1}, f.p)
    diff: dict = {}
    for entry in data.get("diff", []):
        i, k, c = entry
        i, k = ref(i), ref(k)
        if None in (i, k):
            continue
        vec_axpy(diff.setdefault(i, {}), int(c), {k: 1}, f.p)
    unit_raw = data.get("unit")
    unit: dict = {}
    if isinstance(unit_raw, (str, int)):
        k = ref(unit_raw)
        if k is not None:
            unit = {k: 1}
    elif isinstance(unit_raw, Mapping):
        for lab, c in unit_raw.items():
            k = ref(lab)
            if k is not None:
                vec_axpy(unit, int(c), {k: 1}, f.p)
    elif isinstance(unit_raw, list):
        for lab, c in unit_raw:
            k = ref(lab)
            if k is not None:
                vec_axpy(unit, int(c), {k: 1}, f.p)
    else:
        errors.append("missing unit")
    if errors:
        raise AlgebraError(errors)
    A = AlgebraPresentation(f, labels, degrees, {k: v for k, v in mul.items() if v}, unit,
                            {k: v for k, v in diff.items() if v}, data.get("name", ""))
    bad = A.validate()
    if bad:
        raise AlgebraError(bad)
    return A


def _make(p, labels, degrees, mul, unit, diff=None, name="") -> AlgebraPresentation:
    f = as_field(p)
    mul = {k: {a: b % f.p for a, b in v.items() if b % f.p} for k, v in mul.items()}
    A = AlgebraPresentation(f, tuple(labels), tuple(degrees), {k: v for k, v in mul.items() if v},
                            dict(unit), dict(diff or {}), name)
    bad = A.validate()
    if bad:
        raise AlgebraError(bad)
    return A


def ground_field(p) -> AlgebraPresentation:
    return _make(p, ["1"], [0], {(0, 0): {0: 1}}, {0: 1}, name=f"F_{int(p)}")


def matrix_algebra(k: int, p) -> AlgebraPresentation:
    labels = [f"E{i}{j}" for i in range(k) for j in range(k)]
    mul = {}
    for i, j, l in itertools.product(range(k), repeat=3):
        mul[(i * k + j, j * k + l)] = {i * k + l: 1}
    unit = {i * k + i: 1 for i in range(k)}
    return _make(p, labels, [0] * k * k, mul, unit, name=f"M_{k}(F_{int(p)})")


def product(A: AlgebraPresentation, B: AlgebraPresentation) -> AlgebraPresentation:
    if A.field != B.field:
        raise ValueError("field mismatch")
    n = A.dim
    labels = [f"{x}@1" for x in A.labels] + [f"{x}@2" for x in B.labels]
    mul = dict(A.mul)
    for (i, j), v in B.mul.items():
        mul[(i + n, j + n)] = {k + n: c for k, c in v.items()}
    unit = dict(A.unit)
    unit.update({k + n: c for k, c in B.unit.items()})
    diff = dict(A.diff)
    diff.update({i + n: {k + n: c for k, c in v.items()} for i, v in B.diff.items()})
    name = f"{A.name}x{B.name}" if A.name and B.name else ""
    return _make(A.p, labels, list(A.degrees) + list(B.degrees), mul, unit, diff, name)


def group_algebra(m: int, p) -> AlgebraPresentation:
    labels = [f"g{i}" for i in range(m)]
    mul = {(i, j): {(i + j) % m: 1} for i in range(m) for j in range(m)}
    return _make(p, labels, [0] * m, mul, {0: 1}, name=f"F_{int(p)}[Z/{m}]")


def truncated_poly(n: int, p) -> AlgebraPresentation:
    """F_p[x]/x^n."""
    labels = ["1"] + [f"x{k}" if k > 1 else "x" for k in range(1, n)]
    mul = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
    return _make(p, labels, [0] * n, mul, {0: 1}, name=f"F_{int(p)}[x]/x^{n}")


def exterior_dg(p) -> AlgebraPresentation:
    """F_p<x> with |x| = 1, x^2 = 0, dx = 0."""
    mul = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    return _make(p, ["1", "x"], [0, 1], mul, {0: 1}, name=f"Lambda_F_{int(p)}(x)")


def builder(shorthand: str, p) -> AlgebraPresentation:
    kind, _, arg = str(shorthand).partition(":")
    kind = kind.strip().lower()
    if kind == "field":
        return ground_field(p)
    if kind == "matrix":
        return matrix_algebra(int(arg or 2), p)
    if kind == "truncpoly":
        return truncated_poly(int(arg or 2), p)
    if kind == "group":
        return group_algebra(int(arg or 2), p)
    if kind == "exterior":
        return exterior_dg(p)
    if kind == "product":
        parts = [s for s in arg.split("+") if s]
        if len(parts) != 2:
            raise AlgebraError([f"product builder needs two factors, got {arg!r}"])
        return product(builder(parts[0].replace("/", ":"), p), builder(parts[1].replace("/", ":"), p))
    raise AlgebraError([f"unknown builder {shorthand!r}"])


def corpus(p: int = 3) -> dict[str, AlgebraPresentation]:
    """The standard test algebras over F_p."""
    F = ground_field(p)
    return {
        "field": F,
        "dual": truncated_poly(2, p),
        "square": product(F, F),
        "matrix2": matrix_algebra(2, p),
        "group3": group_algebra(3, p),
        "exterior": exterior_dg(p),
    }


# ---------------------------------------------------------------------------
# cyclic modules

class CyclicModuleData:
    """Faces and rotations of a cyclic module over Lambda_l, levels 0..max_level.

    Subclasses either hold matrices or answer word queries; in the latter case
    the rotation is a signed permutation of basis words.
    """

    field: FieldPrime
    level: int
    max_level: int
    word_based: bool = False

    @property
    def p(self) -> int:
        return self.field.p

    def order(self, n: int) -> int:
        return self.level * (n + 1)

    def dagger_sign(self, n: int) -> int:
        return 1 if self.order(n) % 2 else -1

    # matrix interface -------------------------------------------------
    def dim(self, n: int) -> int:
        raise NotImplementedError

    def face_matrix(self, n: int, i: int) -> PrimeFieldMatrix:
        raise NotImplementedError

    def rot_matrix(self, n: int) -> PrimeFieldMatrix:
        raise NotImplementedError

    def internal_degrees(self, n: int) -> list[int]:
        return [0] * self.dim(n)

    def dint_matrix(self, n: int) -> PrimeFieldMatrix:
        d = self.dim(n)
        return PrimeFieldMatrix(self.field, d, d)

    @property
    def has_internal_differential(self) -> bool:
        return False

    def _check_level(self, n):
        if not 0 <= n <= self.max_level:
            raise BudgetExceeded(f"level {n} is outside 0..{self.max_level}")


class MatrixCyclicModule(CyclicModuleData):
    def __init__(self, p, level: int, dims: Sequence[int], faces: Mapping, rot: Mapping,
                 degrees: Mapping | None = None, dint: Mapping | None = None):
        self.field = as_field(p)
        self.level = level
        self.dims = list(dims)
        self.max_level = len(self.dims) - 1
        self.faces = dict(faces)
        self.rot = dict(rot)
        self.degrees = dict(degrees or {})
        self.dint = dict(dint or {})

    def dim(self, n):
        self._check_level(n)
        return self.dims[n]

    def face_matrix(self, n, i):
        return self.faces[(n, i)]

    def rot_matrix(self, n):
        return self.rot[n]

    def internal_degrees(self, n):
        return list(self.degrees.get(n, [0] * self.dim(n)))

    def dint_matrix(self, n):
        if n in self.dint:
            return self.dint[n]
        return super().dint_matrix(n)

    @property
    def has_internal_differential(self):
        return any(not m.is_zero() for m in self.dint.values())


class WordCyclicModule(CyclicModuleData):
    """Basis of level n: words over the basis of an algebra, given by the subclass."""

    word_based = True
    algebra: AlgebraPresentation
    budget: Budget = DEFAULT_BUDGET

    def word_length(self, n: int) -> int:
        raise NotImplementedError

    def face_word(self, n: int, i: int, w: tuple) -> dict:
        raise NotImplementedError

    def rot_word(self, n: int, w: tuple) -> tuple[int, tuple]:
        raise NotImplementedError

    def dint_word(self, w: tuple) -> dict:
        """Internal differential of a word: Koszul-signed sum over factors."""
        A = self.algebra
        out: dict = {}
        s = 0
        for k, a in enumerate(w):
            da = A.diff.get(a)
            if da:
                sign = -1 if s % 2 else 1
                for b, c in da.items():
                    nw = w[:k] + (b,) + w[k + 1:]
                    out[nw] = (out.get(nw, 0) + sign * c) % self.p
            s += A.degrees[a]
        return {k: v for k, v in out.items() if v}

    def degree_word(self, w: tuple) -> int:
        deg = self.algebra.degrees
        return sum(deg[a] for a in w)

    @property
    def has_internal_differential(self):
        return any(self.algebra.diff.values())

    # materialization ---------------------------------------------------
    def dim(self, n):
        self._check_level(n)
        return self.algebra.dim ** self.word_length(n)

    def words(self, n: int):
        return itertools.product(range(self.algebra.dim), repeat=self.word_length(n))

    def index(self, w: tuple) -> int:
        k, base = 0, self.algebra.dim
        for a in w:
            k = k * base + a
        return k

    def _guard(self, n):
        if self.dim(n) > self.budget.max_cell_dim:
            raise BudgetExceeded(f"level {n} has dimension {self.dim(n)}, above the budget "
                                 f"{self.budget.max_cell_dim}")

    def _matrix(self, n_src: int, n_dst: int, fn) -> PrimeFieldMatrix:
        self._guard(n_src)
        cols = []
        for w in self.words(n_src):
            cols.append({self.index(v): c for v, c in fn(w).items()})
        return PrimeFieldMatrix.from_columns(self.field, self.dim(n_dst), cols)

    def face_matrix(self, n, i):
        return self._matrix(n, n - 1, lambda w: self.face_word(n, i, w))

    def rot_matrix(self, n):
        def f(w):
            s, v = self.rot_word(n, w)
            return {v: s}
        return self._matrix(n, n, f)

    def internal_degrees(self, n):
        self._guard(n)
        return [self.degree_word(w) for w in self.words(n)]

    def dint_matrix(self, n):
        return self._matrix(n, n, self.dint_word)


class AnatModule(WordCyclicModule):
    """A-natural: E_n = A^(n+1)."""

    def __init__(self, A: AlgebraPresentation, max_level: int, budget: Budget = DEFAULT_BUDGET):
        self.algebra = A
        self.field = A.field
        self.level = 1
        self.max_level = max_level
        self.budget = budget
        deg = A.degrees
        self._odd = tuple(d % 2 for d in deg)

    def word_length(self, n):
        return n + 1

    def _koszul_last(self, w: tuple) -> int:
        odd = self._odd
        if not odd[w[-1]]:
            return 1
        s = sum(odd[a] for a in w[:-1])
        return -1 if s % 2 else 1

    def rot_word(self, n, w):
        return self._koszul_last(w), (w[-1],) + w[:-1]

    def face_word(self, n, i, w):
        A = self.algebra
        if i < n:
            prod = A.product(w[i], w[i + 1])
            head, tail = w[:i], w[i + 2:]
            return {head + (c,) + tail: v for c, v in prod.items()}
        s = self._koszul_last(w)
        prod = A.product(w[-1], w[0])
        mid = w[1:-1]
        q = self.p
        return {(c,) + mid: (s * v) % q for c, v in prod.items()}


class EdgewiseModule(WordCyclicModule):
    """The pullback i_r^* of a level-1 word module: level n sits at source level r(n+1)-1."""

    def __init__(self, source: WordCyclicModule, r: int, max_level: int | None = None):
        if source.level != 1:
            raise ValueError("edgewise subdivision needs a level-1 source")
        self.source = source
        self.r = r
        self.algebra = source.algebra
        self.field = source.field
        self.level = r
        self.budget = source.budget
        top = (source.max_level + 1) // r - 1
        if max_level is None:
            max_level = top
        if max_level > top:
            raise BudgetExceeded(f"source depth {source.max_level} supports levels up to {top}, "
                                 f"asked for {max_level}")
        self.max_level = max_level

    def src_level(self, n: int) -> int:
        return self.r * (n + 1) - 1

    def word_length(self, n):
        return self.source.word_length(self.src_level(n))

    def rot_word(self, n, w):
        return self.source.rot_word(self.src_level(n), w)

    def face_word(self, n, i, w):
        """d_i d_{i+(n+1)} ... d_{i+(r-1)(n+1)}, the rightmost applied first."""
        vec = {w: 1}
        lvl = self.src_level(n)
        q = self.p
        for k in reversed(range(self.r)):
            j = i + k * (n + 1)
            out: dict = {}
            for v, c in vec.items():
                for v2, c2 in self.source.face_word(lvl, j, v).items():
                    out[v2] = (out.get(v2, 0) + c * c2) % q
            vec = {v: c for v, c in out.items() if c}
            lvl -= 1
        return vec


def build_anat(A: AlgebraPresentation, N: int, budget: Budget = DEFAULT_BUDGET) -> AnatModule:
    E = AnatModule(A, N, budget)
    return E


def edgewise(E: WordCyclicModule, p: int, N: int | None = None) -> EdgewiseModule:
    if not isinstance(E, WordCyclicModule):
        raise TypeError("edgewise subdivision is implemented for word-backed modules")
    return EdgewiseModule(E, p, N)


# ---------------------------------------------------------------------------
# simplicial data with a Z/l action

@dataclass(frozen=True)
class SimplicialZlData:
    """Faces per level plus an action of Z/l commuting with the faces."""
    field: FieldPrime
    order: int
    dims: tuple
    faces: Mapping[tuple, PrimeFieldMatrix]
    sigma: Mapping[int, PrimeFieldMatrix]
    degrees: Mapping[int, list] = field(default_factory=dict)
    dint: Mapping[int, PrimeFieldMatrix] = field(default_factory=dict)

    @property
    def max_level(self) -> int:
        return len(self.dims) - 1

    def check(self):
        q = self.field
        for n in range(1, self.max_level + 1):
            for i in range(n + 1):
                f = self.faces[(n, i)]
                if self.sigma[n - 1] @ f != f @ self.sigma[n]:
                    raise RelationError(f"sigma does not commute with d_{i} at level {n}")
        return self

    def ch_complex(self, top: int | None = None) -> ChainComplex:
        """CH with b = sum (-1)^i d_i (internal degrees ignored)."""
        top = self.max_level if top is None else top
        d = {}
        for n in range(1, top + 1):
            m = PrimeFieldMatrix(self.field, self.dims[n - 1], self.dims[n])
            for i in range(n + 1):
                m = m + self.faces[(n, i)].scale(-1 if i % 2 else 1)
            d[n] = m
        return ChainComplex.build(self.field, {n: self.dims[n] for n in range(top + 1)}, d, 0, top)


def _power(m: PrimeFieldMatrix, k: int) -> PrimeFieldMatrix:
    out = PrimeFieldMatrix.identity(m.field, m.rows)
    for _ in range(k):
        out = m @ out
    return out


def restrict_j(E: CyclicModuleData, top: int | None = None) -> SimplicialZlData:
    """Forget the rotation except sigma = t^(n+1), of order l."""
    top = E.max_level if top is None else top
    dims = tuple(E.dim(n) for n in range(top + 1))
    faces = {(n, i): E.face_matrix(n, i) for n in range(1, top + 1) for i in range(n + 1)}
    sigma = {n: _power(E.rot_matrix(n), n + 1) for n in range(top + 1)}
    degrees = {n: E.internal_degrees(n) for n in range(top + 1)}
    dint = {n: E.dint_matrix(n) for n in range(top + 1)} if E.has_internal_differential else {}
    return SimplicialZlData(E.field, E.level, dims, faces, sigma, degrees, dint).check()


@dataclass(frozen=True)
class BimodulePresentation:
    """A DG bimodule: left[a] and right[a] are the action matrices of e_a."""
    algebra: AlgebraPresentation
    degrees: tuple
    left: Mapping[int, PrimeFieldMatrix]
    right: Mapping[int, PrimeFieldMatrix]
    diff: PrimeFieldMatrix | None = None

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def check(self) -> list[str]:
        A = self.algebra
        bad = []
        n = self.dim
        I = PrimeFieldMatrix.identity(A.field, n)

        def act(table, x):
            m = PrimeFieldMatrix(A.field, n, n)
            for a, c in x.items():
                m = m + table[a].scale(c)
            return m
        if act(self.left, A.unit) != I or act(self.right, A.unit) != I:
            bad.append("unit does not act as the identity")
        for a, b in itertools.product(range(A.dim), repeat=2):
            if act(self.left, A.product(a, b)) != self.left[a] @ self.left[b]:
                bad.append(f"left action not associative on ({a},{b})")
            if act(self.right, A.product(a, b)) != self.right[b] @ self.right[a]:
                bad.append(f"right action not associative on ({a},{b})")
            if self.left[a] @ self.right[b] != self.right[b] @ self.left[a]:
                bad.append(f"left and right actions do not commute on ({a},{b})")
        return bad


def diagonal_bimodule(A: AlgebraPresentation) -> BimodulePresentation:
    n = A.dim
    left = {a: PrimeFieldMatrix.from_columns(A.field, n, [A.product(a, j) for j in range(n)]) for a in range(n)}
    right = {a: PrimeFieldMatrix.from_columns(A.field, n, [A.product(j, a) for j in range(n)]) for a in range(n)}
    return BimodulePresentation(A, tuple(A.degrees), left, right)


def free_bimodule(A: AlgebraPresentation) -> BimodulePresentation:
    """A (x) A with a(x (x) y)b = ax (x) yb (degree-0 algebras)."""
    if A.is_dg:
        raise ValueError("free bimodule builder handles degree-0 algebras only")
    n = A.dim
    left, right = {}, {}
    for a in range(n):
        lc, rc = [], []
        for x, y in itertools.product(range(n), repeat=2):
            lc.append({k * n + y: c for k, c in A.product(a, x).items()})
            rc.append({x * n + k: c for k, c in A.product(y, a).items()})
        left[a] = PrimeFieldMatrix.from_columns(A.field, n * n, lc)
        right[a] = PrimeFieldMatrix.from_columns(A.field, n * n, rc)
    return BimodulePresentation(A, (0,) * n * n, left, right)


def hoch_coeff(A: AlgebraPresentation, M: BimodulePresentation, l: int = 1,
               top: int = 3) -> SimplicialZlData:
    """(M^(l)_sigma / A^(l))-natural: level n is M^(l) (x) (A^(l))^n.

    Words are tuples of l-blocks.  The right action on M^(l) is twisted by
    the cyclic permutation sigma of the l factors, which also acts
    diagonally on every block.  Only degree-0 data is supported here.
    """
    if A.is_dg or any(M.degrees):
        raise ValueError("hoch_coeff supports degree-0 algebras and bimodules")
    q = A.p
    dA, dM = A.dim, M.dim
    Ablocks = list(itertools.product(range(dA), repeat=l))
    Mblocks = list(itertools.product(range(dM), repeat=l))
    Ai = {b: k for k, b in enumerate(Ablocks)}
    Mi = {b: k for k, b in enumerate(Mblocks)}

    def rot(b):
        return (b[-1],) + b[:-1]

    def amul(x, y):  # product in A^(l), blocks -> dict block -> coef
        out = {(): 1}
        for a, b in zip(x, y):
            new = {}
            for pre, c in out.items():
                for k, v in A.product(a, b).items():
                    new[pre + (k,)] = (new.get(pre + (k,), 0) + c * v) % q
            out = new
        return {k: v for k, v in out.items() if v}

    def act(table, m, a):  # apply e_a from the table on basis vector m of M
        return table[a].column(m)

    def m_left(a, m):  # a . m in M^(l)
        out = {(): 1}
        for ai, mi in zip(a, m):
            new = {}
            for pre, c in out.items():
                for k, v in act(M.left, mi, ai).items():
                    new[pre + (k,)] = (new.get(pre + (k,), 0) + c * v) % q
            out = new
        return out

    def m_right(m, a):  # m . sigma(a)
        a = rot(a)
        out = {(): 1}
        for mi, ai in zip(m, a):
            new = {}
            for pre, c in out.items():
                for k, v in act(M.right, mi, ai).items():
                    new[pre + (k,)] = (new.get(pre + (k,), 0) + c * v) % q
            out = new
        return out

    def words(n):
        return itertools.product(Mblocks, *([Ablocks] * n))

    def index(w):
        k = Mi[w[0]]
        for b in w[1:]:
            k = k * len(Ablocks) + Ai[b]
        return k

    def face(n, i, w):
        if i == 0:
            res = m_right(w[0], w[1])
            return {(m,) + w[2:]: c for m, c in res.items() if c}
        if i < n:
            res = amul(w[i], w[i + 1])
            return {w[:i] + (b,) + w[i + 2:]: c for b, c in res.items()}
        res = m_left(w[n], w[0])
        return {(m,) + w[1:n]: c for m, c in res.items() if c}

    dims = tuple(len(Mblocks) * len(Ablocks) ** n for n in range(top + 1))
    faces = {}
    for n in range(1, top + 1):
        for i in range(n + 1):
            cols = [{index(v): c for v, c in face(n, i, w).items()} for w in words(n)]
            faces[(n, i)] = PrimeFieldMatrix.from_columns(q, dims[n - 1], cols)
    sigma = {}
    for n in range(top + 1):
        cols = [{index(tuple(rot(b) for b in w)): 1} for w in words(n)]
        sigma[n] = PrimeFieldMatrix.from_columns(q, dims[n], cols)
    return SimplicialZlData(A.field, l, dims, faces, sigma).check()


# ---------------------------------------------------------------------------
# relation checking

@dataclass
class RelationReport:
    levels: int
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def check_cyclic_relations(E: CyclicModuleData, top: int | None = None,
                           raise_on_failure: bool = False) -> RelationReport:
    """Simplicial identities, cyclic identities, t^(l(n+1)) = 1, compatibility
    with the internal differential, and d(1 - s) = (1 - s)d' for s = sigma-dagger."""
    top = E.max_level if top is None else top
    fails, count = [], 0
    F = E.field
    faces = {(n, i): E.face_matrix(n, i) for n in range(1, top + 1) for i in range(n + 1)}
    rots = {n: E.rot_matrix(n) for n in range(top + 1)}
    dints = {n: E.dint_matrix(n) for n in range(top + 1)} if E.has_internal_differential else {}

    def expect(cond, msg):
        nonlocal count
        count += 1
        if not cond:
            fails.append(msg)

    for n in range(top + 1):
        dim = E.dim(n)
        I = PrimeFieldMatrix.identity(F, dim)
        expect(_power(rots[n], E.order(n)) == I, f"t^{E.order(n)} != 1 at level {n}")
        if dints:
            expect((dints[n] @ dints[n]).is_zero(), f"internal d^2 != 0 at level {n}")
            expect(dints[n] @ rots[n] == rots[n] @ dints[n], f"t does not commute with d at level {n}")
        if n == 0:
            continue
        for i in range(n + 1):
            f = faces[(n, i)]
            if dints:
                expect(dints[n - 1] @ f == f @ dints[n], f"d_{i} is not a chain map at level {n}")
            if i >= 1:
                expect(f @ rots[n] == rots[n - 1] @ faces[(n, i - 1)],
                       f"d_{i} t != t d_{i - 1} at level {n}")
        expect(faces[(n, 0)] @ rots[n] == faces[(n, n)], f"d_0 t != d_{n} at level {n}")
        if n >= 2:
            for i in range(n + 1):
                for j in range(i + 1, n + 1):
                    lhs = faces[(n - 1, i)] @ faces[(n, j)]
                    rhs = faces[(n - 1, j - 1)] @ faces[(n, i)]
                    expect(lhs == rhs, f"d_{i} d_{j} != d_{j - 1} d_{i} at level {n}")
        b = _b_matrix(faces, n, F, E.dim(n - 1), E.dim(n), prime=False)
        bp = _b_matrix(faces, n, F, E.dim(n - 1), E.dim(n), prime=True)
        s_hi = PrimeFieldMatrix.identity(F, E.dim(n)) - rots[n].scale(E.dagger_sign(n))
        s_lo = PrimeFieldMatrix.identity(F, E.dim(n - 1)) - rots[n - 1].scale(E.dagger_sign(n - 1))
        expect(b @ s_hi == s_lo @ bp, f"b(1 - s) != (1 - s)b' at level {n}")
    rep = RelationReport(top, count, fails)
    if raise_on_failure and fails:
        raise RelationError("; ".join(fails))
    return rep


def _b_matrix(faces, n, F, rows, cols, prime: bool) -> PrimeFieldMatrix:
    m = PrimeFieldMatrix(F, rows, cols)
    last = n if prime else n + 1
    for i in range(last):
        m = m + faces[(n, i)].scale(-1 if i % 2 else 1)
    return m
