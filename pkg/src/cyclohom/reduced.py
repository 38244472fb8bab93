"""Row-reduced model of the Tsygan lattice of a word-backed cyclic module.

Each row of the lattice is the 2-periodic complex of one level E_m under
sigma-dagger.  Because the rotation permutes basis words up to sign, a row
splits into orbit blocks F[x]/(x^k - eps); on each block we fix a strong
deformation retraction onto its homology.  The vertical and internal
differentials are then transferred by the perturbation lemma:

    D'(g) = sum_j  pi delta (H delta)^j iota (g).

H moves one column to the right and delta lowers the row or the internal
degree, so the sum is finite.  Everything (iota, pi, H and the transferred
differential) only ever lowers rows, so the model is filtered by rows and
"rows <= M" is a subcomplex, exactly as in the lattice.

Two shapes are supported: ``periodic`` (all columns) and ``quadrant``
(columns >= 0, with column 0 a coinvariant column whose outgoing horizontal
map is zero).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .config import Budget, DEFAULT_BUDGET
from .cyclic_objects import BudgetExceeded, WordCyclicModule
from .gf_linalg import Echelon, Subspace, vec_axpy

# column types: boundary column 0 of the quadrant, even and odd columns
BOUNDARY, EVEN, ODD = "b", "e", "o"


def lyndon_words(n: int, k: int):
    """Aperiodic necklace representatives of length n over range(k) (Duval)."""
    if n == 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == n:
            yield tuple(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


def _mat_vec(M, v, p):
    """Dense k x k list-of-rows matrix times dense vector."""
    return [sum(a * b for a, b in zip(row, v)) % p for row in M]


@dataclass(frozen=True)
class BlockSDR:
    """Retraction data of one orbit block in one column type.

    pi: rows = homology classes, iota: list of class vectors, H: matrix into
    the column to the right.  All dense over F_p, block dimension k.
    """
    k: int
    pi: tuple
    iota: tuple
    H: tuple

    @property
    def rank(self) -> int:
        return len(self.iota)


@lru_cache(maxsize=None)
def block_sdr(p: int, k: int, order: int, eps: int) -> dict:
    """SDR of F[x]/(x^k - eps) with f = 1 - x out of odd columns and the norm
    out of even ones; returns one BlockSDR per column type."""
    eps %= p

    def x_pow(j):  # x^j e_0 as (index, coefficient)
        a, b = divmod(j, k)
        return b, pow(eps, a, p)

    def col(fn):  # matrix from its action on e_j, as list of column dicts
        return [fn(j) for j in range(k)]

    def f(j):
        out = {j: 1}
        i, c = x_pow(j + 1)
        out[i] = (out.get(i, 0) - c) % p
        return {a: b for a, b in out.items() if b}

    def g(j):
        out: dict = {}
        for t in range(order):
            i, c = x_pow(j + t)
            out[i] = (out.get(i, 0) + c) % p
        return {a: b for a, b in out.items() if b}

    fcols, gcols = col(f), col(g)
    zero = [{} for _ in range(k)]
    # (incoming map, outgoing map) for each type
    maps = {EVEN: (fcols, gcols), ODD: (gcols, fcols), BOUNDARY: (fcols, zero)}
    full = [{j: 1} for j in range(k)]
    split = {}
    for t, (inc, out) in maps.items():
        B = Subspace.span(p, k, inc)
        ker = Echelon(p, track=True).extend(out).kernel
        Z = Subspace.span(p, k, ker)
        Hc = Z.complement_in(B)
        bvec = B.vectors()
        e = Echelon(p).extend(bvec + Hc)
        W = [v for v in full if e.add(v)]
        split[t] = (bvec, Hc, W, out)

    result = {}
    right = {EVEN: ODD, ODD: EVEN, BOUNDARY: ODD}
    for t, (bvec, Hc, W, out) in split.items():
        basis = bvec + Hc + W
        ex = Echelon(p, track=True).extend(basis)
        coords = [ex.express({j: 1}) for j in range(k)]  # e_j in the basis
        nb, nh = len(bvec), len(Hc)
        pi = tuple(tuple(coords[j].get(nb + a, 0) % p for j in range(k)) for a in range(nh))
        iota = tuple(tuple(v.get(j, 0) for j in range(k)) for v in Hc)
        # preimages of the boundary basis under the outgoing map of the right column
        _, _, Wr, outr = split[right[t]]
        img = []
        for w in Wr:
            v: dict = {}
            for j, c in w.items():
                vec_axpy(v, c, outr[j], p)
            img.append(v)
        er = Echelon(p, track=True).extend(img)
        pre = []
        for b in bvec:
            combo = er.express(b)
            v: dict = {}
            for a, c in combo.items():
                vec_axpy(v, c, Wr[a], p)
            pre.append(v)
        # H e_j = - sum_i (B-coordinate i of e_j) pre_i
        H = [[0] * k for _ in range(k)]
        for j in range(k):
            for i in range(nb):
                c = coords[j].get(i, 0)
                if c:
                    for r, x in pre[i].items():
                        H[r][j] = (H[r][j] - c * x) % p
        result[t] = BlockSDR(k, pi, iota, tuple(tuple(r) for r in H))
    return result


@dataclass(frozen=True)
class Orbit:
    rep: tuple
    k: int           # primitive period
    eps: int         # (sigma-dagger)^k rep = eps * rep
    degree: int      # internal degree of the words


class ReducedModel:
    """Transferred differential on the orbit homology generators.

    A generator is (c, m, rep, a): column c, row m, orbit representative and
    the index of the homology class inside the block.
    """

    def __init__(self, E: WordCyclicModule, shape: str = "periodic", budget: Budget = DEFAULT_BUDGET):
        if not getattr(E, "word_based", False):
            raise TypeError("the reduced model needs a word-backed cyclic module")
        if shape not in ("periodic", "quadrant"):
            raise ValueError(f"unknown shape {shape!r}")
        self.E = E
        self.p = E.p
        self.shape = shape
        self.budget = budget
        self._orbit_of: dict = {}
        self._rows: dict = {}
        self._dprime: dict = {}

    # orbits --------------------------------------------------------------
    def column_type(self, c: int) -> str:
        if self.shape == "quadrant" and c == 0:
            return BOUNDARY
        return EVEN if c % 2 == 0 else ODD

    def orbit_data(self, m: int, w: tuple):
        """(orbit, j, sign) with w = sign * x^j rep, x = sigma-dagger."""
        key = (m, w)
        hit = self._orbit_of.get(key)
        if hit is not None:
            return hit
        E = self.E
        ds = E.dagger_sign(m)
        seq = [(1, w)]
        s, v = 1, w
        while True:
            t, v = E.rot_word(m, v)
            s *= t * ds
            if v == w:
                break
            seq.append((s, v))
        k = len(seq)
        eps = s
        jrep = min(range(k), key=lambda j: seq[j][1])
        rep = seq[jrep][1]
        srep = seq[jrep][0]
        orbit = Orbit(rep, k, eps, E.degree_word(w))
        # x^i w = seq[i]; rep = srep x^jrep w, so x^(k - jrep) rep = srep * eps * w
        for i, (si, wi) in enumerate(seq):
            # wi = si x^i w;  x^j rep = srep x^(jrep + j) w
            j = (i - jrep) % k
            wrap = eps if jrep + j >= k else 1
            # x^j rep = srep * wrap * x^i w = srep * wrap * si * wi
            self._orbit_of[(m, wi)] = (orbit, j, srep * wrap * si)
        return self._orbit_of[key]

    def block(self, orbit: Orbit, m: int, ctype: str) -> BlockSDR:
        return block_sdr(self.p, orbit.k, self.E.order(m), orbit.eps)[ctype]

    def row_orbits(self, m: int) -> list[Orbit]:
        """Orbits of level m carrying homology in some column type of this shape."""
        hit = self._rows.get(m)
        if hit is not None:
            return hit
        E = self.E
        W = E.word_length(m)
        L = E.order(m)
        dA = E.algebra.dim
        types = (EVEN, ODD) + ((BOUNDARY,) if self.shape == "quadrant" else ())
        out = []
        for k in range(1, W + 1):
            if W % k:
                continue
            # skip lengths whose blocks have no homology anywhere
            signs = (1, -1) if (W // k) % 2 == 0 else (1,)
            probe = {block_sdr(self.p, k, L, e)[t].rank for e in signs for t in types}
            if probe == {0}:
                continue
            for u in lyndon_words(k, dA):
                w = u * (W // k)
                orbit, _, _ = self.orbit_data(m, w)
                if any(self.block(orbit, m, t).rank for t in types):
                    out.append(orbit)
                    if len(out) > self.budget.max_generators:
                        raise BudgetExceeded(f"level {m} has more than "
                                             f"{self.budget.max_generators} homology orbits")
        self._rows[m] = out
        return out

    def generators(self, n: int, max_row: int) -> list[tuple]:
        """Generators of total degree n in rows <= max_row."""
        gens = []
        for m in range(max_row + 1):
            for orbit in self.row_orbits(m):
                c = n - m - orbit.degree
                if self.shape == "quadrant" and c < 0:
                    continue
                for a in range(self.block(orbit, m, self.column_type(c)).rank):
                    gens.append((c, m, orbit.rep, a))
        return gens

    # vectors -------------------------------------------------------------
    def _to_blocks(self, m: int, vec: dict) -> dict:
        """Word vector -> {orbit rep: (orbit, dense coordinates)}."""
        p = self.p
        out: dict = {}
        for w, c in vec.items():
            orbit, j, s = self.orbit_data(m, w)
            slot = out.get(orbit.rep)
            if slot is None:
                slot = out[orbit.rep] = (orbit, [0] * orbit.k)
            slot[1][j] = (slot[1][j] + s * c) % p
        return out

    def _from_block(self, m: int, orbit: Orbit, coords) -> dict:
        p = self.p
        E = self.E
        ds = E.dagger_sign(m)
        out = {}
        s, v = 1, orbit.rep
        for j in range(orbit.k):
            if coords[j]:
                # x^j rep = s * v
                out[v] = (s * coords[j]) % p
            t, v = E.rot_word(m, v)
            s *= t * ds
        return out

    def iota(self, gen) -> dict:
        c, m, rep, a = gen
        orbit, _, _ = self.orbit_data(m, rep)
        vec = self.block(orbit, m, self.column_type(c)).iota[a]
        return self._from_block(m, orbit, vec)

    def _delta(self, c: int, m: int, vec: dict) -> dict:
        """Vertical (b or b') and internal differential with lattice signs.

        Returns {(c, row): word vector}.
        """
        p = self.p
        E = self.E
        out: dict = {}
        if m >= 1:
            top = m + 1 if c % 2 == 0 else m
            vs = -1 if c % 2 else 1
            low: dict = {}
            for w, x in vec.items():
                for i in range(top):
                    sgn = vs * (-1 if i % 2 else 1) * x
                    for v, y in E.face_word(m, i, w).items():
                        low[v] = (low.get(v, 0) + sgn * y) % p
            low = {v: y for v, y in low.items() if y}
            if low:
                out[(c, m - 1)] = low
        if E.has_internal_differential:
            ds = -1 if (c + m) % 2 else 1
            same: dict = {}
            for w, x in vec.items():
                for v, y in E.dint_word(w).items():
                    same[v] = (same.get(v, 0) + ds * x * y) % p
            same = {v: y for v, y in same.items() if y}
            if same:
                out[(c, m)] = same
        return out

    def dprime(self, gen) -> dict:
        """Transferred differential of a generator, as {generator: coefficient}."""
        hit = self._dprime.get(gen)
        if hit is not None:
            return hit
        p = self.p
        c0, m0 = gen[0], gen[1]
        result: dict = {}
        todo = {(c0, m0): self.iota(gen)}
        while todo:
            nxt: dict = {}
            for (c, m), vec in todo.items():
                for (c2, m2), y in self._delta(c, m, vec).items():
                    ct = self.column_type(c2)
                    for rep, (orbit, co) in self._to_blocks(m2, y).items():
                        blk = self.block(orbit, m2, ct)
                        for a, row in enumerate(blk.pi):
                            val = sum(r * x for r, x in zip(row, co)) % p
                            if val:
                                key = (c2, m2, rep, a)
                                result[key] = (result.get(key, 0) + val) % p
                        h = _mat_vec(blk.H, co, p)
                        if any(h):
                            words = self._from_block(m2, orbit, h)
                            slot = nxt.setdefault((c2 + 1, m2), {})
                            for w, x in words.items():
                                nv = (slot.get(w, 0) + x) % p
                                if nv:
                                    slot[w] = nv
                                else:
                                    slot.pop(w, None)
            todo = {k: v for k, v in nxt.items() if v}
        result = {k: v for k, v in result.items() if v}
        self._dprime[gen] = result
        return result

    # homology ------------------------------------------------------------
    def _columns(self, src: list, tgt: list) -> list[dict]:
        pos = {g: i for i, g in enumerate(tgt)}
        cols = []
        for g in src:
            col = {}
            for h, v in self.dprime(g).items():
                j = pos.get(h)
                if j is None:
                    raise RuntimeError(f"transferred differential leaves the window: {g} -> {h}")
                col[j] = v
            cols.append(col)
        return cols

    def stage(self, n: int, max_row: int) -> "Stage":
        return Stage(self, n, max_row)


class Stage:
    """Degree-n homology of the rows <= max_row subcomplex of the model."""

    def __init__(self, model: ReducedModel, n: int, max_row: int):
        self.model = model
        self.n = n
        self.max_row = max_row
        p = model.p
        self.here = model.generators(n, max_row)
        below = model.generators(n - 1, max_row)
        above = model.generators(n + 1, max_row)
        d_n = model._columns(self.here, below)
        d_up = model._columns(above, self.here)
        z = Echelon(p, track=True).extend(d_n)
        self.cycles = z.kernel
        self.bound = Echelon(p).extend(d_up)
        self.dim = len(self.cycles) - self.bound.rank
        self._pos = {g: i for i, g in enumerate(self.here)}

    def image_rank(self, smaller: "Stage") -> int:
        """Rank of H_n(smaller) -> H_n(self) for a smaller row bound."""
        e = Echelon(self.model.p)
        e.pivots = dict(self.bound.pivots)
        base = e.rank
        for z in smaller.cycles:
            e.add({self._pos[smaller.here[j]]: v for j, v in z.items()})
        return e.rank - base
