"""Brute-force ground truth for the tests.

Nothing here imports the main computational modules; algebras are read
through their attributes (labels, degrees, mul, unit, diff, field) and all
complexes are assembled from scratch on top of gf_linalg.
"""

from __future__ import annotations

import itertools

from .gf_linalg import Echelon, PrimeFieldMatrix


class OracleBudget(RuntimeError):
    pass


def _rank(cols, p) -> int:
    return Echelon(p).extend(cols).rank


def _kernel(cols, p):
    return Echelon(p, track=True).extend(cols).kernel


def _homology_dim(p, dim_n, d_n_cols, d_up_cols) -> int:
    """dim ker(d_n) - rank(d_{n+1}); d given as lists of sparse columns."""
    return dim_n - _rank(d_n_cols, p) - _rank(d_up_cols, p)


def _mul(A, x, y):
    p = A.field.p
    out = {}
    for i, a in x.items():
        for j, b in y.items():
            for k, c in A.mul.get((i, j), {}).items():
                out[k] = (out.get(k, 0) + a * b * c) % p
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# Hochschild homology from the unreduced bar complex

def _bar_terms(A, n, q):
    """Words of length n+1 with total internal degree q."""
    deg = A.degrees
    return [w for w in itertools.product(range(len(A.labels)), repeat=n + 1)
            if sum(deg[a] for a in w) == q]


def _bar_b(A, w):
    """Hochschild b = sum (-1)^i d_i on a word, with the Koszul sign on the last face."""
    p = A.field.p
    deg = A.degrees
    n = len(w) - 1
    out = {}
    for i in range(n):
        for k, c in A.mul.get((w[i], w[i + 1]), {}).items():
            v = w[:i] + (k,) + w[i + 2:]
            out[v] = (out.get(v, 0) + (-1) ** i * c) % p
    if n >= 1:
        s = (-1) ** (deg[w[-1]] * sum(deg[a] for a in w[:-1]))
        for k, c in A.mul.get((w[-1], w[0]), {}).items():
            v = (k,) + w[1:-1]
            out[v] = (out.get(v, 0) + (-1) ** n * s * c) % p
    return out


def _bar_delta(A, w):
    p = A.field.p
    deg = A.degrees
    out, s = {}, 0
    for k, a in enumerate(w):
        for b, c in A.diff.get(a, {}).items():
            v = w[:k] + (b,) + w[k + 1:]
            out[v] = (out.get(v, 0) + (-1) ** s * c) % p
        s += deg[a]
    return out


def bar_hh_dims(A, n_max: int, max_dim: int = 60_000) -> dict[int, int]:
    """HH_0..HH_{n_max} of A from the bar complex (total complex for DG algebras)."""
    p = A.field.p
    dA = len(A.labels)
    degs = A.degrees
    lo_q, hi_q = min(degs), max(degs)

    if lo_q < 0:
        raise ValueError("the bar oracle expects non-negatively graded algebras")

    def cells(total):
        return [(n, total - n) for n in range(total + 1)
                if (n + 1) * lo_q <= total - n <= (n + 1) * hi_q]

    def basis(total):
        words = []
        for n, q in cells(total):
            if n < 0:
                continue
            if dA ** (n + 1) > max_dim:
                raise OracleBudget(f"bar complex level {n} too large")
            words += [(n, w) for w in _bar_terms(A, n, q)]
        return words

    def differential(total):
        src = basis(total)
        dst = {key: k for k, key in enumerate(basis(total - 1))}
        cols = []
        for n, w in src:
            col = {}
            if n >= 1:
                for v, c in _bar_b(A, w).items():
                    col[dst[(n - 1, v)]] = (col.get(dst[(n - 1, v)], 0) + c) % p
            sign = -1 if n % 2 else 1
            for v, c in _bar_delta(A, w).items():
                j = dst[(n, v)]
                col[j] = (col.get(j, 0) + sign * c) % p
            cols.append({k: v for k, v in col.items() if v})
        return cols, len(src)

    out = {}
    for t in range(0, n_max + 1):
        d_n, dim_n = differential(t)
        d_up, _ = differential(t + 1)
        out[t] = _homology_dim(p, dim_n, d_n, d_up)
    return out


def small_resolution_hh(n: int, p: int, k_max: int) -> dict[int, int]:
    """HH of F_p[x]/x^n from the 2-periodic bimodule resolution.

    The reduced complex is A <- A <- A <- ... with zero maps in odd degrees
    and multiplication by n x^(n-1) in even positive degrees.
    """
    r = 1 if n % p else 0  # x^i -> n x^(i+n-1) is nonzero only on x^0
    out = {0: n}
    for k in range(1, k_max + 1):
        out[k] = n - r
    return out


# ---------------------------------------------------------------------------
# group homology from the explicit periodic resolution

def brute_group_homology(order: int, sigma, i_max: int):
    """Homology H_0..H_{i_max} and Tate homology on [-i_max, i_max] of Z/order.

    The complex has E in every degree, 1 - sigma in odd and the norm in even
    degrees (the Tate complex continues this pattern into negative degrees).
    """
    p = sigma.field.p
    n = sigma.rows
    powers = [PrimeFieldMatrix.identity(p, n)]
    for _ in range(order - 1):
        powers.append(sigma @ powers[-1])
    if sigma @ powers[-1] != powers[0]:
        raise ValueError("sigma has the wrong order")
    norm = powers[0]
    for m in powers[1:]:
        norm = norm + m
    one_minus = powers[0] - sigma
    r_odd, r_even = one_minus.rank(), norm.rank()

    def rk(i):  # rank of the differential leaving degree i
        return r_odd if i % 2 else r_even

    homology = {}
    for i in range(0, i_max + 1):
        out_rank = 0 if i == 0 else rk(i)
        homology[i] = n - out_rank - rk(i + 1)
    tate = {i: n - rk(i) - rk(i + 1) for i in range(-i_max, i_max + 1)}
    return {"homology": homology, "tate": tate}


# ---------------------------------------------------------------------------
# raw co-periodic window

def _anat_faces(A, m, w):
    """All faces d_0..d_m of a word at level m, as (index, dict)."""
    p = A.field.p
    deg = A.degrees
    res = []
    for i in range(m):
        out = {}
        for k, c in A.mul.get((w[i], w[i + 1]), {}).items():
            v = w[:i] + (k,) + w[i + 2:]
            out[v] = (out.get(v, 0) + c) % p
        res.append(out)
    s = (-1) ** (deg[w[-1]] * sum(deg[a] for a in w[:-1]))
    out = {}
    for k, c in A.mul.get((w[-1], w[0]), {}).items():
        v = (k,) + w[1:-1]
        out[v] = (out.get(v, 0) + s * c) % p
    res.append(out)
    return res


def _rot(A, w):
    deg = A.degrees
    s = (-1) ** (deg[w[-1]] * sum(deg[a] for a in w[:-1]))
    return s, (w[-1],) + w[:-1]


def _lattice_degree(A, n, rows):
    """Basis of total degree n in rows <= rows: (column, row, word)."""
    deg = A.degrees
    out = []
    for m in range(rows + 1):
        for w in itertools.product(range(len(A.labels)), repeat=m + 1):
            c = n - m - sum(deg[a] for a in w)
            out.append((c, m, w))
    return out


def _lattice_d(A, key):
    """Total differential of one basis element of the lattice of A-natural."""
    p = A.field.p
    c, m, w = key
    out = {}

    def add(k, v):
        out[k] = (out.get(k, 0) + v) % p
    sdag = -1 if m % 2 else 1  # sigma-dagger = (-1)^m t at level m
    if c % 2:
        # odd column to even column: 1 - sigma-dagger
        add((c - 1, m, w), 1)
        s, v = _rot(A, w)
        add((c - 1, m, v), -sdag * s)
    else:
        # even column to odd column: sum of powers of sigma-dagger
        s_acc, v = 1, w
        for _ in range(m + 1):
            add((c - 1, m, v), s_acc)
            s, v = _rot(A, v)
            s_acc *= sdag * s
    if m >= 1:
        faces = _anat_faces(A, m, w)
        top = m + 1 if c % 2 == 0 else m
        vs = -1 if c % 2 else 1
        for i in range(top):
            for v, x in faces[i].items():
                add((c, m - 1, v), vs * (-1) ** i * x)
    ds = -1 if (c + m) % 2 else 1
    s = 0
    for k, a in enumerate(w):
        for b, x in A.diff.get(a, {}).items():
            add((c, m, w[:k] + (b,) + w[k + 1:]), ds * (-1) ** s * x)
        s += A.degrees[a]
    return {k: v for k, v in out.items() if v}


def _window_homology(A, n, rows, sub_rows=None):
    """dim H_n of rows <= rows; with sub_rows, also the rank of the map from rows <= sub_rows."""
    p = A.field.p
    src = _lattice_degree(A, n, rows)
    low = {k: j for j, k in enumerate(_lattice_degree(A, n - 1, rows))}
    up = _lattice_degree(A, n + 1, rows)
    here = {k: j for j, k in enumerate(src)}
    d_n = [{low[k]: v for k, v in _lattice_d(A, key).items()} for key in src]
    d_up = [{here[k]: v for k, v in _lattice_d(A, key).items()} for key in up]
    e = Echelon(p).extend(d_n)
    B = Echelon(p).extend(d_up)
    base = B.rank
    dim = len(src) - e.rank - base
    if sub_rows is None:
        return dim, None
    small_src = _lattice_degree(A, n, sub_rows)
    d_small = [{low[k]: v for k, v in _lattice_d(A, key).items()} for key in small_src]
    Zs = Echelon(p, track=True).extend(d_small).kernel
    for z in Zs:
        B.add({here[small_src[j]]: v for j, v in z.items()})
    return dim, B.rank - base


def direct_hpbar_window(A, n: int, rows: int = 10, gap: int | None = None,
                        max_dim: int = 20_000) -> tuple[int, int]:
    """Bounds for the co-periodic homology in degree n from rows <= rows.

    The rows <= M part of the sum-total lattice is a subcomplex.  The upper
    bound is dim H_n of it; the lower bound is the rank of the map into it
    from rows <= M - gap.  Default gap is 2p.
    """
    if rows < 0:
        return (0, 0)
    p = A.field.p
    gap = 2 * p if gap is None else gap
    size = sum(len(A.labels) ** (m + 1) for m in range(rows + 1))
    if size > max_dim:
        raise OracleBudget(f"window of dimension {size} exceeds {max_dim}")
    upper, lower = _window_homology(A, n, rows, rows - gap if rows - gap >= 0 else None)
    if lower is None:
        lower = 0
    return (lower, upper)


def direct_hc_dims(A, n_max: int, max_dim: int = 20_000) -> dict[int, int]:
    """HC_0..HC_{n_max} from the quotient "columns >= 0" of the raw lattice."""
    p = A.field.p
    if min(A.degrees) < 0:
        raise ValueError("the cyclic oracle expects non-negatively graded algebras")

    def basis(t):
        if t < 0:
            return []
        return [k for k in _lattice_degree(A, t, t) if k[0] >= 0]

    def d(keys, low):
        pos = {k: j for j, k in enumerate(low)}
        return [{pos[k]: v for k, v in _lattice_d(A, key).items() if k[0] >= 0} for key in keys]

    out = {}
    for t in range(n_max + 1):
        here, below, above = basis(t), basis(t - 1), basis(t + 1)
        if len(here) + len(above) > max_dim:
            raise OracleBudget(f"degree {t} window exceeds {max_dim}")
        out[t] = _homology_dim(p, len(here), d(here, below), d(above, here))
    return out
