"""Integral homology of finite simplicial complexes and chain complexes.

Boundary matrices are reduced by the sparse column kernel in ``_kernels``; the
exact Smith normal form below is used for whatever the kernel cannot settle
with unit pivots (torsion) and as the fallback on int64 overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .complexes import GSimplicialComplex, SimplicialComplex
from .errors import NonCommuting

INF = math.inf

Column = tuple[np.ndarray, np.ndarray]


# ----------------------------------------------------------------------
# Smith normal form over Z (exact Python integers)


def smith_normal_form(M) -> tuple[list[int], int]:
    """Invariant factors ``d1 | d2 | ...`` (positive) and the rank of an integer matrix.

    Pivot rule: the entry of least absolute value, ties broken by (row, col).
    ``M`` is a sequence of rows or a ``{(row, col): value}`` mapping.
    """
    if isinstance(M, Mapping):
        entries = {k: int(v) for k, v in M.items() if v}
    else:
        entries = {(r, c): int(v) for r, row in enumerate(M) for c, v in enumerate(row) if v}
    rows: dict[int, set[int]] = {}
    cols: dict[int, set[int]] = {}
    for r, c in entries:
        rows.setdefault(r, set()).add(c)
        cols.setdefault(c, set()).add(r)

    def setv(r, c, v):
        if v:
            entries[(r, c)] = v
            rows.setdefault(r, set()).add(c)
            cols.setdefault(c, set()).add(r)
        elif (r, c) in entries:
            del entries[(r, c)]
            rows[r].discard(c)
            cols[c].discard(r)

    diag = []
    while entries:
        (r, c), p = min(entries.items(), key=lambda kv: (abs(kv[1]), kv[0]))
        dirty = False
        for r2 in sorted(cols[c] - {r}):
            q = entries[(r2, c)] // p
            for c2 in list(rows[r]):
                setv(r2, c2, entries.get((r2, c2), 0) - q * entries[(r, c2)])
            if (r2, c) in entries:
                dirty = True
        for c2 in sorted(rows[r] - {c}):
            q = entries[(r, c2)] // p
            for r2 in list(cols[c]):
                setv(r2, c2, entries.get((r2, c2), 0) - q * entries[(r2, c)])
            if (r, c2) in entries:
                dirty = True
        if dirty:
            continue
        diag.append(abs(p))
        setv(r, c, 0)
    return _divisibility_chain(diag), len(diag)


def _divisibility_chain(diag: list[int]) -> list[int]:
    """Rewrite a diagonal into invariant-factor form via (a, b) -> (gcd, lcm)."""
    d = sorted(diag)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = math.gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d


# ----------------------------------------------------------------------
# chain complexes


@dataclass
class ChainComplex:
    """Free chain complex; ``diffs[k]`` holds the columns of d_k : C_k -> C_{k-1}.

    ``diffs[0]`` is unused (always empty).
    """
    dims: list[int]
    diffs: list[list[Column]] = field(default_factory=list)

    @property
    def top(self) -> int:
        return len(self.dims) - 1


def _col(pairs) -> Column:
    if not pairs:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    acc: dict[int, int] = {}
    for r, v in pairs:
        acc[r] = acc.get(r, 0) + v
    items = sorted((r, v) for r, v in acc.items() if v)
    return (np.array([r for r, _ in items], dtype=np.int64),
            np.array([v for _, v in items], dtype=np.int64))


def _as_simplicial(K) -> SimplicialComplex:
    while not isinstance(K, SimplicialComplex):
        K = K.complex
    return K


def simplex_index(K: SimplicialComplex) -> list[dict[tuple[int, ...], int]]:
    return [{s: i for i, s in enumerate(layer)} for layer in K.by_dim]


def chain_complex(K) -> ChainComplex:
    """Simplicial chain complex with simplices ordered as in ``K.by_dim``."""
    K = _as_simplicial(K)
    layers = K.by_dim
    index = simplex_index(K)
    dims = [len(x) for x in layers]
    diffs: list[list[Column]] = [[]]
    for k in range(1, len(layers)):
        cols = []
        for s in layers[k]:
            cols.append(_col([(index[k - 1][s[:i] + s[i + 1:]], -1 if i % 2 else 1)
                              for i in range(len(s))]))
        diffs.append(cols)
    return ChainComplex(dims, diffs)


@dataclass(frozen=True)
class MatrixInvariants:
    rank: int
    factors: tuple[int, ...]  # invariant factors > 1


def matrix_invariants(columns: list[Column], n_rows: int, use_numba=None) -> MatrixInvariants:
    if not columns or n_rows == 0:
        return MatrixInvariants(0, ())
    rows = [c[0].copy() for c in columns]
    vals = [c[1].copy() for c in columns]
    low, overflow = _kernels.reduce_columns(rows, vals, n_rows, use_numba)
    if overflow:
        factors, rank = smith_normal_form(_to_entries(columns))
        return MatrixInvariants(rank, tuple(f for f in factors if f > 1))
    nonzero = [k for k in range(len(rows)) if rows[k].shape[0] > 0]
    if all(abs(int(vals[k][-1])) == 1 for k in nonzero):
        return MatrixInvariants(len(nonzero), ())
    factors, rank = smith_normal_form(_to_entries([(rows[k], vals[k]) for k in nonzero]))
    return MatrixInvariants(rank, tuple(f for f in factors if f > 1))


def _to_entries(columns) -> dict[tuple[int, int], int]:
    out = {}
    for c, (r, v) in enumerate(columns):
        for ri, vi in zip(r.tolist(), v.tolist()):
            out[(ri, c)] = vi
    return out


@dataclass(frozen=True)
class HomologyResult:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        # trailing zero degrees carry no information
        b, t = list(self.betti), list(self.torsion)
        while b and b[-1] == 0 and not t[-1]:
            b.pop()
            t.pop()
        object.__setattr__(self, "betti", tuple(b))
        object.__setattr__(self, "torsion", tuple(tuple(x) for x in t))

    def betti_at(self, k: int) -> int:
        return self.betti[k] if 0 <= k < len(self.betti) else 0

    def torsion_at(self, k: int) -> tuple[int, ...]:
        return self.torsion[k] if 0 <= k < len(self.torsion) else ()

    @property
    def reduced_betti(self) -> tuple[int, ...]:
        """Reduced Betti numbers (the empty complex reports all zeros here)."""
        if not self.betti:
            return ()
        b = list(self.betti)
        b[0] -= 1
        while b and b[-1] == 0 and not self.torsion_at(len(b) - 1):
            b.pop()
        return tuple(b)

    def is_zero(self) -> bool:
        return not self.betti

    def to_dict(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}

    @classmethod
    def from_dict(cls, d) -> "HomologyResult":
        return cls(tuple(d["betti"]), tuple(tuple(t) for t in d["torsion"]))


def chain_homology(C: ChainComplex, use_numba=None) -> HomologyResult:
    inv = [MatrixInvariants(0, ())]
    for k in range(1, len(C.dims)):
        inv.append(matrix_invariants(C.diffs[k], C.dims[k - 1], use_numba))
    inv.append(MatrixInvariants(0, ()))
    betti, torsion = [], []
    for k, n in enumerate(C.dims):
        betti.append(n - inv[k].rank - inv[k + 1].rank)
        torsion.append(inv[k + 1].factors)
    return HomologyResult(tuple(betti), tuple(torsion))


def homology_of(K, use_numba=None) -> HomologyResult:
    """Integral simplicial homology of a complex (plain, G-, or link complex)."""
    return chain_homology(chain_complex(K), use_numba)


# ----------------------------------------------------------------------
# connectivity


@dataclass(frozen=True)
class Connectivity:
    value: float | int
    homological: bool = False  # set where pi_1 might make the true value smaller

    def __str__(self):
        return format_conn(self.value) + ("*" if self.homological else "")


def format_conn(v) -> str:
    if v == INF:
        return "inf"
    if v == -INF:
        return "-inf"
    return str(int(v))


def parse_conn(s) -> float | int:
    if isinstance(s, (int, float)) and not isinstance(s, bool):
        return s if math.isinf(s) else int(s)
    s = str(s).strip().lower()
    if s in ("inf", "+inf", "infinity", "∞"):
        return INF
    if s in ("-inf", "-infinity", "-∞"):
        return -INF
    return int(s)


def connectivity_of(K, use_numba=None) -> Connectivity:
    K = _as_simplicial(K)
    if K.n_vertices == 0:
        return Connectivity(-2)
    if K.n_components > 1:
        return Connectivity(-1)
    H = homology_of(K, use_numba)
    for d in range(1, K.dimension + 1):
        if H.betti_at(d) or H.torsion_at(d):
            k = d - 1
            return Connectivity(k, homological=k >= 1)
    return Connectivity(INF, homological=K.dimension >= 2)


# ----------------------------------------------------------------------
# maps, cones and pushouts


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """Vertex map between plain complexes carrying simplices to simplices."""
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: tuple[int, ...]

    def image(self, s):
        return tuple(sorted({self.vertex_map[v] for v in s}))


def chain_map_columns(f: SimplicialMap, k: int, index_y) -> list[Column]:
    """Columns of f_k : C_k(X) -> C_k(Y); degenerate images map to zero."""
    cols = []
    X = f.source
    for s in X.by_dim[k] if k <= X.dimension else ():
        img = [f.vertex_map[v] for v in s]
        if len(set(img)) < len(img):
            cols.append(_col([]))
            continue
        sign = _perm_sign(img)
        cols.append(_col([(index_y[k][tuple(sorted(img))], sign)]))
    return cols


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _shift(col: Column, offset: int, scale: int = 1) -> list[tuple[int, int]]:
    return [(int(r) + offset, int(v) * scale) for r, v in zip(col[0], col[1])]


def _dim(C: ChainComplex, k: int) -> int:
    return C.dims[k] if 0 <= k < len(C.dims) else 0


def _diff(C: ChainComplex, k: int, j: int) -> Column:
    if k < 1 or k >= len(C.dims):
        return _col([])
    return C.diffs[k][j]


def mapping_cone(A: ChainComplex, B: ChainComplex, f: list[list[Column]]) -> ChainComplex:
    """Cone_n = A_{n-1} + B_n with d(a, b) = (-da, f a + db).

    ``f[k]`` holds the columns of f_k : A_k -> B_k.  Homology of the cone is the
    relative homology of the mapping cylinder.
    """
    top = max(len(A.dims), len(B.dims) - 1)
    dims = [_dim(A, n - 1) + _dim(B, n) for n in range(top + 1)]
    diffs: list[list[Column]] = [[]]
    for n in range(1, top + 1):
        off_b = _dim(A, n - 2)  # rows of degree n-1: A_{n-2} then B_{n-1}
        cols = []
        for j in range(_dim(A, n - 1)):
            pairs = _shift(_diff(A, n - 1, j), 0, -1)
            if n - 1 < len(f) and j < len(f[n - 1]):
                pairs += _shift(f[n - 1][j], off_b)
            cols.append(_col(pairs))
        for j in range(_dim(B, n)):
            cols.append(_col(_shift(_diff(B, n, j), off_b)))
        diffs.append(cols)
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
        diffs.pop()
    return ChainComplex(dims, diffs)


def map_connectivity(f: SimplicialMap, use_numba=None) -> Connectivity:
    """(least degree with nonzero cone homology) - 1; +inf when the cone is acyclic."""
    X, Y = f.source, f.target
    if X.n_vertices == 0 and Y.n_vertices == 0:
        return Connectivity(INF)
    if Y.n_vertices == 0:
        # a map out of a nonempty space into the empty one cannot exist
        raise ValueError("map into an empty complex from a nonempty one")
    A, B = chain_complex(X), chain_complex(Y)
    iy = simplex_index(Y)
    fc = [chain_map_columns(f, k, iy) for k in range(X.dimension + 1)]
    H = chain_homology(mapping_cone(A, B, fc), use_numba)
    for d in range(len(H.betti)):
        if H.betti_at(d) or H.torsion_at(d):
            k = d - 1
            return Connectivity(k, homological=k >= 1 and max(X.dimension, Y.dimension) >= 1)
    return Connectivity(INF, homological=max(X.dimension, Y.dimension) >= 1)


def _commutes(i: SimplicialMap, u: SimplicialMap, j: SimplicialMap, v: SimplicialMap):
    Z = u.source
    for w in range(Z.n_vertices):
        if i.vertex_map[u.vertex_map[w]] != j.vertex_map[v.vertex_map[w]]:
            return (w,)
    return None


def double_mapping_cylinder(u: SimplicialMap, v: SimplicialMap):
    """Chain-level homotopy pushout of X <-u- Z -v-> Y.

    Degree n is X_n + Z_{n-1} + Y_n with d(x) = dx, d(z) = (u z, -dz, -v z),
    d(y) = dy.  Returns the complex and the block offsets per degree.
    """
    Z, X, Y = u.source, u.target, v.target
    CX, CZ, CY = chain_complex(X), chain_complex(Z), chain_complex(Y)
    ix, iy = simplex_index(X), simplex_index(Y)
    uc = [chain_map_columns(u, k, ix) for k in range(Z.dimension + 1)]
    vc = [chain_map_columns(v, k, iy) for k in range(Z.dimension + 1)]
    top = max(X.dimension, Y.dimension, Z.dimension + 1, 0)
    dims = [_dim(CX, n) + _dim(CZ, n - 1) + _dim(CY, n) for n in range(top + 1)]

    def offsets(n):
        return 0, _dim(CX, n), _dim(CX, n) + _dim(CZ, n - 1)

    diffs: list[list[Column]] = [[]]
    for n in range(1, top + 1):
        ox, oz, oy = offsets(n - 1)
        cols = []
        for j in range(_dim(CX, n)):
            cols.append(_col(_shift(_diff(CX, n, j), ox)))
        for j in range(_dim(CZ, n - 1)):
            pairs = _shift(_diff(CZ, n - 1, j), oz, -1)
            pairs += _shift(uc[n - 1][j], ox)
            pairs += _shift(vc[n - 1][j], oy, -1)
            cols.append(_col(pairs))
        for j in range(_dim(CY, n)):
            cols.append(_col(_shift(_diff(CY, n, j), oy)))
        diffs.append(cols)
    return ChainComplex(dims, diffs), offsets


def pushout_cone_check(u: SimplicialMap, v: SimplicialMap, i: SimplicialMap, j: SimplicialMap,
                       use_numba=None) -> bool:
    """True iff the strictly commuting square Z -> X, Z -> Y, X -> W, Y -> W is
    homologically cocartesian (the comparison from the double mapping cylinder
    to W has acyclic cone)."""
    w = _commutes(i, u, j, v)
    if w is not None:
        raise NonCommuting(f"i.u and j.v disagree on vertex {w[0]}", witness=w)
    X, Y, W = u.target, v.target, i.target
    D, offsets = double_mapping_cylinder(u, v)
    iw = simplex_index(W)
    ic = [chain_map_columns(i, k, iw) for k in range(X.dimension + 1)]
    jc = [chain_map_columns(j, k, iw) for k in range(Y.dimension + 1)]
    CZ = chain_complex(u.source)
    phi: list[list[Column]] = []
    for n in range(len(D.dims)):
        cols = []
        cols += ic[n] if n < len(ic) else []
        cols += [_col([])] * _dim(CZ, n - 1)
        cols += jc[n] if n < len(jc) else []
        phi.append(cols)
    H = chain_homology(mapping_cone(D, chain_complex(W), phi), use_numba)
    return H.is_zero()

