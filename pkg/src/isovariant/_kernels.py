"""Integer column reduction of sparse boundary matrices.

Two interchangeable implementations of the same algorithm:

* ``reduce_columns_numba`` -- compiled with numba's ``njit``;
* ``reduce_columns_numpy`` -- plain Python/numpy, used when numba is missing
  or when ``ISOVARIANT_DISABLE_NUMBA`` is set to a non-empty value other than "0".

A column is a pair of arrays ``(rows, values)`` with strictly increasing
``rows``.  Reduction uses only unimodular column operations, so the nonzero
columns that remain have pairwise distinct lowest rows ("pivots"); the rank is
their count.  Entries are int64; if any magnitude exceeds ``OVERFLOW_BOUND``
the kernel stops and reports it, and callers switch to exact Python integers.
"""
from __future__ import annotations

import os

import numpy as np

OVERFLOW_BOUND = 1 << 30  # keeps every product and pairwise sum inside int64

try:  # pragma: no cover - exercised implicitly
    from numba import njit
    from numba.typed import List as NumbaList
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    flag = os.environ.get("ISOVARIANT_DISABLE_NUMBA", "")
    return HAVE_NUMBA and flag in ("", "0")


def _xgcd(a, b):
    """(g, x, y) with g = x*a + y*b = gcd(a, b) > 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b != 0:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ----------------------------------------------------------------------
# numpy path


def _combine_numpy(ri, vi, ci, rj, vj, cj):
    """ci * col_i + cj * col_j with zeros dropped."""
    rows = np.concatenate((ri, rj))
    vals = np.concatenate((vi * ci, vj * cj))
    uniq, inv = np.unique(rows, return_inverse=True)
    acc = np.zeros(uniq.shape[0], dtype=np.int64)
    np.add.at(acc, inv, vals)
    keep = acc != 0
    return uniq[keep], acc[keep]


def reduce_columns_numpy(rows_list, vals_list, n_rows):
    """Reduce columns in place; returns (pivot_row_per_column, overflowed)."""
    n_cols = len(rows_list)
    pivot_col = np.full(n_rows, -1, dtype=np.int64)
    low = np.full(n_cols, -1, dtype=np.int64)
    for j in range(n_cols):
        rj, vj = rows_list[j], vals_list[j]
        while rj.shape[0] > 0:
            l = int(rj[-1])
            i = int(pivot_col[l])
            if i < 0:
                pivot_col[l] = j
                low[j] = l
                break
            ri, vi = rows_list[i], vals_list[i]
            a, b = int(vj[-1]), int(vi[-1])
            if a % b == 0:
                rj, vj = _combine_numpy(ri, vi, -(a // b), rj, vj, 1)
            else:
                g, x, y = _xgcd(b, a)
                new_i = _combine_numpy(ri, vi, x, rj, vj, y)
                rj, vj = _combine_numpy(ri, vi, a // g, rj, vj, -(b // g))
                rows_list[i], vals_list[i] = new_i
                if new_i[1].shape[0] and np.abs(new_i[1]).max() > OVERFLOW_BOUND:
                    rows_list[j], vals_list[j] = rj, vj
                    return low, True
            if vj.shape[0] and np.abs(vj).max() > OVERFLOW_BOUND:
                rows_list[j], vals_list[j] = rj, vj
                return low, True
        rows_list[j], vals_list[j] = rj, vj
    return low, False


# ----------------------------------------------------------------------
# numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _xgcd_nb(a, b):
        x0, y0, x1, y1 = 1, 0, 0, 1
        while b != 0:
            q = a // b
            a, b = b, a - q * b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        if a < 0:
            a, x0, y0 = -a, -x0, -y0
        return a, x0, y0

    @njit(cache=True)
    def _combine_nb(ri, vi, ci, rj, vj, cj):
        n = ri.shape[0] + rj.shape[0]
        rows = np.empty(n, dtype=np.int64)
        vals = np.empty(n, dtype=np.int64)
        p = q = k = 0
        while p < ri.shape[0] or q < rj.shape[0]:
            if q >= rj.shape[0] or (p < ri.shape[0] and ri[p] < rj[q]):
                r, v = ri[p], ci * vi[p]
                p += 1
            elif p >= ri.shape[0] or rj[q] < ri[p]:
                r, v = rj[q], cj * vj[q]
                q += 1
            else:
                r, v = ri[p], ci * vi[p] + cj * vj[q]
                p += 1
                q += 1
            if v != 0:
                rows[k] = r
                vals[k] = v
                k += 1
        return rows[:k], vals[:k]

    @njit(cache=True)
    def _max_abs(v):
        m = 0
        for x in v:
            if abs(x) > m:
                m = abs(x)
        return m

    @njit(cache=True)
    def _reduce_nb(rows_list, vals_list, n_rows, bound):
        n_cols = len(rows_list)
        pivot_col = np.full(n_rows, -1, dtype=np.int64)
        low = np.full(n_cols, -1, dtype=np.int64)
        for j in range(n_cols):
            rj = rows_list[j]
            vj = vals_list[j]
            while rj.shape[0] > 0:
                l = rj[rj.shape[0] - 1]
                i = pivot_col[l]
                if i < 0:
                    pivot_col[l] = j
                    low[j] = l
                    break
                ri = rows_list[i]
                vi = vals_list[i]
                a = vj[vj.shape[0] - 1]
                b = vi[vi.shape[0] - 1]
                if a % b == 0:
                    rj, vj = _combine_nb(ri, vi, -(a // b), rj, vj, 1)
                else:
                    g, x, y = _xgcd_nb(b, a)
                    ni, nv = _combine_nb(ri, vi, x, rj, vj, y)
                    rj, vj = _combine_nb(ri, vi, a // g, rj, vj, -(b // g))
                    rows_list[i] = ni
                    vals_list[i] = nv
                    if _max_abs(nv) > bound:
                        rows_list[j] = rj
                        vals_list[j] = vj
                        return low, True
                if _max_abs(vj) > bound:
                    rows_list[j] = rj
                    vals_list[j] = vj
                    return low, True
            rows_list[j] = rj
            vals_list[j] = vj
        return low, False

    def reduce_columns_numba(rows_list, vals_list, n_rows):
        rl = NumbaList()
        vl = NumbaList()
        for r, v in zip(rows_list, vals_list):
            rl.append(np.ascontiguousarray(r, dtype=np.int64))
            vl.append(np.ascontiguousarray(v, dtype=np.int64))
        if len(rl) == 0:
            return np.zeros(0, dtype=np.int64), False
        low, overflow = _reduce_nb(rl, vl, n_rows, OVERFLOW_BOUND)
        for k in range(len(rl)):
            rows_list[k] = rl[k]
            vals_list[k] = vl[k]
        return low, overflow

else:  # pragma: no cover
    reduce_columns_numba = None


def reduce_columns(rows_list, vals_list, n_rows, use_numba: bool | None = None):
    """Dispatch to the compiled kernel unless disabled."""
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba and HAVE_NUMBA:
        return reduce_columns_numba(rows_list, vals_list, n_rows)
    return reduce_columns_numpy(rows_list, vals_list, n_rows)
