import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isovariant import _kernels
from isovariant.homology import matrix_invariants, smith_normal_form
from oracles import invariant_factors, rational_rank

pytestmark = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def _columns(M):
    cols = []
    for c in range(len(M[0])):
        rows = [r for r in range(len(M)) if M[r][c]]
        cols.append((np.array(rows, dtype=np.int64),
                     np.array([M[r][c] for r in rows], dtype=np.int64)))
    return cols


matrices = st.integers(2, 7).flatmap(lambda m: st.integers(2, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                       min_size=m, max_size=m)))


@settings(max_examples=60)
@given(matrices)
def test_numba_and_numpy_paths_agree(M):
    a = matrix_invariants(_columns(M), len(M), use_numba=True)
    b = matrix_invariants(_columns(M), len(M), use_numba=False)
    assert a == b
    assert a.rank == rational_rank(M)


@settings(max_examples=25)
@given(matrices)
def test_kernel_factors_match_minors_oracle(M):
    got = matrix_invariants(_columns(M), len(M))
    want = [f for f in invariant_factors(M) if f > 1]
    assert list(got.factors) == want


def test_reduced_columns_have_distinct_pivots():
    rng = random.Random(3)
    M = [[rng.choice([0, 0, 1, -1, 2]) for _ in range(12)] for _ in range(10)]
    for flag in (True, False):
        cols = _columns(M)
        rows = [c[0].copy() for c in cols]
        vals = [c[1].copy() for c in cols]
        low, overflow = _kernels.reduce_columns(rows, vals, 10, use_numba=flag)
        assert not overflow
        pivots = [int(l) for l in low if l >= 0]
        assert len(pivots) == len(set(pivots)) == rational_rank(M)


@pytest.mark.parametrize("flag", [True, False])
def test_overflow_falls_back_to_exact_snf(monkeypatch, flag):
    monkeypatch.setattr(_kernels, "OVERFLOW_BOUND", 1)
    M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    inv = matrix_invariants(_columns(M), 3, use_numba=flag)
    assert inv.rank == 3 and inv.factors == (2, 6, 12)


def test_env_flag_selects_path(monkeypatch):
    monkeypatch.setenv("ISOVARIANT_DISABLE_NUMBA", "1")
    assert not _kernels.numba_enabled()
    monkeypatch.setenv("ISOVARIANT_DISABLE_NUMBA", "0")
    assert _kernels.numba_enabled()
    monkeypatch.delenv("ISOVARIANT_DISABLE_NUMBA")
    assert _kernels.numba_enabled()


def test_snf_handles_huge_entries():
    big = 10 ** 30
    assert smith_normal_form([[big, 0], [0, 2 * big]]) == ([big, 2 * big], 2)
