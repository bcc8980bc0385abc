"""Dense F2 kernels.

Every kernel has a numba ``@njit`` implementation and a pure-numpy
fallback with identical semantics.  The numba path is used when numba
imports cleanly and ``FLOERCERT_DISABLE_NUMBA`` is unset (or ``0``);
``BACKEND`` records which one is active.

Matrices are ``uint8`` arrays holding 0/1.  Three-valued vectors (used by
the tensor-word sweep) hold 0, 1 or ``UNKNOWN`` (= 2).
"""

from __future__ import annotations

import os

import numpy as np

UNKNOWN = 2


def _numba_requested() -> bool:
    return os.environ.get("FLOERCERT_DISABLE_NUMBA", "").strip() in ("", "0")


try:  # pragma: no cover - exercised implicitly depending on environment
    if not _numba_requested():
        raise ImportError("numba disabled by FLOERCERT_DISABLE_NUMBA")
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(f):
            return f

        return wrap


# ---------------------------------------------------------------------------
# numpy reference path
# ---------------------------------------------------------------------------


def f2_rank_numpy(mat: np.ndarray) -> int:
    a = np.array(mat, dtype=np.uint8, copy=True) & 1
    if a.ndim != 2 or a.size == 0:
        return 0
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(a[rank:, col])[0]
        if pivots.size == 0:
            continue
        p = rank + pivots[0]
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        hits = np.nonzero(a[:, col])[0]
        hits = hits[hits != rank]
        if hits.size:
            a[hits] ^= a[rank]
        rank += 1
    return rank


def tensor_sweep_numpy(s1, s2, s3, s4) -> tuple[int, int]:
    """Count 4-slot words whose three-valued product is 1 / UNKNOWN."""
    vals = [np.asarray(s, dtype=np.int8) for s in (s1, s2, s3, s4)]
    nonzero = [v != 0 for v in vals]
    unknown = [v == UNKNOWN for v in vals]
    nz = (
        nonzero[0][:, None, None, None]
        & nonzero[1][None, :, None, None]
        & nonzero[2][None, None, :, None]
        & nonzero[3][None, None, None, :]
    )
    unk = (
        unknown[0][:, None, None, None]
        | unknown[1][None, :, None, None]
        | unknown[2][None, None, :, None]
        | unknown[3][None, None, None, :]
    )
    n_unknown = int(np.count_nonzero(nz & unk))
    n_one = int(np.count_nonzero(nz)) - n_unknown
    return n_one, n_unknown


# ---------------------------------------------------------------------------
# numba path
# ---------------------------------------------------------------------------


@njit(cache=True)
def _f2_rank_jit(a):
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        p = -1
        for r in range(rank, rows):
            if a[r, col]:
                p = r
                break
        if p < 0:
            continue
        if p != rank:
            for c in range(cols):
                t = a[rank, c]
                a[rank, c] = a[p, c]
                a[p, c] = t
        for r in range(rows):
            if r != rank and a[r, col]:
                for c in range(col, cols):
                    a[r, c] ^= a[rank, c]
        rank += 1
    return rank


@njit(cache=True)
def _tensor_sweep_jit(s1, s2, s3, s4):
    n_one = 0
    n_unk = 0
    for i in range(s1.shape[0]):
        x1 = s1[i]
        if x1 == 0:
            continue
        for j in range(s2.shape[0]):
            x2 = s2[j]
            if x2 == 0:
                continue
            for k in range(s3.shape[0]):
                x3 = s3[k]
                if x3 == 0:
                    continue
                for m in range(s4.shape[0]):
                    x4 = s4[m]
                    if x4 == 0:
                        continue
                    if x1 == 2 or x2 == 2 or x3 == 2 or x4 == 2:
                        n_unk += 1
                    else:
                        n_one += 1
    return n_one, n_unk


def f2_rank_numba(mat: np.ndarray) -> int:
    a = np.ascontiguousarray(np.array(mat, dtype=np.uint8) & 1)
    if a.ndim != 2 or a.size == 0:
        return 0
    return int(_f2_rank_jit(a))


def tensor_sweep_numba(s1, s2, s3, s4) -> tuple[int, int]:
    arrs = [np.ascontiguousarray(np.asarray(s, dtype=np.int8)) for s in (s1, s2, s3, s4)]
    n_one, n_unk = _tensor_sweep_jit(*arrs)
    return int(n_one), int(n_unk)


if NUMBA_AVAILABLE:
    BACKEND = "numba"
    f2_rank = f2_rank_numba
    tensor_sweep = tensor_sweep_numba
else:  # pragma: no cover
    BACKEND = "numpy"
    f2_rank = f2_rank_numpy
    tensor_sweep = tensor_sweep_numpy


def in_column_space(mat: np.ndarray, vec: np.ndarray) -> bool:
    """True iff ``vec`` lies in the F2 column space of ``mat``."""
    mat = np.asarray(mat, dtype=np.uint8)
    vec = np.asarray(vec, dtype=np.uint8).reshape(-1, 1)
    if mat.shape[0] != vec.shape[0]:
        raise ValueError("DIMENSION_MISMATCH: matrix has %d rows, vector has %d entries"
                         % (mat.shape[0], vec.shape[0]))
    if mat.shape[1] == 0:
        return not vec.any()
    return f2_rank(mat) == f2_rank(np.hstack([mat, vec]))


def tri_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of three-valued F2 matrices (entries 0, 1, UNKNOWN).

    An entry is definite when every contributing product is definite;
    otherwise it is UNKNOWN.  Sound: a definite 0 really is 0 for every
    completion of the unknown entries.
    """
    a = np.asarray(a, dtype=np.int8)
    b = np.asarray(b, dtype=np.int8)
    ones = ((a == 1).astype(np.int64) @ (b == 1).astype(np.int64)) % 2
    maybe = (a != 0).astype(np.int64) @ (b != 0).astype(np.int64)
    sure = (a == 1).astype(np.int64) @ (b == 1).astype(np.int64)
    out = ones.astype(np.int8)
    out[maybe > sure] = UNKNOWN
    return out


__all__ = [
    "BACKEND",
    "NUMBA_AVAILABLE",
    "UNKNOWN",
    "f2_rank",
    "f2_rank_numba",
    "f2_rank_numpy",
    "in_column_space",
    "tensor_sweep",
    "tensor_sweep_numba",
    "tensor_sweep_numpy",
    "tri_matmul",
]
