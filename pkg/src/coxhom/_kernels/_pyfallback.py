"""Pure numpy implementations of the hot permutation kernels.

Rows are uint16 arrays of a fixed width d; row i maps point r to row[i, r].
Composition is function composition: (a o b)(r) = a[b[r]].
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def compose_rows(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Rowwise A[i] o B[i]."""
    return np.take_along_axis(A, B, axis=1)


def compose_many_one(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Rowwise A[i] o b."""
    return A[:, b]


def compose_one_many(a: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Rowwise a o B[i]."""
    return a[B]


def invert_rows(A: np.ndarray) -> np.ndarray:
    out = np.empty_like(A)
    idx = np.broadcast_to(np.arange(A.shape[1], dtype=A.dtype), A.shape)
    np.put_along_axis(out, A, idx, axis=1)
    return out


def conjugate_by(g: np.ndarray, ginv: np.ndarray, U: np.ndarray) -> np.ndarray:
    """Rowwise g o U[i] o ginv."""
    return g[U[:, ginv]]


def commute_mask(U: np.ndarray, t: np.ndarray) -> np.ndarray:
    return np.all(U[:, t] == t[U], axis=1)


def braid_mask(U: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Mask of rows u with u o t o u == t o u o t."""
    utu = np.take_along_axis(U, t[U], axis=1)
    tut = t[U[:, t]]
    return np.all(utu == tut, axis=1)


def commute_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = np.empty((A.shape[0], B.shape[0]), dtype=bool)
    for k in range(B.shape[0]):
        out[:, k] = commute_mask(A, B[k])
    return out


def braid_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = np.empty((A.shape[0], B.shape[0]), dtype=bool)
    for k in range(B.shape[0]):
        out[:, k] = braid_mask(A, B[k])
    return out


class RowSet:
    """Set of rows keyed by their raw bytes; exact deduplication."""

    def __init__(self, width: int):
        self.width = width
        self._seen: set[bytes] = set()

    def __len__(self) -> int:
        return len(self._seen)

    def add_new(self, rows: np.ndarray) -> np.ndarray:
        """Insert each row; return the mask of rows not seen before."""
        m = rows.shape[0]
        out = np.zeros(m, dtype=bool)
        stride = rows.shape[1] * rows.dtype.itemsize
        blob = np.ascontiguousarray(rows).tobytes()
        seen = self._seen
        for i in range(m):
            key = blob[i * stride : (i + 1) * stride]
            if key not in seen:
                seen.add(key)
                out[i] = True
        return out
