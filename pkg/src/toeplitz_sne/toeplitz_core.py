"""Toeplitz and Hankel matrix representation.

A real m x n Toeplitz matrix has entries ``A[i, j] = a[j - i]`` and is stored
as its first column ``(a_0, a_-1, ..., a_{1-m})`` and first row
``(a_0, a_1, ..., a_{n-1})``. Nothing here allocates an m x n array except
:meth:`ToeplitzSpec.dense`, which exists for oracles and tests.
"""

from dataclasses import dataclass

import numpy as np

from .counters import bump
from .exceptions import MismatchedCorner, NonFiniteInput, ShapeError


def _frozen_vector(values, name):
    arr = np.array(values, dtype=float).reshape(-1)
    if arr.size == 0:
        raise ShapeError(f"{name} must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ToeplitzSpec:
    """An m x n Toeplitz matrix (m >= n) given by first column and first row."""

    col: np.ndarray
    row: np.ndarray

    @property
    def m(self):
        return self.col.size

    @property
    def n(self):
        return self.row.size

    @property
    def shape(self):
        return (self.m, self.n)

    @property
    def diagonals(self):
        """Vector ``d`` of length m+n-1 with ``d[p] = a[p - (m-1)]``."""
        return np.concatenate([self.col[:0:-1], self.row])

    def entry(self, i, j):
        return self.row[j - i] if j >= i else self.col[i - j]

    def dense(self):
        """Materialize the full matrix. Oracle/test use only."""
        d = self.diagonals
        return np.lib.stride_tricks.sliding_window_view(d, self.n)[::-1].copy()

    def norm1(self):
        """Max absolute column sum, in O(mn) without materializing."""
        ad = np.abs(self.diagonals)
        # column j holds d[j : j+m] (reversed)
        csum = np.cumsum(np.concatenate([[0.0], ad]))
        m, n = self.shape
        return float(np.max(csum[m:m + n] - csum[0:n]))

    def __repr__(self):
        return f"ToeplitzSpec(m={self.m}, n={self.n})"


@dataclass(frozen=True, eq=False)
class HankelSpec:
    """An m x n Hankel matrix ``H[i, j] = h[i + j]``.

    ``col`` is the first column ``(h_0, ..., h_{m-1})`` and ``row`` is the
    last row ``(h_{m-1}, ..., h_{m+n-2})``.
    """

    col: np.ndarray
    row: np.ndarray

    @property
    def m(self):
        return self.col.size

    @property
    def n(self):
        return self.row.size

    def dense(self):
        h = np.concatenate([self.col, self.row[1:]])
        return np.lib.stride_tricks.sliding_window_view(h, self.n).copy()


@dataclass(frozen=True)
class PartitionVectors:
    """Border vectors of the two ways of splitting A around A_{-1}.

    ``y`` is the first row without a_0, ``z`` the first column without a_0,
    ``zbar`` the last row without its last entry and ``ybar`` the last
    column without its last entry.
    """

    y: np.ndarray
    z: np.ndarray
    ybar: np.ndarray
    zbar: np.ndarray


def build_toeplitz(col, row):
    col = _frozen_vector(col, "col")
    row = _frozen_vector(row, "row")
    if col[0] != row[0]:
        raise MismatchedCorner(f"col[0]={col[0]!r} differs from row[0]={row[0]!r}")
    if col.size < row.size:
        raise ShapeError(f"need m >= n, got m={col.size}, n={row.size}")
    return ToeplitzSpec(col, row)


def build_hankel(col, row):
    col = _frozen_vector(col, "col")
    row = _frozen_vector(row, "row")
    if col[-1] != row[0]:
        raise MismatchedCorner(f"col[-1]={col[-1]!r} differs from row[0]={row[0]!r}")
    if col.size < row.size:
        raise ShapeError(f"need m >= n, got m={col.size}, n={row.size}")
    return HankelSpec(col, row)


def _as_vector(v, size, what):
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.size != size:
        raise ShapeError(f"{what}: expected length {size}, got {v.size}")
    return v


def matvec(T, v, tally=None):
    """Return ``A @ v`` by direct summation (mn multiplications)."""
    v = _as_vector(v, T.n, "matvec")
    bump(tally, T.m * T.n)
    # (Av)_i = sum_j d[j - i + m - 1] v_j
    return np.correlate(T.diagonals, v, "valid")[::-1].copy()


def matvec_transpose(T, v, tally=None):
    """Return ``A.T @ v`` by direct summation (mn multiplications)."""
    v = _as_vector(v, T.m, "matvec_transpose")
    bump(tally, T.m * T.n)
    # (A^T v)_j = sum_i d[j - i + m - 1] v_i
    return np.convolve(T.diagonals, v, "valid")


def submatrix(T):
    """A_{-1}: the (m-1) x (n-1) Toeplitz matrix A[1:, 1:] == A[:-1, :-1]."""
    if T.n < 2:
        raise ShapeError("A_{-1} needs n >= 2")
    return ToeplitzSpec(T.col[:-1], T.row[:-1])


def partition_vectors(T):
    if T.n < 2:
        raise ShapeError("partition vectors need n >= 2")
    m, n = T.shape
    y = T.row[1:].copy()
    z = T.col[1:].copy()
    # last column without its last entry: a_{n-1}, a_{n-2}, ..., a_{n-m+1}
    ybar = np.array([T.entry(i, n - 1) for i in range(m - 1)])
    # last row without its last entry: a_{1-m}, ..., a_{n-m-1}
    zbar = np.array([T.entry(m - 1, j) for j in range(n - 1)])
    return PartitionVectors(y=y, z=z, ybar=ybar, zbar=zbar)


def hankel_adapter(H, b):
    """Turn ``H x = b`` into the Toeplitz system ``(J H) x = J b``.

    J reverses row order, so (JH)^T (JH) == H^T H exactly.
    """
    b = _as_vector(b, H.m, "hankel_adapter")
    T = build_toeplitz(H.col[::-1], H.row)
    return T, b[::-1].copy()


def toeplitz_to_hankel(T):
    """Inverse of :func:`hankel_adapter` on the matrix: returns J T."""
    return build_hankel(T.col[::-1], T.row)
