"""Dense O(n^3) reference computations used by tests and the benchmark.

These are correctness baselines, not fast paths. Householder QR and the
triangular inverse behind cond1 go through LAPACK; Cholesky and the
substitutions are written out so that failures report the pivot.
"""

import numpy as np
import scipy.linalg

from .counters import bump
from .exceptions import NotPositiveDefinite, RankDeficient, ShapeError, SingularTriangular
from .toeplitz_core import matvec_transpose


def norm1(M):
    """Matrix 1-norm (max absolute column sum)."""
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return 0.0
    return float(np.abs(M).sum(axis=0).max())


def gram(T, alpha=0.0):
    """A^T A + alpha I, exactly symmetric (upper triangle mirrored)."""
    A = T.dense()
    G = A.T @ A
    G = np.triu(G) + np.triu(G, 1).T
    G[np.diag_indices_from(G)] += alpha
    return G


def householder_qr(A):
    """R factor of A with positive diagonal."""
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    if m < n:
        raise ShapeError(f"need m >= n, got {A.shape}")
    R = np.linalg.qr(A, mode="r")[:n]
    d = np.diag(R)
    if np.any(d == 0):
        raise RankDeficient("zero pivot in Householder QR")
    return np.sign(d)[:, None] * R


def cholesky(S):
    """Upper-triangular R with R^T R = S.

    LAPACK does the work; on failure the elimination is replayed by hand to
    report the failing pivot index.
    """
    S = np.array(S, dtype=float)
    n = S.shape[0]
    if S.shape != (n, n):
        raise ShapeError(f"cholesky needs a square matrix, got {S.shape}")
    try:
        return scipy.linalg.cholesky(S, lower=False)
    except np.linalg.LinAlgError:
        pass
    R = np.triu(S)
    for k in range(n):
        piv = R[k, k]
        if not piv > 0:
            raise NotPositiveDefinite(f"non-positive pivot {piv!r} at index {k}", pivot=k)
        R[k, k] = np.sqrt(piv)
        R[k, k + 1:] /= R[k, k]
        R[k + 1:, k + 1:] -= np.outer(R[k, k + 1:], R[k, k + 1:])
    raise NotPositiveDefinite("LAPACK rejected the matrix as not positive definite",
                              pivot=n - 1)


def _check_diag(R):
    d = np.diag(R)
    if np.any(d == 0) or not np.all(np.isfinite(d)):
        raise SingularTriangular("triangular matrix has a zero or non-finite diagonal")


def tri_solve_forward(R, rhs, tally=None):
    """Solve R^T w = rhs for upper-triangular R."""
    R = np.asarray(R, dtype=float)
    _check_diag(R)
    n = R.shape[0]
    w = np.array(rhs, dtype=float)
    for i in range(n):
        w[i] = (w[i] - np.dot(R[:i, i], w[:i])) / R[i, i]
    bump(tally, n * (n + 1) // 2)
    return w


def tri_solve_backward(R, rhs, tally=None):
    """Solve R x = rhs for upper-triangular R."""
    R = np.asarray(R, dtype=float)
    _check_diag(R)
    n = R.shape[0]
    x = np.array(rhs, dtype=float)
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - np.dot(R[i, i + 1:], x[i + 1:])) / R[i, i]
    bump(tally, n * (n + 1) // 2)
    return x


def cond1_triangular(R):
    """kappa_1(R) = ||R||_1 ||R^{-1}||_1 with R^{-1} formed explicitly."""
    R = np.asarray(R, dtype=float)
    _check_diag(R)
    Rinv = scipy.linalg.solve_triangular(R, np.eye(R.shape[0]), lower=False)
    return norm1(R) * norm1(Rinv)


def displacement(B):
    """(D B)[i, j] = B[i+1, j+1] - B[i, j]; zero exactly when B is Toeplitz."""
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or min(B.shape) < 2:
        raise ShapeError(f"displacement needs m, n >= 2, got {B.shape}")
    return B[1:, 1:] - B[:-1, :-1]


def normal_equations_solve(T, b, alpha=0.0):
    """x from the Cholesky factor of A^T A (the e3c comparison path)."""
    Rc = cholesky(gram(T, alpha))
    d = matvec_transpose(T, b)
    return tri_solve_backward(Rc, tri_solve_forward(Rc, d)), Rc
