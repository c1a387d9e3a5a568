"""
Toeplitz least squares
======================

For a tall m x n Toeplitz matrix the same factor gives the least-squares
solution without ever forming Q. Compare against LAPACK on the dense matrix.
"""

import numpy as np

from toeplitz_sne import build_toeplitz, least_squares

rng = np.random.default_rng(2)
m, n = 400, 120

# a smooth kernel plus noise, as in a deconvolution problem
t = np.arange(m + n - 1) - (m - 1)
d = np.exp(-0.5 * (t / 6.0) ** 2) + 0.05 * rng.standard_normal(t.size)
T = build_toeplitz(d[m - 1::-1], d[m - 1:])

b = rng.standard_normal(m)
rep = least_squares(T, b)

x_ref, *_ = np.linalg.lstsq(T.dense(), b, rcond=None)
print("difference to lstsq", np.linalg.norm(rep.x - x_ref) / np.linalg.norm(x_ref))
print("||A^T r||          ", rep.normal_residual_2norm)
print("||r||              ", rep.residual_2norm, "vs lstsq", np.linalg.norm(T.dense() @ x_ref - b))
