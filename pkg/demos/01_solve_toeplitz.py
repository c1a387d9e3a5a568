"""
Solving a Toeplitz system
=========================

A Toeplitz matrix is stored as its first column and first row. ``solve``
builds the triangular factor R of A^T A in O(n^2) work and then solves
R^T R x = A^T b.
"""

import numpy as np

from toeplitz_sne import build_toeplitz, factor, matvec, solve

rng = np.random.default_rng(1)
n = 300

d = rng.standard_normal(2 * n - 1)
T = build_toeplitz(d[n - 1::-1], d[n - 1:])
print("shape", T.shape, "stored numbers", T.diagonals.size)

x_true = rng.standard_normal(n)
b = matvec(T, x_true)  # O(n) memory, no dense matrix

report = solve(T, b)
print("relative error   ", np.linalg.norm(report.x - x_true) / np.linalg.norm(x_true))
print("residual ||Ax-b||", report.residual_2norm)
print("multiplications  ", report.tally, f"({report.tally / n**2:.1f} n^2)")

# The factor on its own: R^T R reproduces A^T A to a few ulps per entry.
F = factor(T)
A = T.dense()
print("||R^T R - A^T A|| / ||A^T A||",
      np.linalg.norm(F.rows.T @ F.rows - A.T @ A, 1) / np.linalg.norm(A.T @ A, 1))
