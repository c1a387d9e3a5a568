"""
Hankel systems
==============

Reversing the rows of a Hankel matrix gives a Toeplitz matrix with the same
Gram matrix, so Hankel systems go through the Toeplitz solver unchanged.
"""

import numpy as np

from toeplitz_sne import build_hankel, hankel_adapter, solve

rng = np.random.default_rng(3)
n = 6
col = rng.standard_normal(n)
row = np.r_[col[-1], rng.standard_normal(n - 1)]
H = build_hankel(col, row)
print(np.round(H.dense(), 2))

x_true = np.arange(1.0, n + 1)
b = H.dense() @ x_true

T, Jb = hankel_adapter(H, b)
print("flipped rows equal the Toeplitz form:", np.array_equal(T.dense(), H.dense()[::-1]))
print("x =", solve(T, Jb).x)
