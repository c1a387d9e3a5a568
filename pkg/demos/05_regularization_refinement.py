"""
Regularization and iterative refinement
=======================================

When A^T A is singular, or a leading block is, the lattice breaks down. Adding
alpha I to A^T A only changes the first row of the factor. Separately, one
step of refinement with the same factor cleans up the residual.
"""

import numpy as np

from toeplitz_sne import (FactorOptions, NumericalBreakdown, SolveOptions, build_toeplitz,
                          factor, iterative_refinement, matvec, solve)

n = 8
# zero first column: A^T A is singular and the very first pivot vanishes
T = build_toeplitz(np.zeros(n), np.r_[0.0, np.arange(1.0, n)])
try:
    factor(T)
except NumericalBreakdown as exc:
    print("alpha = 0:", type(exc).__name__, exc)

for alpha in (1e-4, 1.0):  # alpha > 0 makes A^T A + alpha I positive definite
    R = factor(T, FactorOptions(alpha=alpha)).rows
    G = T.dense().T @ T.dense() + alpha * np.eye(n)
    print(f"alpha = {alpha:g}: ||R^T R - (A^T A + alpha I)|| =", np.linalg.norm(R.T @ R - G, 1))

# refinement
rng = np.random.default_rng(5)
n = 150
d = 2.0 + rng.standard_normal(2 * n - 1)
T = build_toeplitz(d[n - 1::-1], d[n - 1:])
x = rng.standard_normal(n)
b = matvec(T, x)

x0 = x + 1e-6 * rng.standard_normal(n)
_, history = iterative_refinement(T, b, x0, factor(T), steps=3)
print("residual norms:", " -> ".join(f"{h:.2e}" for h in history))

rep = solve(T, b, SolveOptions(refine_steps=1))
print("solve with one refinement step, residual history:", rep.history)
