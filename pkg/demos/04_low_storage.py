"""
Solving without storing R
=========================

The back substitution needs the rows of R in reverse order. Three ways to
get them:

* ``dense`` keeps all n(n+1)/2 entries,
* ``rotreverse`` keeps 3(n-1) rotations and runs the lattice backwards,
* ``checkpoint`` keeps a few lattice states and recomputes forward.

The checkpointed rows are the forward rows bit for bit.
"""

import numpy as np

from toeplitz_sne import SolveOptions, build_toeplitz, matvec, solve

rng = np.random.default_rng(4)
n = 400
d = rng.standard_normal(2 * n - 1)
T = build_toeplitz(d[n - 1::-1], d[n - 1:])
b = matvec(T, rng.standard_normal(n))

results = {}
for mode in ("dense", "rotreverse", "checkpoint"):
    rep = solve(T, b, SolveOptions(storage_mode=mode))
    results[mode] = rep.x
    print(f"{mode:>10}: peak words {rep.storage_peak:>7}  multiplications {rep.tally:>9}")

print("checkpoint == dense bitwise:", np.array_equal(results["checkpoint"], results["dense"]))
gap = np.linalg.norm(results["rotreverse"] - results["dense"]) / np.linalg.norm(results["dense"])
print("rotreverse vs dense        :", gap)
