"""
Random-ensemble stability table
===============================

Entries of A are drawn from N(mu, sigma^2); larger mu/sigma gives worse
conditioning. The metrics are normalized by eps = 2**-53:

e1   factor error   ||R^T R - A^T A|| / (eps ||A^T A||)
e2   forward error  ||x~ - x|| / (eps kappa^2 ||x||)
e3   residual       ||A x~ - b|| / (eps kappa ||A|| ||x||)
e3c  the same residual from Cholesky of the explicitly formed A^T A

The same table is available as ``toeplitz-sne bench``.
"""

from toeplitz_sne.harness import bench, cell_medians

rows = bench([50, 100], [0, 10, 1000], count=10, seed=0)

print(f"{'family':>7} {'n':>4} {'mu/sig':>7} {'kappa1':>9} {'e1':>7} {'e2':>9} {'e3':>9} {'e3c':>9}")
for c in cell_medians(rows):
    print(f"{c['family']:>7} {c['n']:>4} {c['mu_sigma']:>7g} {c['cond1']:>9.2e} {c['e1']:>7.1f} "
          f"{c['e2']:>9.2e} {c['e3']:>9.2e} {c['e3c']:>9.2e}")
