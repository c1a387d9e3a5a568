"""Weakly stable O(n^2) Toeplitz and Hankel solvers.

The Cholesky factor R of A^T A is built row by row from one plane update and
two mixed downdates per row; linear systems and least-squares problems are
then solved through the semi-normal equations R^T R x = A^T b.
"""

from .bbh_factor import (FactorOptions, LatticeState, RFactor, RotationLog, factor,
                         factor_streaming, first_row, lattice_step, regenerate_reverse)
from .counters import StorageAudit, Tally
from .exceptions import (DowndateBreakdown, KindMismatch, MismatchedCorner, NonFiniteInput,
                         NotPositiveDefinite, NumericalBreakdown, RankDeficient, ShapeError,
                         SingularTriangular, ToeplitzError, ZeroPivot)
from .rotations import Kind, RotationParam
from .seminormal import (SolveOptions, SolveReport, checkpointed_reverse,
                         iterative_refinement, least_squares, solve, solve_streaming)
from .toeplitz_core import (HankelSpec, PartitionVectors, ToeplitzSpec, build_hankel,
                            build_toeplitz, hankel_adapter, matvec, matvec_transpose,
                            partition_vectors)

__version__ = "0.1.0"
