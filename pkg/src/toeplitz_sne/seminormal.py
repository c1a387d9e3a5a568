"""Solvers on top of the lattice factor: R^T R x = A^T b.

Three storage modes produce the rows of R for the two triangular solves:

``dense``       keep all of R (O(n^2) words).
``rotreverse``  keep only the rotation log and regenerate R backwards by
                inverting rotations (O(n) words; rows differ by rounding).
``checkpoint``  recursively recompute rows forward from saved lattice
                states (O(n log n) words, O(n^2 log n) work); the rows are
                bitwise the forward rows.

Forward substitution always runs row-by-row with per-column accumulators,
and back substitution always consumes rows in reverse, so the three modes
share one summation order.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bbh_factor import (FactorOptions, factor, factor_streaming, initial_state,
                         lattice_step, regenerate_reverse)
from .counters import StorageAudit, Tally, bump
from .exceptions import ShapeError, SingularTriangular
from .toeplitz_core import matvec, matvec_transpose

STORAGE_MODES = ("dense", "rotreverse", "checkpoint")


@dataclass(frozen=True)
class SolveOptions:
    alpha: float = 0.0
    refine_steps: int = 1
    storage_mode: str = "dense"
    checkpoint_block: int = 1
    compute_cond: bool = False

    def __post_init__(self):
        if self.storage_mode not in STORAGE_MODES:
            raise ValueError(f"storage_mode must be one of {STORAGE_MODES}")
        if self.refine_steps < 0:
            raise ValueError("refine_steps must be >= 0")
        if self.checkpoint_block < 1:
            raise ValueError("checkpoint_block must be >= 1")
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise ValueError("alpha must be finite and >= 0")


@dataclass
class SolveReport:
    x: np.ndarray
    residual_2norm: float
    normal_residual_2norm: float
    tally: int
    cond1: float = None
    metrics: dict = None
    history: list = field(default_factory=list)
    storage_peak: int = None
    R: np.ndarray = field(default=None, repr=False)

    def to_dict(self):
        out = {
            "x": [float(v) for v in self.x],
            "residual": float(self.residual_2norm),
            "normal_residual": float(self.normal_residual_2norm),
            "tally": int(self.tally),
            "cond1": None if self.cond1 is None else float(self.cond1),
            "metrics": self.metrics,
        }
        if self.history:
            out["history"] = [float(h) for h in self.history]
        if self.storage_peak is not None:
            out["storage_peak"] = int(self.storage_peak)
        return out


class ForwardSubstitution:
    """Solve R^T w = d while the rows of R arrive in order 0, 1, ..."""

    def __init__(self, d, tally=None):
        self.w = np.array(d, dtype=float)
        self.tally = tally

    def push(self, k, row):
        if row[0] == 0:
            raise SingularTriangular(f"zero diagonal in row {k}")
        wk = self.w[k] / row[0]
        self.w[k] = wk
        self.w[k + 1:] -= row[1:] * wk
        bump(self.tally, row.size)


class BackSubstitution:
    """Solve R x = w while the rows of R arrive in order n-1, n-2, ..."""

    def __init__(self, w, tally=None):
        self.x = np.array(w, dtype=float)
        self.tally = tally

    def push(self, k, row):
        if row[0] == 0:
            raise SingularTriangular(f"zero diagonal in row {k}")
        self.x[k] = (self.x[k] - np.dot(row[1:], self.x[k + 1:])) / row[0]
        bump(self.tally, row.size)


def checkpointed_reverse(T, opts=None, emit_row=None, tally=None, audit=None,
                         block=1):
    """Emit rows n-1, ..., 0 of R by forward recomputation from checkpoints.

    Rows between ``lo`` and ``hi`` are produced backwards from the lattice
    state at ``lo``: run forward to the midpoint saving that state, recurse
    on the upper half from it, then on the lower half from ``lo``. Blocks of
    at most ``block`` rows are buffered; larger blocks trade O(block * n)
    extra words for fewer recomputed steps. Every row comes out of the same
    lattice step as the forward pass, so rows are bitwise identical.
    """
    opts = opts or FactorOptions()
    if block < 1:
        raise ValueError("block must be >= 1")
    if tally is None:
        tally = Tally()
    audit = audit if audit is not None else StorageAudit()
    kind = opts.downdate_kind
    start = initial_state(T, opts.alpha, tally)
    audit.alloc(start.words())

    def advance(state, steps):
        for _ in range(steps):
            lattice_step(state, opts.order, kind)

    def backward(lo, hi, state_lo):
        # state_lo holds row lo; emit rows hi-1 .. lo
        if hi - lo <= block:
            work = state_lo.copy()
            buf = [work.current_row()]
            held = work.words() + buf[0].size
            audit.alloc(held)
            for _ in range(lo + 1, hi):
                lattice_step(work, opts.order, kind)
                buf.append(work.current_row())
                audit.alloc(buf[-1].size)
                held += buf[-1].size
            for offset in range(len(buf) - 1, -1, -1):
                emit_row(lo + offset, buf[offset])
            audit.free(held)
            return
        mid = (lo + hi) // 2
        saved = state_lo.copy()
        advance(saved, mid - lo)
        held = saved.words()
        audit.alloc(held)
        backward(mid, hi, saved)
        audit.free(held)
        del saved
        backward(lo, mid, state_lo)

    backward(0, T.n, start)
    audit.free(start.words())
    return audit


def dense_solver(R, tally=None):
    """Closure applying (R^T R)^{-1} with a stored upper-triangular R."""
    n = R.shape[0]

    def solver(rhs):
        fw = ForwardSubstitution(rhs, tally)
        for k in range(n):
            fw.push(k, R[k, k:])
        bw = BackSubstitution(fw.w, tally)
        for k in range(n - 1, -1, -1):
            bw.push(k, R[k, k:])
        return bw.x

    return solver


def _triangular_pair(T, opts, tally, audit):
    """Return (R or None, solver) where solver(d) applies (R^T R)^{-1}."""
    fopts = FactorOptions(alpha=opts.alpha, keep_dense=opts.storage_mode == "dense")
    n = T.n

    if opts.storage_mode == "dense":
        F = factor(T, fopts, tally)
        R = F.rows
        audit.alloc(n * (n + 1) // 2)
        return R, dense_solver(R, tally)

    def forward_pass(rhs):
        fw = ForwardSubstitution(rhs, tally)
        log = factor_streaming(T, fopts, fw.push, tally)
        return fw.w, log

    if opts.storage_mode == "rotreverse":
        def solver(rhs):
            w, log = forward_pass(rhs)
            audit.alloc(log.words() + 3 * (n - 1) + 2 * n)
            bw = BackSubstitution(w, tally)
            regenerate_reverse(log, bw.push, tally)
            audit.free(log.words() + 3 * (n - 1) + 2 * n)
            return bw.x

        return None, solver

    def solver(rhs):
        w, log = forward_pass(rhs)
        audit.alloc(2 * n)
        bw = BackSubstitution(w, tally)
        checkpointed_reverse(T, fopts, bw.push, tally, audit, opts.checkpoint_block)
        audit.free(2 * n)
        return bw.x

    return None, solver


def _finish(T, b, x, tally, R=None, opts=None, history=None, audit=None):
    r = matvec(T, x, tally) - b
    report = SolveReport(
        x=x,
        residual_2norm=float(np.linalg.norm(r)),
        normal_residual_2norm=float(np.linalg.norm(matvec_transpose(T, r, tally))),
        tally=tally.count,
        history=history or [],
        storage_peak=None if audit is None else audit.peak,
        R=R,
    )
    if opts is not None and opts.compute_cond and R is not None:
        from .reference_oracles import cond1_triangular

        report.cond1 = cond1_triangular(R)
    return report


def _semi_normal(T, b, opts):
    opts = opts or SolveOptions()
    b = np.asarray(b, dtype=float).reshape(-1)
    if b.size != T.m:
        raise ShapeError(f"rhs has length {b.size}, expected {T.m}")
    tally = Tally()
    audit = StorageAudit()
    d = matvec_transpose(T, b, tally)
    R, solver = _triangular_pair(T, opts, tally, audit)
    x = solver(d)
    history = []
    if opts.refine_steps:
        x, history = _refine(T, b, x, solver, opts.refine_steps, tally, opts.alpha)
    return _finish(T, b, x, tally, R, opts, history, audit)


def solve(T, b, opts=None):
    """Solve the square Toeplitz system A x = b via R^T R x = A^T b."""
    if T.m != T.n:
        raise ShapeError(f"solve needs a square matrix, got {T.shape}; use least_squares")
    return _semi_normal(T, b, opts)


def least_squares(T, b, opts=None):
    """Minimize ||A x - b||_2 for full-rank m x n Toeplitz A (m >= n)."""
    return _semi_normal(T, b, opts)


def _refine(T, b, x, solver, steps, tally, alpha=0.0):
    # the alpha term keeps the fixed point at the regularized solution
    history = []
    r = b - matvec(T, x, tally)
    history.append(float(np.linalg.norm(r)))
    for _ in range(steps):
        d = matvec_transpose(T, r, tally)
        if alpha:
            d -= alpha * x
        x = x + solver(d)
        r = b - matvec(T, x, tally)
        history.append(float(np.linalg.norm(r)))
    return x, history


def iterative_refinement(T, b, x0, R, steps=1, tally=None, alpha=0.0):
    """Refine ``x0`` using a dense factor R of A^T A + alpha I (residuals in
    working precision). Returns ``(x, history)`` with ||b - A x||_2 before
    and after each step."""
    R = R.dense() if hasattr(R, "dense") else np.asarray(R, dtype=float)
    b = np.asarray(b, dtype=float)
    return _refine(T, b, np.array(x0, dtype=float), dense_solver(R, tally), steps, tally,
                   alpha)


def solve_streaming(T, b, opts=None):
    """:func:`solve` with O(n) storage (rotation-reverse regeneration)."""
    opts = opts or SolveOptions()
    if opts.storage_mode == "dense":
        opts = SolveOptions(alpha=opts.alpha, refine_steps=opts.refine_steps,
                            storage_mode="rotreverse",
                            checkpoint_block=opts.checkpoint_block,
                            compute_cond=opts.compute_cond)
    return least_squares(T, b, opts) if T.m != T.n else solve(T, b, opts)
