"""Row-by-row Cholesky factor of A^T A (+ alpha I) for Toeplitz A.

Write R in two ways, with Rt its leading and Rb its trailing (n-1) x (n-1)
block. For Toeplitz A these blocks satisfy

    Rb^T Rb = Rt^T Rt + y y^T - u u^T - zbar zbar^T

so row k of Rb (row k+1 of R) follows from row k of Rt (row k of R) by one
plane update with y and two mixed downdates with u and zbar. The first row
of R comes directly from A. Each step costs 12(n-k) + O(1) multiplications.

Indexing is 0-based throughout: ``LatticeState.k`` is the row of R currently
held in ``state.row`` and the carried vectors live at positions ``k..n-2``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import rotations as rot
from .counters import Tally, bump
from .exceptions import ShapeError, ZeroPivot
from .rotations import Kind, RotationParam
from .toeplitz_core import matvec_transpose, partition_vectors, submatrix

# Order in which the three rank-one terms are folded into each row.
STEP_ORDER = ("y", "u", "zbar")


@dataclass(frozen=True)
class FactorOptions:
    alpha: float = 0.0
    variant: str = "mixed"  # or "hyperbolic" (unsupported by the stability theory)
    keep_dense: bool = True
    order: tuple = STEP_ORDER

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise ValueError(f"alpha must be finite and >= 0, got {self.alpha!r}")
        if self.variant not in ("mixed", "hyperbolic"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if sorted(self.order) != sorted(STEP_ORDER):
            raise ValueError(f"order must permute {STEP_ORDER}, got {self.order!r}")

    @property
    def downdate_kind(self):
        return Kind.MIXED_DOWNDATE if self.variant == "mixed" else Kind.HYPERBOLIC_DOWNDATE


@dataclass
class LatticeState:
    """Mutable working state of the lattice; single owner.

    ``row`` has length n and holds R[k, k:] at positions k..n-1. The last
    entry of a row (column n-1) never enters a step.
    """

    k: int
    row: np.ndarray
    yv: np.ndarray
    uv: np.ndarray
    zv: np.ndarray
    tally: Tally = field(default_factory=Tally)

    @property
    def n(self):
        return self.row.size

    def current_row(self):
        return self.row[self.k:].copy()

    def copy(self):
        return LatticeState(self.k, self.row.copy(), self.yv.copy(),
                            self.uv.copy(), self.zv.copy(), self.tally)

    def words(self):
        """Live float words held (row plus three carried vectors)."""
        live = self.n - self.k
        return live + 3 * max(live - 1, 0)


@dataclass
class RotationLog:
    """Everything needed to regenerate R backwards in O(n) storage.

    ``c`` and ``s`` have shape (n-1, 3); column i holds the rotation of
    ``order[i]`` at each step.
    """

    n: int
    order: tuple
    variant: str
    c: np.ndarray
    s: np.ndarray
    yv: np.ndarray
    uv: np.ndarray
    zv: np.ndarray
    last_column: np.ndarray

    def kind(self, which):
        if which == "y":
            return Kind.PLANE_UPDATE
        return Kind.MIXED_DOWNDATE if self.variant == "mixed" else Kind.HYPERBOLIC_DOWNDATE

    def rotation(self, step, i):
        return RotationParam(self.kind(self.order[i]), float(self.c[step, i]),
                             float(self.s[step, i]))

    def rotations(self):
        return [self.rotation(k, i) for k in range(self.n - 1) for i in range(3)]

    def words(self):
        return self.c.size + self.s.size + self.last_column.size


@dataclass
class RFactor:
    n: int
    rows: np.ndarray  # dense upper triangle, or None when streamed
    log: RotationLog
    tally: int

    def dense(self):
        if self.rows is None:
            raise ValueError("R was not retained (keep_dense=False)")
        return self.rows

    @property
    def diagonal(self):
        return np.diag(self.dense())


def first_row(T, alpha=0.0, tally=None):
    """First row ``(r11, u)`` of R from r11^2 = a0^2 + z.z + alpha and
    r11 u = a0 y + A_{-1}^T z."""
    a0 = float(T.row[0])
    z = T.col[1:]
    bump(tally, 1 + z.size)
    radicand = a0 * a0 + float(np.dot(z, z)) + alpha
    if not radicand > 0:
        raise ZeroPivot("first column of A is zero (and alpha == 0)")
    bump(tally, 1)
    r11 = math.sqrt(radicand)
    if T.n == 1:
        return r11, np.empty(0)
    bump(tally, T.n - 1)
    rhs = a0 * T.row[1:]
    if z.size:
        rhs = rhs + matvec_transpose(submatrix(T), z, tally)
    bump(tally, T.n - 1)
    return r11, rhs / r11


def initial_state(T, alpha=0.0, tally=None):
    """State holding row 0 of R and the carried vectors (y, u, zbar)."""
    if tally is None:
        tally = Tally()
    r11, u = first_row(T, alpha, tally)
    n = T.n
    row = np.empty(n)
    row[0] = r11
    row[1:] = u
    if n == 1:
        empty = np.empty(0)
        return LatticeState(0, row, empty, empty.copy(), empty.copy(), tally)
    pv = partition_vectors(T)
    return LatticeState(0, row, pv.y.astype(float), u.copy(), pv.zbar.astype(float), tally)


def lattice_step(state, order=STEP_ORDER, downdate_kind=Kind.MIXED_DOWNDATE):
    """Advance ``state`` from row k to row k+1 of R in place.

    Returns ``(new_row, rotations)`` where ``new_row`` is R[k+1, k+1:] and
    ``rotations`` are the three rotations in application order.
    """
    k, n = state.k, state.n
    if k > n - 2:
        raise ShapeError(f"no lattice step after the last row (k={k}, n={n})")
    tally = state.tally
    d = state.row[k]
    rest = state.row[k + 1:n - 1]
    carried = {"y": state.yv, "u": state.uv, "zbar": state.zv}
    rots = []
    for which in order:
        vec = carried[which]
        tail = vec[k + 1:]
        if which == "y":
            r, d = rot.gen_plane(d, vec[k], tally)
            rest, vec[k + 1:] = rot.apply_plane(r, rest, tail, tally)
        else:
            r, d = rot.gen_downdate(d, vec[k], tally, row=k + 1, which=which,
                                    kind=downdate_kind)
            rest, vec[k + 1:] = rot.apply_downdate(r, rest, tail, tally)
        vec[k] = 0.0
        rots.append(r)
    state.row[k + 1] = d
    state.row[k + 2:] = rest
    state.k = k + 1
    return state.row[k + 1:].copy(), rots


def _new_log(n, opts):
    steps = max(n - 1, 0)
    return RotationLog(n=n, order=tuple(opts.order), variant=opts.variant,
                       c=np.empty((steps, 3)), s=np.empty((steps, 3)),
                       yv=None, uv=None, zv=None, last_column=np.empty(n))


def factor_streaming(T, opts=None, emit_row=None, tally=None):
    """Generate the rows of R in order, calling ``emit_row(k, R[k, k:])``.

    Only O(n) working storage is used; the returned :class:`RotationLog`
    holds the 3(n-1) rotations and the last column of R.
    """
    opts = opts or FactorOptions()
    state = initial_state(T, opts.alpha, tally)
    n = T.n
    log = _new_log(n, opts)
    row0 = state.current_row()
    log.last_column[0] = row0[-1]
    if emit_row is not None:
        emit_row(0, row0)
    kind = opts.downdate_kind
    for k in range(n - 1):
        new_row, rots = lattice_step(state, opts.order, kind)
        log.c[k] = [r.c for r in rots]
        log.s[k] = [r.s for r in rots]
        log.last_column[k + 1] = new_row[-1]
        if emit_row is not None:
            emit_row(k + 1, new_row)
    log.yv, log.uv, log.zv = state.yv, state.uv, state.zv
    return log


def factor(T, opts=None, tally=None):
    """Dense (or log-only, when ``keep_dense=False``) factor of A^T A + alpha I."""
    opts = opts or FactorOptions()
    if tally is None:
        tally = Tally()
    n = T.n
    R = np.zeros((n, n)) if opts.keep_dense else None

    def keep(k, r):
        R[k, k:] = r

    log = factor_streaming(T, opts, keep if R is not None else None, tally)
    return RFactor(n=n, rows=R, log=log, tally=tally.count)


def reverse_step(state, log, step):
    """Undo lattice step ``step``: state at row step+1 -> state at row step."""
    k, n = step, state.n
    if state.k != k + 1:
        raise ValueError(f"state is at row {state.k}, cannot undo step {k}")
    tally = state.tally
    d = state.row[k + 1]
    rest = state.row[k + 2:].copy()
    carried = {"y": state.yv, "u": state.uv, "zbar": state.zv}
    for i in reversed(range(3)):
        which = log.order[i]
        r = log.rotation(k, i)
        vec = carried[which]
        rest, vec[k + 1:] = rot.invert(r, rest, vec[k + 1:], tally)
        d, vec[k] = rot.invert(r, d, 0.0, tally)
    state.row[k] = d
    state.row[k + 1:n - 1] = rest
    state.row[n - 1] = log.last_column[k]
    state.k = k


def final_state(log, tally=None):
    n = log.n
    row = np.zeros(n)
    row[n - 1] = log.last_column[n - 1]
    zeros = np.zeros(max(n - 1, 0))
    pick = (lambda v: zeros.copy() if v is None else np.array(v, dtype=float))
    return LatticeState(n - 1, row, pick(log.yv), pick(log.uv), pick(log.zv),
                        tally if tally is not None else Tally())


def regenerate_reverse(log, emit_row, tally=None):
    """Emit rows n-1, ..., 0 of R by inverting the logged rotations.

    The regenerated rows differ from the forward rows by rounding errors.
    """
    state = final_state(log, tally)
    emit_row(log.n - 1, state.current_row())
    for k in range(log.n - 2, -1, -1):
        reverse_step(state, log, k)
        emit_row(k, state.current_row())
    return state
