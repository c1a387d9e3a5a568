"""Plane rotations for Cholesky updating and mixed rotations for downdating.

Every ``apply_*`` / ``invert_*`` function accepts scalars or equal-length
numpy arrays and works elementwise, so a rotation can be swept across a row
in one call. Rotations are never renormalized after generation.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .counters import bump
from .exceptions import DowndateBreakdown, KindMismatch, ZeroPivot


class Kind(enum.Enum):
    PLANE_UPDATE = "plane"
    MIXED_DOWNDATE = "mixed"
    # Algebraically equal to MIXED_DOWNDATE but without its error contract;
    # kept only for experiments.
    HYPERBOLIC_DOWNDATE = "hyperbolic"


DOWNDATE_KINDS = (Kind.MIXED_DOWNDATE, Kind.HYPERBOLIC_DOWNDATE)


@dataclass(frozen=True)
class RotationParam:
    kind: Kind
    c: float
    s: float


IDENTITY_PLANE = RotationParam(Kind.PLANE_UPDATE, 1.0, 0.0)


def _size(x):
    return np.size(x)


def gen_plane(a, b, tally=None):
    """Rotation taking ``(a, b)`` to ``(r, 0)`` with ``r = hypot(a, b)``."""
    if a == 0 and b == 0:
        raise ZeroPivot("plane rotation of a zero pair")
    bump(tally, 5)  # two squares, one sqrt, two divisions
    r = math.hypot(a, b)
    return RotationParam(Kind.PLANE_UPDATE, a / r, b / r), r


def apply_plane(rot, t, v, tally=None):
    if rot.kind is not Kind.PLANE_UPDATE:
        raise KindMismatch(f"apply_plane got a {rot.kind.value} rotation")
    c, s = rot.c, rot.s
    bump(tally, 4 * _size(t))
    return c * t + s * v, c * v - s * t


def invert_plane(rot, t2, v2, tally=None):
    if rot.kind is not Kind.PLANE_UPDATE:
        raise KindMismatch(f"invert_plane got a {rot.kind.value} rotation")
    c, s = rot.c, rot.s
    bump(tally, 4 * _size(t2))
    return c * t2 - s * v2, s * t2 + c * v2


def gen_downdate(r_kk, x_k, tally=None, row=None, which=None,
                 kind=Kind.MIXED_DOWNDATE):
    """Rotation removing ``x_k`` from the diagonal ``r_kk``.

    Returns ``(rot, u_kk)`` with ``u_kk = sqrt(r_kk**2 - x_k**2) > 0``.
    Raises :class:`DowndateBreakdown` when ``|x_k| >= r_kk``.
    """
    if not r_kk > 0:
        raise DowndateBreakdown(
            f"non-positive diagonal {r_kk!r} at row {row}", row=row, which=which)
    if abs(x_k) >= r_kk:
        raise DowndateBreakdown(
            f"downdate with {which or 'x'} not positive definite at row {row}: "
            f"|x|={abs(x_k)!r} >= r={r_kk!r}", row=row, which=which)
    bump(tally, 4)
    u = math.sqrt((r_kk - x_k) * (r_kk + x_k))
    if u == 0.0:
        raise DowndateBreakdown(
            f"downdate with {which or 'x'} underflowed at row {row}",
            row=row, which=which)
    return RotationParam(kind, u / r_kk, x_k / r_kk), u


def apply_downdate_mixed(rot, r, x, tally=None):
    """Mixed downdate: ``u = (r - s x)/c`` then ``x2 = c x - s u``.

    The second line must use the freshly computed ``u``.
    """
    if rot.kind is not Kind.MIXED_DOWNDATE:
        raise KindMismatch(f"apply_downdate_mixed got a {rot.kind.value} rotation")
    c, s = rot.c, rot.s
    bump(tally, 4 * _size(r))
    u = (r - s * x) / c
    return u, c * x - s * u


def apply_downdate_hyperbolic(rot, r, x, tally=None):
    """Pure hyperbolic form ``x2 = (x - s r)/c``. Not covered by the
    weak-stability guarantee; for experiments only."""
    if rot.kind not in DOWNDATE_KINDS:
        raise KindMismatch(f"apply_downdate_hyperbolic got a {rot.kind.value} rotation")
    c, s = rot.c, rot.s
    bump(tally, 4 * _size(r))
    return (r - s * x) / c, (x - s * r) / c


def apply_downdate(rot, r, x, tally=None):
    if rot.kind is Kind.HYPERBOLIC_DOWNDATE:
        return apply_downdate_hyperbolic(rot, r, x, tally)
    return apply_downdate_mixed(rot, r, x, tally)


def invert_downdate(rot, u, x2, tally=None):
    """Exact algebraic inverse of :func:`apply_downdate_mixed`."""
    if rot.kind not in DOWNDATE_KINDS:
        raise KindMismatch(f"invert_downdate got a {rot.kind.value} rotation")
    c, s = rot.c, rot.s
    bump(tally, 4 * _size(u))
    x = (x2 + s * u) / c
    return c * u + s * x, x


def invert(rot, a, b, tally=None):
    if rot.kind is Kind.PLANE_UPDATE:
        return invert_plane(rot, a, b, tally)
    return invert_downdate(rot, a, b, tally)


def cholesky_update(R, x, tally=None):
    """Upper-triangular U with ``U^T U = R^T R + x x^T``, row by row."""
    U = np.array(R, dtype=float)
    x = np.array(x, dtype=float)
    n = U.shape[0]
    for k in range(n):
        rot, U[k, k] = gen_plane(U[k, k], x[k], tally)
        U[k, k + 1:], x[k + 1:] = apply_plane(rot, U[k, k + 1:], x[k + 1:], tally)
        x[k] = 0.0
    return U


def cholesky_downdate(R, x, tally=None, kind=Kind.MIXED_DOWNDATE):
    """Upper-triangular U with ``U^T U = R^T R - x x^T``, one row at a time."""
    U = np.array(R, dtype=float)
    x = np.array(x, dtype=float)
    n = U.shape[0]
    for k in range(n):
        rot, U[k, k] = gen_downdate(U[k, k], x[k], tally, row=k, kind=kind)
        U[k, k + 1:], x[k + 1:] = apply_downdate(rot, U[k, k + 1:], x[k + 1:], tally)
        x[k] = 0.0
    return U
