"""Random-ensemble stability benchmark.

Instances
---------
Each instance is fully determined by ``(seed, index)``. Those two words are
the 128-bit key of a Philox-4x64 counter-based generator (counter starting at
zero). Raw 64-bit outputs become uniforms ``u = ((raw >> 11) + 1) * 2**-53``
in (0, 1], and consecutive pairs ``(u1, u2)`` become standard normals by
Box-Muller: ``sqrt(-2 log u1) * cos(2 pi u2)`` then ``... * sin(2 pi u2)``.

Draw order: the m+n-1 Toeplitz diagonals ``a_{1-m}, ..., a_{n-1}`` first
(scaled as ``mu + sigma * z``), then the n components of the true solution.
Cells that differ only in ``mu/sigma`` therefore share the underlying normal
draws.

Metrics
-------
With eps the unit roundoff (2**-53) and kappa1 = ||R||_1 ||R^{-1}||_1::

    e1  = ||R^T R - A^T A||_1 / (eps ||A^T A||_1)
    e2  = ||x_computed - x||_2 / (eps kappa1^2 ||x||_2)
    e3  = ||A x_computed - b||_2 / (eps kappa1 ||A||_1 ||x||_2)
    e3c = e3 with x_computed from the Cholesky factor of A^T A formed densely
"""

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import NumericalBreakdown
from .reference_oracles import cond1_triangular, gram, norm1, normal_equations_solve
from .seminormal import SolveOptions, solve, least_squares
from .toeplitz_core import build_toeplitz, matvec

UNIT_ROUNDOFF = 2.0 ** -53

CSV_COLUMNS = ("n", "mu_sigma", "seed", "cond1", "e1", "e2", "e3", "e3c", "tally", "status",
               "family", "index")


@dataclass(frozen=True)
class EnsembleConfig:
    n: int
    mu: float = 0.0
    sigma: float = 1.0
    count: int = 1
    seed: int = 0
    m: int = None

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be > 0")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.n < 1 or (self.m is not None and self.m < self.n):
            raise ValueError("need 1 <= n <= m")

    @property
    def rows(self):
        return self.n if self.m is None else self.m


@dataclass
class MetricsRow:
    n: int
    mu_sigma: float
    cond1: float
    e1: float
    e2: float
    e3: float
    e3c: float
    tally: int
    seed: int
    index: int = 0
    family: str = "random"
    status: str = "ok"


class NormalStream:
    """Standard normals from Philox keyed by ``(seed, index)``."""

    def __init__(self, seed, index):
        key = np.array([int(seed) % 2**64, int(index) % 2**64], dtype=np.uint64)
        self._bits = np.random.Philox(key=key)
        self._spare = np.empty(0)

    def uniforms(self, k):
        raw = self._bits.random_raw(k)
        return ((raw >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0 ** -53

    def normals(self, k):
        out = [self._spare[:k]]
        need = k - out[0].size
        self._spare = self._spare[k:]
        if need > 0:
            pairs = (need + 1) // 2
            u = self.uniforms(2 * pairs).reshape(pairs, 2)
            rad = np.sqrt(-2.0 * np.log(u[:, 0]))
            ang = 2.0 * np.pi * u[:, 1]
            z = np.column_stack([rad * np.cos(ang), rad * np.sin(ang)]).reshape(-1)
            out.append(z[:need])
            self._spare = z[need:]
        return np.concatenate(out)


def gen_instance(cfg, index, family="random"):
    """Return ``(T, x_true, b)`` for instance ``index`` of ``cfg``.

    ``family="sps"`` forces a_{-1} = a_0 = a_1 so that leading principal
    submatrices are singular.
    """
    m, n = cfg.rows, cfg.n
    stream = NormalStream(cfg.seed, index)
    diag = cfg.mu + cfg.sigma * stream.normals(m + n - 1)
    x = stream.normals(n)
    if family == "sps":
        a0 = diag[m - 1]
        if m > 1:
            diag[m - 2] = a0
        if n > 1:
            diag[m] = a0
    elif family != "random":
        raise ValueError(f"unknown family {family!r}")
    T = build_toeplitz(diag[m - 1::-1], diag[m - 1:])
    return T, x, matvec(T, x)


def compute_metrics(T, x_true, b, report, R, eps=UNIT_ROUNDOFF, cond1=None):
    """Stability metrics of one solve; ``R`` is the retained lattice factor."""
    R = np.asarray(R)
    G = gram(T)
    if cond1 is None:
        cond1 = cond1_triangular(R)
    xnorm = float(np.linalg.norm(x_true))
    anorm = T.norm1()
    gnorm = norm1(G)
    e1 = norm1(R.T @ R - G) / (eps * gnorm) if gnorm else 0.0

    def scaled_residual(x):
        if xnorm == 0:
            return 0.0
        r = matvec(T, x) - b
        return float(np.linalg.norm(r)) / (eps * cond1 * anorm * xnorm)

    e2 = float(np.linalg.norm(report.x - x_true)) / (eps * cond1 ** 2 * xnorm) if xnorm else 0.0
    e3 = scaled_residual(report.x)
    try:
        xc, _ = normal_equations_solve(T, b)
        e3c = scaled_residual(xc)
    except NumericalBreakdown:
        e3c = math.nan
    return dict(cond1=float(cond1), e1=float(e1), e2=float(e2), e3=float(e3), e3c=float(e3c))


def run_instance(cfg, index, family="random"):
    T, x, b = gen_instance(cfg, index, family)
    mu_sigma = cfg.mu / cfg.sigma
    try:
        rep = (solve if T.m == T.n else least_squares)(T, b, SolveOptions(refine_steps=0))
        met = compute_metrics(T, x, b, rep, rep.R)
        status = "ok"
        tally = rep.tally
    except NumericalBreakdown as exc:
        met = dict(cond1=math.nan, e1=math.nan, e2=math.nan, e3=math.nan, e3c=math.nan)
        status = f"breakdown: {type(exc).__name__}"
        tally = 0
    return MetricsRow(n=cfg.n, mu_sigma=mu_sigma, tally=tally, seed=cfg.seed,
                      index=index, family=family, status=status, **met)


def _run_job(job):
    return run_instance(*job)


def bench(ns, mu_sigmas, count=5, seed=0, families=("random", "sps"), workers=1):
    """Metrics for every (family, n, mu/sigma) cell, ordered by cell then index.

    The ``sps`` family ignores mu/sigma and runs once per n. Breakdowns are
    recorded as rows with a non-``ok`` status.
    """
    jobs = []
    for family in families:
        for n in ns:
            cells = mu_sigmas if family == "random" else [0.0]
            if not mu_sigmas:
                cells = []
            for ms in cells:
                cfg = EnsembleConfig(n=n, mu=float(ms), sigma=1.0, count=count, seed=seed)
                jobs.extend((cfg, i, family) for i in range(count))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_job, jobs, chunksize=4))
    return [_run_job(j) for j in jobs]


def cell_medians(rows, kappa_filter=None, eps=UNIT_ROUNDOFF):
    """Per-cell medians. ``kappa_filter`` keeps only instances with
    cond1**2 * eps <= kappa_filter."""
    cells = {}
    for r in rows:
        cells.setdefault((r.family, r.n, r.mu_sigma), []).append(r)
    out = []
    for (family, n, ms), group in cells.items():
        ok = [r for r in group if r.status == "ok"]
        if kappa_filter is not None:
            ok = [r for r in ok if r.cond1 ** 2 * eps <= kappa_filter]
        med = {}
        for key in ("cond1", "e1", "e2", "e3", "e3c"):
            vals = [getattr(r, key) for r in ok]
            med[key] = float(np.median(vals)) if vals else math.nan
        ratios = [r.e3 / r.e3c for r in ok if r.e3c > 0]
        med["e3_over_e3c"] = float(np.median(ratios)) if ratios else math.nan
        out.append(dict(family=family, n=n, mu_sigma=ms, count=len(group),
                        used=len(ok), failures=sum(r.status != "ok" for r in group),
                        **med))
    return out


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        d = asdict(r)
        w.writerow([_fmt(d[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def to_json(rows):
    def clean(v):
        return None if isinstance(v, float) and not math.isfinite(v) else v

    payload = {
        "note": "order-of-magnitude reproduction; eps = 2**-53 unit roundoff",
        "rows": [{k: clean(v) for k, v in asdict(r).items()} for r in rows],
        "cells": [{k: clean(v) for k, v in c.items()} for c in cell_medians(rows)],
    }
    return json.dumps(payload, indent=1)
