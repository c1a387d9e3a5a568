"""Command-line entry point: ``toeplitz-sne {factor,solve,lsq,bench}``.

Exit codes: 0 success, 1 usage or I/O error, 2 numerical breakdown,
3 invariant violation under ``--check``.
"""

import argparse
import json
import sys

import numpy as np

from . import harness, jsonio
from .bbh_factor import FactorOptions, factor
from .exceptions import NumericalBreakdown
from .reference_oracles import cond1_triangular, gram, norm1
from .seminormal import SolveOptions, least_squares, solve
from .toeplitz_core import HankelSpec, hankel_adapter, matvec_transpose

EXIT_OK, EXIT_USAGE, EXIT_BREAKDOWN, EXIT_INVARIANT = 0, 1, 2, 3
STORAGE_FLAGS = {"dense": "dense", "rotreverse": "rotreverse", "checkpoint": "checkpoint"}
EPS = harness.UNIT_ROUNDOFF


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text):
    return [int(v) for v in text.split(",") if v.strip()]


def build_parser():
    p = _Parser(prog="toeplitz-sne", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, rhs):
        sp.add_argument("--input", required=True, help="matrix JSON file")
        if rhs:
            sp.add_argument("--rhs", required=True, help="right-hand side JSON file")
        sp.add_argument("--alpha", type=float, default=0.0,
                        help="factor A^T A + alpha I instead of A^T A")
        sp.add_argument("--hankel", action="store_true",
                        help="treat the input as a Hankel matrix")
        sp.add_argument("--out", help="write JSON here instead of stdout")
        sp.add_argument("--check", action="store_true",
                        help="verify error bounds; exit 3 on violation")

    f = sub.add_parser("factor", help="Cholesky factor R of A^T A")
    common(f, rhs=False)
    f.add_argument("--tally", action="store_true", help="report the multiplication count")
    f.add_argument("--log", action="store_true", help="include the rotation log")

    for name, helptext in (("solve", "solve A x = b"), ("lsq", "minimize ||A x - b||_2")):
        s = sub.add_parser(name, help=helptext)
        common(s, rhs=True)
        s.add_argument("--refine", type=int, default=1, help="iterative refinement steps")
        s.add_argument("--storage", choices=sorted(STORAGE_FLAGS), default="dense")
        s.add_argument("--metrics", action="store_true", help="report cond1 and e1/e3")
        s.add_argument("--truth", help="JSON file with the exact solution (enables e2)")

    b = sub.add_parser("bench", help="random-ensemble stability table")
    b.add_argument("--config", help="JSON file whose keys mirror these flags")
    b.add_argument("--n", type=_ints, default=None)
    b.add_argument("--mu-sigma", type=_floats, default=None)
    b.add_argument("--count", type=int, default=None)
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--format", choices=("csv", "json"), default=None)
    b.add_argument("--no-family", action="store_true",
                   help="skip the a_-1 = a_0 = a_1 stress family")
    b.add_argument("--workers", type=int, default=None)
    b.add_argument("--out")
    return p


def _load_system(args, need_rhs):
    try:
        M = jsonio.matrix_from_dict(jsonio.load(args.input), force_hankel=args.hankel)
        b = jsonio.vector_from_json(jsonio.load(args.rhs)) if need_rhs else None
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(M, HankelSpec):
        if b is None:
            b = np.zeros(M.m)
            T, _ = hankel_adapter(M, b)
            return T, None
        return hankel_adapter(M, b)
    return M, b


def _emit(args, payload):
    text = jsonio.dumps(payload)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _gram_ok(T, R, alpha):
    G = gram(T, alpha)
    return norm1(R.T @ R - G) <= 10 * T.n * EPS * norm1(G)


def cmd_factor(args):
    T, _ = _load_system(args, need_rhs=False)
    F = factor(T, FactorOptions(alpha=args.alpha))
    payload = jsonio.rfactor_to_dict(F)
    if args.tally:
        payload["tally"] = F.tally
        print(f"tally {F.tally}", file=sys.stderr)
    if args.log:
        payload["log"] = jsonio.log_to_dict(F.log)
    _emit(args, payload)
    if args.check and not _gram_ok(T, F.rows, args.alpha):
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_solve(args, square):
    T, b = _load_system(args, need_rhs=True)
    opts = SolveOptions(alpha=args.alpha, refine_steps=args.refine,
                        storage_mode=STORAGE_FLAGS[args.storage],
                        compute_cond=args.metrics)
    if square and T.m != T.n:
        raise UsageError(f"solve needs a square matrix, got {T.m}x{T.n}; use lsq")
    rep = (solve if square else least_squares)(T, b, opts)
    code = EXIT_OK
    R = rep.R
    if args.metrics:
        if R is None:
            R = factor(T, FactorOptions(alpha=args.alpha)).rows
            rep.cond1 = cond1_triangular(R)
        G = gram(T, args.alpha)
        xnorm = float(np.linalg.norm(rep.x)) or 1.0
        met = {
            "e1": norm1(R.T @ R - G) / (EPS * norm1(G)),
            "e3": rep.residual_2norm / (EPS * rep.cond1 * T.norm1() * xnorm),
            "e2": None,
        }
        if args.truth:
            xt = jsonio.vector_from_json(jsonio.load(args.truth))
            met["e2"] = float(np.linalg.norm(rep.x - xt)) / (
                EPS * rep.cond1 ** 2 * float(np.linalg.norm(xt)))
        rep.metrics = met
    if args.check:
        G = gram(T, args.alpha)
        bound = 100 * T.n * EPS * norm1(G) * float(np.linalg.norm(rep.x))
        normal_res = float(np.linalg.norm(matvec_transpose(T, b) - G @ rep.x))
        if normal_res > bound:
            code = EXIT_INVARIANT
    _emit(args, rep.to_dict())
    return code


def cmd_bench(args):
    cfg = {"n": [50, 100, 200], "mu_sigma": [0, 1, 10, 100, 1000], "count": 5,
           "seed": 0, "format": "csv", "no_family": False, "workers": 1}
    if args.config:
        try:
            loaded = jsonio.load(args.config)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(str(exc)) from exc
        cfg.update({k.replace("-", "_"): v for k, v in loaded.items()})
    for key in cfg:
        val = getattr(args, key, None)
        if val is not None and val is not False:
            cfg[key] = val
    families = ("random",) if cfg["no_family"] else ("random", "sps")
    rows = harness.bench(cfg["n"], cfg["mu_sigma"], count=cfg["count"], seed=cfg["seed"],
                         families=families, workers=cfg["workers"])
    text = harness.to_csv(rows) if cfg["format"] == "csv" else harness.to_json(rows) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "factor":
            return cmd_factor(args)
        if args.command in ("solve", "lsq"):
            return cmd_solve(args, square=args.command == "solve")
        return cmd_bench(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except NumericalBreakdown as exc:
        print(f"numerical breakdown: {exc}", file=sys.stderr)
        return EXIT_BREAKDOWN
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
