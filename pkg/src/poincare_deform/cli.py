"""Command-line front end: ``verify``, ``simulate`` and ``bracket``.

Exit codes: 0 when everything passes, 1 when a check fails, 2 on usage or
configuration errors.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from collections.abc import Sequence

from . import __version__, spin, spinless
from . import dynamics as dyn
from .deformed import Algebra
from .parse import ParseError, factor_content, parse_poly
from .report import combined_json
from .symmetry import build_symmetry_structure, symmetry_ring
from .suites import SUITE_NAMES, ConfigError, default_order, run_suites, validate_order

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
BRACKET_SUITES = ("core", "symmetry", "spinless", "spin")


class UsageError(Exception):
    pass


def _vector(text: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected four comma-separated numbers, got {text!r}")
    if len(vals) != 4 or not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"expected four finite numbers, got {text!r}")
    return vals


def _finite(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="poincare-deform",
        description="Exact verification and particle dynamics for a deformed Poincare algebra.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
    v.add_argument("--order", type=int, default=None,
                   help="truncation order N for the realization suites "
                        "(default: $POINCARE_DEFORM_ORDER, else 8 spinless / 6 spin)")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--seed", type=int, default=0, help="seed for random substitution points")
    v.add_argument("--jobs", type=int, default=1, help="worker processes for --suite all")

    s = sub.add_parser("simulate", help="integrate a trajectory and report")
    s.add_argument("--lambda", dest="lam", type=_finite, required=True)
    s.add_argument("--m", type=_finite, required=True)
    s.add_argument("--alpha", type=_finite, default=1.0)
    s.add_argument("--x0", type=_vector, default=[0.0, 0.0, 0.0, 0.0])
    s.add_argument("--p", type=_vector, required=True)
    s.add_argument("--dt", type=_finite, default=1e-3)
    s.add_argument("--steps", type=int, default=10_000,
                   help="step count (photon, free motion) or step budget per direction (lifetime)")
    s.add_argument("--out", default=None, help="trajectory CSV path")
    s.add_argument("--format", choices=("text", "json"), default="text")

    b = sub.add_parser("bracket", help="exact bracket of two expressions")
    b.add_argument("lhs")
    b.add_argument("rhs")
    b.add_argument("--suite", choices=BRACKET_SUITES, default="core")
    b.add_argument("--order", type=int, default=None,
                   help="truncation order for the spinless and spin suites")
    b.add_argument("--factor", action="store_true", help="pull out the monomial content")
    b.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def cmd_verify(args) -> int:
    order = args.order if args.order is not None else default_order()
    validate_order(order)
    if args.jobs < 1:
        raise ConfigError("--jobs must be positive")
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    reports = run_suites(names, order, args.seed, args.jobs)
    config = {"suite": args.suite, "order": order, "seed": args.seed}
    if args.format == "json":
        print(combined_json(reports, config))
    else:
        for r in reports:
            print(r.to_text())
        if len(reports) > 1:
            fails = sum(r.totals["fail"] for r in reports)
            total = sum(r.totals["total"] for r in reports)
            print(f"== all: {total} checks, {fails} fail ==")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _bracket_context(suite: str, order: int | None):
    """(ring, bracket function, named quantities, post-processing, note)."""
    if suite == "core":
        alg = Algebra()
        names = {f"w{k}": w for k, w in enumerate(alg.w_comp)}
        return (alg.ring, alg.bracket, names, alg.reduce,
                "reduced on det gamma = det gammabar = 1")
    if suite == "symmetry":
        ring = symmetry_ring()
        s = build_symmetry_structure(ring)
        return ring, s.bracket, {}, None, ""
    if suite == "spinless":
        real = spinless.Realization(order or spinless.DEFAULT_ORDER)
    else:
        real = spin.SpinRealization(order or spin.DEFAULT_ORDER)
    names = {"detp": real.p.det2()}
    return (real.ring, real.bracket, names, real.trunc, f"O(l^{real.order})")


def cmd_bracket(args) -> int:
    order = args.order if args.order is not None else default_order()
    validate_order(order)
    ring, bracket, names, post, note = _bracket_context(args.suite, order)
    try:
        f = parse_poly(args.lhs, ring, names)
        g = parse_poly(args.rhs, ring, names)
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    result = bracket(f, g)
    if post is not None:
        result = post(result)
    text = factor_content(result) if args.factor else str(result)
    if note.startswith("O("):
        text = f"{text} + {note}"
    if args.format == "json":
        print(json.dumps({"suite": args.suite, "lhs": args.lhs, "rhs": args.rhs,
                          "result": str(result), "factored": factor_content(result),
                          "note": note}, indent=2))
    else:
        print(text)
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.dt <= 0 or args.steps <= 0:
        raise UsageError("--dt and --steps must be positive")
    s0 = dyn.NumericState(args.x0, args.p, lam=args.lam, m=args.m, alpha=args.alpha)
    shell = s0.detp - args.m ** 2
    if abs(shell) > 1e-9 * max(1.0, args.m ** 2):
        raise UsageError(f"p is off the mass shell: det p~ - m^2 = {shell:.6g}")
    try:
        dyn.f_numeric(s0.x, s0.p, s0.lam)
    except dyn.SingularityError as exc:
        raise UsageError(f"singular initial state: {exc}") from None

    info = {"lambda": args.lam, "m": args.m, "alpha": args.alpha,
            "x0": list(args.x0), "p": list(args.p), "dt": args.dt}
    if args.m == 0:
        rep, traj = dyn.photon_check(s0, args.dt, args.dt * args.steps)
        ok = bool(rep.passed())
        info.update(kind="photon", steps=rep.steps, max_collinearity=rep.max_collinearity,
                    max_xdot_p=rep.max_minkowski, tolerance=1e-9, ok=ok)
        rows = traj
    elif args.lam == 0:
        traj = dyn.integrate(s0, args.dt, args.steps)
        xs = [r.x for r in traj.rows]
        taus = [r.tau for r in traj.rows]
        v = (xs[-1] - xs[0]) / (taus[-1] - taus[0])
        dev = max(float(abs(x - xs[0] - v * (t - taus[0])).max()) for x, t in zip(xs, taus))
        ok = True
        info.update(kind="free", steps=len(traj.rows) - 1, max_line_deviation=dev, ok=ok)
        rows = traj
    else:
        try:
            rep, fwd, bwd = dyn.lifetime_check(s0, args.dt, args.steps)
        except RuntimeError as exc:
            raise UsageError(str(exc)) from None
        ok = bool(rep.passed())
        info.update(kind="lifetime", steps=rep.steps, formula=rep.formula,
                    coordinate_time=rep.coordinate_time, proper_time=rep.proper_time,
                    tau_span=rep.tau_span, relative_error=rep.relative_error,
                    tolerance=5e-3, ok=ok)
        rows = dyn.Trajectory(bwd.rows[:0:-1] + fwd.rows, fwd.lam, fwd.alpha)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            rows.write_csv(fh)
        info["csv"] = args.out
    if args.format == "json":
        print(json.dumps(info, indent=2, default=float))
    else:
        for k, val in info.items():
            print(f"{k}: {val}")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "simulate": cmd_simulate, "bracket": cmd_bracket}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
