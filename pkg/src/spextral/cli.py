"""Command-line interface: ``spextral <command> [flags]``.

Exit codes: 0 success, 2 argument error, 3 computation error (the eigen
solver did not converge), 4 verification failure. Errors are written to
stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from spextral import acceptance
from spextral import families as fam
from spextral.containment import find_forest, parse_pattern
from spextral.errors import ConvergenceError, Graph6Error, UnsupportedPattern
from spextral.graph import graph6_decode, graph6_encode
from spextral.search import SCHEMA, brute_ex, brute_ex_sp, default_jobs, load_universe
from spextral.spectral import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    hong_bound,
    perron_level_sets,
    power_iteration,
    structure_claims,
)
from spextral.turan import predicted_spectral_extremal, turan_for_pattern

EXIT_OK, EXIT_ARGS, EXIT_COMPUTE, EXIT_VERIFY = 0, 2, 3, 4

FAMILIES = {
    "split": (fam.Split, ("n", "h")),
    "splitplus": (fam.SplitPlus, ("n", "h")),
    "cjc": (fam.CliqueJoinCliques, ("n", "k", "l", "r")),
    "lfe": (fam.LinearForestExtremal, ("n", "k")),
    "clique-isolated": (fam.CliqueUnionIsolated, ("n", "c")),
}


def load_schema(name: str) -> dict:
    """The shipped JSON schema for a command's output (``search_report``, ``error``, ...)."""
    return json.loads(resources.files("spextral").joinpath("schemas", f"{name}.json").read_text())


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _round(obj):
    """Round every float to 15 significant digits, recursively."""
    if isinstance(obj, float):
        return float(f"{obj:.15g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _emit(payload: dict, out) -> None:
    body = {"schema": SCHEMA, **payload}
    out.write(json.dumps(_round(body), sort_keys=True) + "\n")


def _graph_arg(args, stdin):
    text = args.g6
    if text is None:
        lines = [ln.strip() for ln in stdin if ln.strip()]
        if not lines:
            raise UsageError("no graph given: pass --g6 or a graph6 line on stdin")
        text = lines[0]
    return graph6_decode(text)


# ---- commands -----------------------------------------------------------------


def cmd_construct(args, out, stdin):
    cls, fields = FAMILIES[args.family]
    values = {}
    for name in fields:
        v = getattr(args, name)
        if v is None and args.family == "cjc" and name == "r" and None not in (args.n, args.k, args.l):
            v = (args.n - args.k) % (args.l - 1) if args.l >= 2 else None
        if v is None:
            raise UsageError(f"family {args.family} needs --{name}")
        values[name] = v
    out.write(graph6_encode(cls(**values).build()) + "\n")


def cmd_rho(args, out, stdin):
    g = _graph_arg(args, stdin)
    res = power_iteration(g, tol=args.tol, max_iter=args.max_iter)
    _emit({"rho": res.rho, "residual": res.residual, "iterations": res.iterations, "tol": args.tol}, out)


def cmd_bound(args, out, stdin):
    g = _graph_arg(args, stdin)
    rho = power_iteration(g).rho
    hong = hong_bound(g)
    _emit({"hong": hong, "rho": rho, "ok": rho <= hong + 1e-9, "tol": 1e-9}, out)


def cmd_turan(args, out, stdin):
    f = parse_pattern(args.pattern)
    value, pred = turan_for_pattern(f, args.n)
    fams = [] if pred is None else [graph6_encode(x.build()) for x in pred.families]
    _emit(
        {
            "pattern": str(f),
            "n": args.n,
            "value": value.value,
            "case": value.case,
            "guaranteed": value.guaranteed,
            "threshold": value.threshold,
            "families": fams,
        },
        out,
    )


def cmd_predict(args, out, stdin):
    f = parse_pattern(args.pattern)
    pred = predicted_spectral_extremal(f, args.n, matching_reading=args.reading)
    body = pred.as_dict()
    body["descriptions"] = body.pop("families")
    body["families"] = [graph6_encode(x.build()) for x in pred.families]
    _emit({"pattern": str(f), "n": args.n, **body}, out)


def cmd_free(args, out, stdin):
    g = _graph_arg(args, stdin)
    f = parse_pattern(args.pattern)
    emb = find_forest(g, f)
    body = {"pattern": str(f), "free": emb is None}
    if emb is not None:
        body["embedding"] = emb
    _emit(body, out)


def cmd_levelsets(args, out, stdin):
    g = _graph_arg(args, stdin)
    ls = perron_level_sets(g, args.k, args.l, tol=args.tol)
    _emit(
        {
            "k": ls.k,
            "l": ls.l,
            "h": ls.h,
            "t": ls.t,
            "alpha": ls.alpha,
            "z": ls.z,
            "x_z": ls.x_z,
            "R": sorted(ls.R),
            "Rp": sorted(ls.Rp),
            "Rpp": sorted(ls.Rpp),
            "boundary_flags": sorted(ls.boundary),
            "tol": args.tol,
        },
        out,
    )


def cmd_claims(args, out, stdin):
    g = _graph_arg(args, stdin)
    rep = structure_claims(g, args.k, args.l, tol=args.tol)
    _emit({"k": args.k, "l": args.l, **rep.as_dict(), "tol": args.tol}, out)


def _search(args, out, fn, **extra):
    f = parse_pattern(args.pattern)
    universe = load_universe(args.g6_file) if args.g6_file else None
    jobs = args.jobs if args.jobs is not None else default_jobs()
    if jobs < 1:
        raise UsageError("--jobs must be at least 1")
    rep = fn(args.n, f, jobs=jobs, allow_large=args.allow_large, universe=universe, **extra)
    out.write(rep.to_json(timing=args.timing) + "\n")


def cmd_search_ex(args, out, stdin):
    _search(args, out, brute_ex)


def cmd_search_sp(args, out, stdin):
    _search(args, out, brute_ex_sp, tol=args.tol)


def cmd_verify(args, out, stdin):
    outcomes = acceptance.run(args.suite, echo=lambda line: out.write(line + "\n"))
    failed = [o.number for o in outcomes if not o.passed]
    out.write(f"{len(outcomes) - len(failed)}/{len(outcomes)} criteria passed\n")
    if args.json:
        _emit({"suite": args.suite, "results": [o.as_dict() for o in outcomes]}, out)
    return EXIT_VERIFY if failed else EXIT_OK


# ---- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spextral", description="Spectral extremal problems for star-path forests.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_flag(sp):
        sp.add_argument("--g6", help="graph in graph6; read from stdin when omitted")

    c = sub.add_parser("construct", help="print an extremal construction as graph6")
    c.add_argument("--family", required=True, choices=sorted(FAMILIES))
    for name in ("n", "h", "k", "l", "r", "c"):
        c.add_argument(f"--{name}", type=int)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("rho", help="spectral radius by power iteration")
    graph_flag(c)
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    c.set_defaults(func=cmd_rho)

    c = sub.add_parser("bound", help="compare rho with the Hong-type bound")
    graph_flag(c)
    c.set_defaults(func=cmd_bound)

    for name, func in (("turan", cmd_turan), ("predict", cmd_predict)):
        c = sub.add_parser(name)
        c.add_argument("--pattern", required=True)
        c.add_argument("--n", type=int, required=True)
        c.set_defaults(func=func)
        if name == "predict":
            c.add_argument("--reading", choices=("printed", "matching"), default="printed")

    c = sub.add_parser("free", help="decide whether a graph avoids a pattern")
    c.add_argument("--pattern", required=True)
    graph_flag(c)
    c.set_defaults(func=cmd_free)

    for name, func in (("levelsets", cmd_levelsets), ("claims", cmd_claims)):
        c = sub.add_parser(name)
        graph_flag(c)
        c.add_argument("--k", type=int, required=True)
        c.add_argument("--l", type=int, required=True)
        c.add_argument("--tol", type=float, default=DEFAULT_TOL)
        c.set_defaults(func=func)

    for name, func in (("search-ex", cmd_search_ex), ("search-sp", cmd_search_sp)):
        c = sub.add_parser(name)
        c.add_argument("--pattern", required=True)
        c.add_argument("--n", type=int, required=True)
        c.add_argument("--jobs", type=int, default=None, help="worker processes (default: $SPEXTRAL_JOBS or 1)")
        c.add_argument("--g6-file", help="search this graph6 list instead of generating graphs")
        c.add_argument("--allow-large", action="store_true", help="permit the minutes-long n = 10 run")
        c.add_argument("--timing", action="store_true", help="include elapsed seconds in the report")
        if name == "search-sp":
            c.add_argument("--tol", type=float, default=1e-9)
        c.set_defaults(func=func)

    c = sub.add_parser("verify", help="run the acceptance criteria")
    c.add_argument("--suite", choices=("all", *acceptance.SUITES), default="all")
    c.add_argument("--json", action="store_true", help="also print a JSON summary")
    c.set_defaults(func=cmd_verify)
    return p


def _fail(code: int, kind: str, message: str, err, **extra) -> int:
    err.write(json.dumps({"schema": SCHEMA, "error": kind, "message": message, "exit_code": code, **extra}) + "\n")
    return code


def run(argv=None, out=None, err=None, stdin=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin if stdin is not None else sys.stdin
    try:
        args = build_parser().parse_args(argv)
        code = args.func(args, out, stdin)
    except UsageError as exc:
        return _fail(EXIT_ARGS, "usage", str(exc), err)
    except Graph6Error as exc:
        return _fail(EXIT_ARGS, "graph6", str(exc), err, offset=exc.offset)
    except UnsupportedPattern as exc:
        return _fail(EXIT_ARGS, "unsupported_pattern", str(exc), err)
    except (ValueError, OverflowError) as exc:
        return _fail(EXIT_ARGS, "argument", str(exc), err)
    except ConvergenceError as exc:
        return _fail(EXIT_COMPUTE, "convergence", str(exc), err, graph6=exc.graph6)
    return EXIT_OK if code is None else code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
