"""Command-line front end: ``acfgeom <command> ...`` or ``python -m acfgeom``.

Exit codes: 0 success or true, 1 false or a failed check, 2 usage or parse
error, 3 elimination budget or oracle size cap exceeded.  ``--json`` prints a
single document described by ``data/cli_output.schema.json``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from importlib import resources

from . import acceptance
from .algebra.finite_field import FieldTooLarge
from .algebra.poly import is_prime
from .formula import BudgetExceeded, DEFAULT_BUDGET, ParseError, free_vars, parse, to_text
from .geometric import (PreconditionError, bounding_polys, dichotomy, dimension,
                        frobenius_injection_demo, is_infinite)
from .oracle import SWEEP_QS, OracleTooLarge, exhaustive_trick_sweep
from .qe import FieldContext, FreeVariablesError, decide, qe
from .randgen import DEFAULT_SEED

OK, FALSE, USAGE, LIMIT = 0, 1, 2, 3


def schema() -> dict:
    """The JSON schema of ``--json`` output."""
    text = resources.files("acfgeom").joinpath("data/cli_output.schema.json").read_text()
    return json.loads(text)


class UsageError(ValueError):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _name_list(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected at least one variable name")
    if len(set(names)) != len(names):
        raise argparse.ArgumentTypeError(f"repeated variable in {text!r}")
    return names


def _characteristic(text: str) -> int:
    try:
        c = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"characteristic must be 0 or a prime, got {text!r}")
    if c != 0 and not is_prime(c):
        raise argparse.ArgumentTypeError(f"characteristic must be 0 or a prime, got {c}")
    return c


def _global_flags(parser: argparse.ArgumentParser, suppress: bool):
    # Subcommand copies default to SUPPRESS so flags given before the
    # subcommand are not reset by the subparser.
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--char", type=_characteristic, default=d(0),
                        help="field characteristic, 0 or a prime (default 0)")
    parser.add_argument("--json", action="store_true", default=d(False),
                        help="print one JSON document instead of text")
    parser.add_argument("--budget", type=int, default=d(None),
                        help=f"DNF size budget for elimination (default {DEFAULT_BUDGET}, "
                             "or ACFGEOM_BUDGET)")
    parser.add_argument("--trace", action="store_true", default=d(False),
                        help="report elimination steps")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="acfgeom",
                                 description="Finiteness, dimension and uniform bounds for "
                                             "definable sets over algebraically closed fields.")
    _global_flags(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    def cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_flags(p, suppress=True)
        return p

    expr_help = "formula text, or @FILE to read it from a file"
    cmd("qe", "eliminate quantifiers").add_argument("expr", help=expr_help)
    cmd("decide", "decide a sentence").add_argument("expr", help=expr_help)

    p = cmd("infinite", "is the set of tuples infinite")
    p.add_argument("--vars", type=_name_list, required=True)
    p.add_argument("expr", help=expr_help)

    p = cmd("dim", "dimension of a definable set")
    p.add_argument("--vars", type=_name_list, required=True)
    p.add_argument("expr", help=expr_help)

    p = cmd("bound", "witness polynomials and a uniform bound for finite fibers")
    p.add_argument("--params", type=_name_list, required=True)
    p.add_argument("--fiber", required=True)
    p.add_argument("expr", help=expr_help)

    p = cmd("dichotomy", "slope set or injection slope of a subset of F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--set", dest="members", type=_int_list, required=True,
                   help="element codes, e.g. 0,1,4")

    check = cmd("check", "run exhaustive and randomized checks")
    csub = check.add_subparsers(dest="check", required=True, metavar="check")

    def ccmd(name, help_text):
        p = csub.add_parser(name, help=help_text)
        _global_flags(p, suppress=True)
        return p

    ccmd("trick", "dichotomy on every subset of F_q").add_argument(
        "--q-list", type=_int_list, default=list(SWEEP_QS))
    p = ccmd("qe", "random formulas: elimination against the finite-field oracle")
    p.add_argument("--primes", type=_int_list, default=list(acceptance.QE_PRIMES))
    p.add_argument("--count", type=int, default=acceptance.QE_COUNT)
    p.add_argument("--seed", type=int, default=None,
                   help=f"default {DEFAULT_SEED}, or ACFGEOM_SEED")
    p = ccmd("perfect", "Frobenius injection on rational functions over F_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p = ccmd("suite", "all acceptance checks")
    p.add_argument("--count", type=int, default=acceptance.QE_COUNT,
                   help="random formulas per prime for the elimination check")
    p.add_argument("--seed", type=int, default=None)
    return ap


# ------------------------------------------------------------------ commands

class _Run:
    """Collects what a command produces; rendered as text or JSON at the end."""

    def __init__(self, args):
        self.args = args
        self.command = args.command if args.command != "check" else f"check {args.check}"
        self.input = None
        self.characteristic = args.char
        self.result = None
        self.certificate = None
        self.text: list[str] = []
        self.code = OK
        self.timings: dict[str, float] = {}
        self.trace = [] if args.trace else None
        budget = args.budget if args.budget is not None else _env_int("ACFGEOM_BUDGET",
                                                                     DEFAULT_BUDGET)
        if budget <= 0:
            raise UsageError("--budget must be positive")
        self.ctx = FieldContext.of(args.char, budget=budget, trace=self.trace)

    def formula(self):
        src = self.args.expr
        if src.startswith("@"):
            path = src[1:]
            try:
                with open(path, encoding="utf-8") as fh:
                    src = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        self.input = src
        t0 = time.perf_counter()
        f = parse(src, self.args.char)
        self.timings["parse_s"] = time.perf_counter() - t0
        return f

    def seed(self):
        s = self.args.seed
        return s if s is not None else _env_int("ACFGEOM_SEED", DEFAULT_SEED)

    def verdict(self, value: bool):
        self.result = bool(value)
        self.text.append("true" if value else "false")
        self.code = OK if value else FALSE


def _qe(run: _Run):
    g = qe(run.formula(), run.ctx)
    run.result = to_text(g)
    run.text.append(run.result)


def _decide(run: _Run):
    run.verdict(decide(run.formula(), run.ctx))


def _infinite(run: _Run):
    f = run.formula()
    res = is_infinite(f, run.args.vars, run.ctx)
    if isinstance(res, bool):
        run.verdict(res)
    else:
        run.result = to_text(res)
        run.certificate = {"parameters": sorted(free_vars(res))}
        run.text.append(run.result)


def _dim(run: _Run):
    res = dimension(run.formula(), run.args.vars, run.ctx)
    run.result = res.dim
    run.certificate = res.to_dict()
    run.text.append(res.to_text())


def _bound(run: _Run):
    if run.args.fiber in run.args.params:
        raise UsageError(f"fiber variable {run.args.fiber} is also a parameter")
    res = bounding_polys(run.formula(), run.args.params, run.args.fiber, run.ctx)
    run.result = res.uniform_bound
    run.certificate = res.to_dict()
    run.text.append(res.to_text())


def _dichotomy(run: _Run):
    q, members = run.args.q, run.args.members
    run.input = {"q": q, "set": members}
    rep = dichotomy(members, q)
    run.characteristic = next(p for p in range(2, q + 1) if q % p == 0)
    d = rep.to_dict()
    run.result = d
    run.text.append(rep.to_text())
    run.code = OK if rep.cover or rep.injective else FALSE


def _check_trick(run: _Run):
    qs = run.args.q_list
    run.input = {"q_list": qs}
    run.characteristic = None
    reports = []
    for q in qs:
        r = exhaustive_trick_sweep(q)
        reports.append(r.to_dict())
        run.text.append(f"q {q}: {r.subsets} subsets, {r.cover} cover, {r.injection} injection, "
                        f"{r.failures} failures")
    run.result = reports
    run.code = OK if all(r["ok"] for r in reports) else FALSE


def _criteria(run: _Run, results):
    run.result = [r.to_dict() for r in results]
    run.code = OK if all(r.passed for r in results) else FALSE


def _check_qe(run: _Run):
    a = run.args
    if a.count <= 0:
        raise UsageError("--count must be positive")
    bad = [p for p in a.primes if not is_prime(p)]
    if bad or not a.primes:
        raise UsageError(f"--primes must list primes, got {a.primes}")
    seed = run.seed()
    run.input = {"primes": a.primes, "count": a.count, "seed": seed}
    run.characteristic = None
    res = acceptance.qe_soundness(tuple(a.primes), a.count, seed)
    run.text.append(res.line())
    run.text += [f"  mismatch: {f}" for f in res.failures[:10]]
    _criteria(run, [res])


def _check_perfect(run: _Run):
    p, d = run.args.p, run.args.deg
    if not is_prime(p) or d < 0:
        raise UsageError("--p must be prime and --deg nonnegative")
    run.input = {"p": p, "deg": d}
    run.characteristic = p
    rep = frobenius_injection_demo(p, d)
    run.result = rep.to_dict()
    run.text.append(rep.to_text())
    run.code = OK if rep.collisions == 0 else FALSE


def _check_suite(run: _Run):
    seed = run.seed()
    run.input = {"count": run.args.count, "seed": seed}
    run.characteristic = None
    live = not run.args.json

    def report(res):
        if live:
            print(res.line(), flush=True)

    results = acceptance.run_all(seed=seed, qe_count=run.args.count, report=report)
    _criteria(run, results)


_COMMANDS = {
    "qe": _qe, "decide": _decide, "infinite": _infinite, "dim": _dim, "bound": _bound,
    "dichotomy": _dichotomy, "check trick": _check_trick, "check qe": _check_qe,
    "check perfect": _check_perfect, "check suite": _check_suite,
}


# ------------------------------------------------------------------ driver

def _caret(src: str, err: ParseError) -> str:
    lines = src.splitlines() or [""]
    line = lines[min(err.line, len(lines)) - 1]
    return f"  {line}\n  {' ' * (err.col - 1)}^"


def _document(run: _Run, error: dict | None) -> dict:
    doc = {"command": run.command,
           "input": run.input if run.input is not None else getattr(run.args, "expr", ""),
           "characteristic": run.characteristic,
           "result": None if error else run.result,
           "timings": {k: round(v, 6) for k, v in run.timings.items()}}
    if run.certificate is not None and not error:
        doc["certificate"] = run.certificate
    if run.trace is not None:
        doc["trace"] = list(run.trace)
    if error:
        doc["error"] = error
    doc["exit_code"] = run.code
    return doc


def run(argv=None, out=None, err=None) -> int:
    """Execute one command line and return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return USAGE if exc.code else OK
    t0 = time.perf_counter()
    error = None
    try:
        run_ = _Run(args)
    except UsageError as exc:
        print(f"acfgeom: error: {exc}", file=err)
        return USAGE
    try:
        _COMMANDS[run_.command](run_)
    except ParseError as exc:
        run_.code = USAGE
        error = {"kind": "parse", "message": str(exc), "line": exc.line, "column": exc.col}
        if not args.json:
            print(f"acfgeom: parse error: {exc}\n{_caret(run_.input or '', exc)}", file=err)
    except BudgetExceeded as exc:
        run_.code = LIMIT
        error = {"kind": "budget", "message": str(exc)}
        if not args.json:
            print(f"acfgeom: budget exceeded: {exc}", file=err)
    except (OracleTooLarge, FieldTooLarge) as exc:
        run_.code = LIMIT
        error = {"kind": "cap", "message": str(exc)}
        if not args.json:
            print(f"acfgeom: size cap: {exc}", file=err)
    except (UsageError, FreeVariablesError, PreconditionError, ValueError) as exc:
        run_.code = USAGE
        error = {"kind": "usage", "message": str(exc)}
        if not args.json:
            print(f"acfgeom: error: {exc}", file=err)
    run_.timings["total_s"] = time.perf_counter() - t0

    if args.json:
        print(json.dumps(_document(run_, error), indent=2), file=out)
    elif error is None:
        if run_.text:
            print("\n".join(run_.text), file=out)
        if run_.trace:
            print("\n".join(f"trace: {t}" for t in run_.trace), file=err)
    return run_.code


def main():  # pragma: no cover - console entry point
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
