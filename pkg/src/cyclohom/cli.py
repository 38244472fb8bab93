"""Command line front end.

    cyclohom <command> [--algebra FILE|BUILDER] [--degrees LO..HI] [...]

Exit codes: 0 success, 2 a tower did not stabilize (bounds are reported),
3 a validation failure (bad input or a failing check).  Wall-clock time goes
to stderr so that the report on stdout is reproducible.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import re
import sys
import time

from .complex_engine import ChainComplex, ComplexError
from .config import StabilizationPolicy, thread_count
from .conjugate_frobenius import conjugate_e1, conjugate_pages, psi_check
from .cyclic_group_tate import CyclicGroupModule, TateKind, tate_dims
from .cyclic_objects import (
    AlgebraError,
    AlgebraPresentation,
    BudgetExceeded,
    build_algebra,
    build_anat,
    builder,
    check_cyclic_relations,
    corpus,
    edgewise,
)
from .gf_linalg import PrimeFieldMatrix
from .periodic_homology import (
    PERIODIC_POLICY,
    PRODUCT_POLICY,
    DimsResult,
    compare_5dia,
    cp_poly_dims,
    hc_dims,
    hh_dims,
    hp_dims,
    hpbar_dims,
    restricted_dims,
    row_schedule,
)
from .suites import SUITES, run_suite

SCHEMA = 1
COMMANDS = ("hh", "hc", "hp", "hpbar", "cp", "restricted", "compare", "tate", "subdivide",
            "psi", "conj-e1", "conj-pages", "verify")
EXIT_OK, EXIT_UNSTABLE, EXIT_INVALID = 0, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cyclohom", description="Cyclic and periodic cyclic homology over F_p.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("suite", nargs="?", help="suite name for 'verify'")
    ap.add_argument("--algebra", help="algebra JSON file or builder (field, dual, matrix:2, ...)")
    ap.add_argument("--degrees", help="degree window lo..hi")
    ap.add_argument("--rows", type=int, help="largest row used by the row towers and pages")
    ap.add_argument("--cols", type=int, help="widest column cut-off used by the HP tower")
    ap.add_argument("--stab-steps", type=int, help="consecutive isomorphic stages required")
    ap.add_argument("--max-stages", type=int, help="stage budget of a tower")
    ap.add_argument("--p", type=int, default=None, help="prime for builders")
    ap.add_argument("--format", choices=("text", "csv", "json"), default="text")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--side", choices=("CPf", "CPbarf"), default="CPbarf")
    ap.add_argument("--window", help="column window lo..hi for conj-e1")
    ap.add_argument("--page", type=int, default=1, help="page r for conj-pages")
    ap.add_argument("--dims", help="psi: comma separated dims of M in degrees 0, 1")
    ap.add_argument("--order", type=int, help="tate: group order (default p)")
    ap.add_argument("--module", choices=("trivial", "regular", "jordan"), default="trivial")
    return ap


def _join_negative(argv: list[str]) -> list[str]:
    """Let '--degrees -2..2' through: argparse takes '-2..2' for an option."""
    out, it = [], iter(range(len(argv)))
    for i in it:
        a = argv[i]
        if a in ("--degrees", "--window") and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            next(it, None)
        else:
            out.append(a)
    return out


def parse_range(text: str) -> range:
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text or "")
    if not m:
        raise InputError(f"bad range {text!r}; expected lo..hi")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise InputError(f"empty range {text!r}")
    return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# algebra input

def _locate(text: str, token: str) -> str:
    i = text.find(f'"{token}"')
    if i < 0:
        return ""
    line = text.count("\n", 0, i) + 1
    col = i - (text.rfind("\n", 0, i) + 1) + 1
    return f"{line}:{col}: "


def load_algebra(source: str | None, p: int | None) -> AlgebraPresentation:
    if source is None:
        raise InputError("this command needs --algebra")
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        if not isinstance(data, dict):
            raise InputError(f"{source}:1:1: top level must be an object")
        if p is not None and "p" not in data:
            data["p"] = p
        try:
            return build_algebra(data)
        except AlgebraError as exc:
            msgs = []
            for v in exc.violations:
                tok = re.search(r"'([^']*)'", v)
                msgs.append(f"{source}:{_locate(text, tok.group(1)) if tok else ''}{v}")
            raise InputError("; ".join(msgs)) from None
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{source}: malformed algebra file: {exc}") from None
    p = 3 if p is None else p
    named = corpus(p)
    if source in named:
        return named[source]
    try:
        return builder(source, p)
    except (AlgebraError, ValueError, KeyError) as exc:
        raise InputError(f"unknown algebra {source!r}: not a file, corpus name or builder ({exc})") from None


# ---------------------------------------------------------------------------
# policies

def _policy(args, default: StabilizationPolicy, cap: int | None = None) -> StabilizationPolicy:
    steps = args.stab_steps if args.stab_steps is not None else default.steps
    stages = args.max_stages if args.max_stages is not None else default.max_stages
    if cap is not None:
        stages = min(stages, cap)
    try:
        return StabilizationPolicy(steps=steps, max_stages=max(stages, 1), lookahead=default.lookahead)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _row_cap(args, A) -> int | None:
    if args.rows is None:
        return None
    E = build_anat(A, 0)
    s = 0
    while row_schedule(E, s + 1) <= args.rows:
        s += 1
    return s + 1 if row_schedule(E, 0) <= args.rows else 1


def _col_cap(args) -> int | None:
    return None if args.cols is None else args.cols // 2 + 1


# ---------------------------------------------------------------------------
# commands

def _dims_payload(r: DimsResult) -> dict:
    d = r.as_dict()
    return {"table": d["dims"], "certificates": d["certificates"], "method": d["method"],
            "theory": d["theory"], "stabilized": r.stabilized}


def _cmd_theory(args, A, degrees):
    c = args.command
    if c == "hh":
        r = hh_dims(A, degrees or range(0, 4))
    elif c == "hc":
        r = hc_dims(A, degrees or range(0, 4))
    elif c == "hp":
        r = hp_dims(A, degrees or range(-2, 3), _policy(args, PRODUCT_POLICY, _col_cap(args)))
    else:
        pol = _policy(args, PERIODIC_POLICY, _row_cap(args, A))
        deg = degrees or range(-2, 3)
        if c == "hpbar":
            r = hpbar_dims(A, deg, pol)
        elif c == "cp":
            r = cp_poly_dims(A, deg, pol)
        else:
            r = restricted_dims(A, args.side, deg, pol)
    return _dims_payload(r), (EXIT_OK if r.stabilized else EXIT_UNSTABLE)


def _cmd_compare(args, A, degrees):
    rep = compare_5dia(A, degrees or range(-2, 3),
                       _policy(args, PERIODIC_POLICY, _row_cap(args, A)),
                       _policy(args, PRODUCT_POLICY, _col_cap(args)))
    d = rep.as_dict()
    stable = all(t.stabilized for t in rep.theories.values())
    bad = any(m.iso is False for m in rep.maps.values())
    code = EXIT_INVALID if bad else (EXIT_OK if stable else EXIT_UNSTABLE)
    return {"maps": d["maps"], "theories": d["theories"]}, code


def _cmd_tate(args, degrees):
    p = args.p or 3
    order = args.order or p
    if args.module == "trivial":
        M = CyclicGroupModule.trivial(p, order)
    elif args.module == "regular":
        M = CyclicGroupModule.regular(p, order)
    else:
        M = CyclicGroupModule(order, PrimeFieldMatrix(p, 2, 2, {(0, 0): 1, (0, 1): 1, (1, 1): 1}))
    deg = degrees or range(-4, 5)
    table = {k.value: {str(n): v for n, v in tate_dims(M, k, deg).items()} for k in TateKind}
    return {"module": args.module, "order": order, "p": p, "table": table}, EXIT_OK


def _cmd_subdivide(args, A, degrees):
    p = A.p
    deg = degrees or range(0, 4)
    top = max(deg) + 1
    W = edgewise(build_anat(A, p * (top + 1) - 1), p, top)
    rel = check_cyclic_relations(W, min(top, 2))
    a, b = hc_dims(W, deg).dims, hc_dims(A, deg).dims
    ok = rel.ok and a == b
    return {"factor": p, "relations": {"checked": rel.checked, "failures": rel.failures},
            "hc_subdivided": {str(n): v for n, v in a.items()},
            "hc_plain": {str(n): v for n, v in b.items()}, "match": a == b}, \
        (EXIT_OK if ok else EXIT_INVALID)


def _cmd_psi(args):
    p = args.p or 3
    try:
        dims = [int(x) for x in (args.dims or "1").split(",")]
    except ValueError:
        raise InputError(f"bad --dims {args.dims!r}") from None
    if not 1 <= len(dims) <= 2 or min(dims) < 0:
        raise InputError("--dims takes one or two non-negative integers")
    rng = random.Random(args.seed)
    if len(dims) == 1:
        M = ChainComplex.build(p, {0: dims[0]}, {}, 0, 0)
    else:
        a, b = dims
        d = PrimeFieldMatrix(p, a, b, {(i, j): rng.randrange(p) for i in range(a) for j in range(b)})
        M = ChainComplex.build(p, {0: a, 1: b}, {1: d}, 0, 1)
    rep = psi_check(M, p, seed=args.seed)
    return rep.as_dict(), (EXIT_OK if rep.ok else EXIT_INVALID)


def _cmd_conj_e1(args, A, degrees):
    window = parse_range(args.window) if args.window else range(-1, 2)
    e1 = conjugate_e1(A, A.p, degrees or range(-2, 3), (window.start, window.stop - 1))
    return e1.as_dict(), EXIT_OK


def _cmd_conj_pages(args, A, degrees):
    P = conjugate_pages(A, A.p, args.page, degrees or range(-2, 3), rows=args.rows or 6, step=2)
    ok = P.periodic and P.monotone
    code = EXIT_INVALID if not ok else (EXIT_OK if P.stabilized else EXIT_UNSTABLE)
    return P.as_dict(), code


def _cmd_verify(args):
    if args.suite not in SUITES:
        raise InputError(f"verify needs a suite: {', '.join(SUITES)}")
    kw = {"seed": args.seed, "threads": thread_count(args.threads)}
    if args.p is not None:
        kw["p"] = args.p
        if args.suite in ("relations", "tate"):
            kw["primes"] = (args.p,)
    res = run_suite(args.suite, **kw)
    code = {"pass": EXIT_OK, "unstable": EXIT_UNSTABLE, "fail": EXIT_INVALID}[res.status]
    return res.as_dict(), code


def run(argv: list[str]) -> tuple[dict, int]:
    args = _parser().parse_args(_join_negative(argv))
    degrees = parse_range(args.degrees) if args.degrees else None
    c = args.command
    needs_algebra = c not in ("tate", "psi", "verify")
    A = load_algebra(args.algebra, args.p) if needs_algebra else None
    if c in ("hh", "hc", "hp", "hpbar", "cp", "restricted"):
        result, code = _cmd_theory(args, A, degrees)
    elif c == "compare":
        result, code = _cmd_compare(args, A, degrees)
    elif c == "tate":
        result, code = _cmd_tate(args, degrees)
    elif c == "subdivide":
        result, code = _cmd_subdivide(args, A, degrees)
    elif c == "psi":
        result, code = _cmd_psi(args)
    elif c == "conj-e1":
        result, code = _cmd_conj_e1(args, A, degrees)
    elif c == "conj-pages":
        result, code = _cmd_conj_pages(args, A, degrees)
    else:
        result, code = _cmd_verify(args)
    echo = [a for a in argv]
    # the thread count never changes results, keep it out of the report
    for flag in ("--threads",):
        while flag in echo:
            i = echo.index(flag)
            del echo[i:i + 2]
    echo = [a for a in echo if not a.startswith("--threads=")]
    report = {
        "schema": SCHEMA,
        "command": echo,
        "config": {
            "algebra": None if A is None else (A.name or args.algebra),
            "p": A.p if A is not None else (args.p or 3),
            "degrees": None if degrees is None else [degrees.start, degrees.stop - 1],
            "rows": args.rows, "cols": args.cols,
            "stab_steps": args.stab_steps, "max_stages": args.max_stages, "seed": args.seed,
        },
        "result": result,
        "status": {EXIT_OK: "ok", EXIT_UNSTABLE: "not-stabilized", EXIT_INVALID: "failed"}[code],
    }
    return report, code


# ---------------------------------------------------------------------------
# output

def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(map(str, v)) + "]"
    return "?" if v is None else str(v)


def _rows(report: dict):
    """Flatten the result into (section, key, value) rows for text and csv."""
    r = report["result"]
    if "table" in r and isinstance(r["table"], dict):
        t = r["table"]
        if t and all(isinstance(v, dict) for v in t.values()):
            for kind, sub in t.items():
                for n, v in sub.items():
                    yield kind, n, v
        else:
            for n, v in t.items():
                cert = r.get("certificates", {}).get(n, {})
                note = "" if cert.get("stabilized", True) else " (bounds)"
                yield r.get("theory", report["command"][0]), n, f"{_fmt(v)}{note}"
            for n, v in r.get("infinity", {}).items():
                yield "E_inf", n, v
            for n, v in r.get("totals", {}).items():
                yield "total", n, v
    if "maps" in r:
        for name, m in r["maps"].items():
            yield "map", name, f"{m['source']} -> {m['target']}: iso={_fmt(m['iso'])} ({m['reason']})"
        for name, th in r["theories"].items():
            for n, v in th["dims"].items():
                yield name, n, _fmt(v)
    if "checks" in r:
        for c in r["checks"]:
            yield c["status"].upper(), c["check"], json.dumps(c["detail"], sort_keys=True, default=str)
    for key in ("tight", "iso", "additive", "degree_law", "I_dims", "constant", "probe_constant",
                "chain_map", "match", "hc_subdivided", "hc_plain", "periodic", "monotone",
                "stabilized"):
        if key in r and not (key == "stabilized" and "table" in r and "theory" in r):
            yield "value", key, _fmt(r[key]) if not isinstance(r[key], dict) else json.dumps(r[key])


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, default=str)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["section", "key", "value"])
        for row in _rows(report):
            w.writerow(row)
        return buf.getvalue().rstrip("\n")
    lines = [f"cyclohom {' '.join(report['command'])}", f"status: {report['status']}"]
    for sec, key, val in _rows(report):
        lines.append(f"  {sec:<10} {key:<8} {val}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    t0 = time.perf_counter()
    try:
        report, code = run(argv)
    except InputError as exc:
        print(f"cyclohom: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (AlgebraError, ComplexError, BudgetExceeded, ValueError) as exc:
        print(f"cyclohom: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    fmt = "text"
    if "--format" in argv:
        i = argv.index("--format")
        fmt = argv[i + 1] if i + 1 < len(argv) else fmt
    for a in argv:
        if a.startswith("--format="):
            fmt = a.split("=", 1)[1]
    print(render(report, fmt))
    print(f"wall-clock: {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
