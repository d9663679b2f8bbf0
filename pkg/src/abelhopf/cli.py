"""Command-line front end: ``python -m abelhopf <command> ...``."""
from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from dataclasses import asdict

from . import abelfeed, fdbclassical, hopf, numeric
from .errors import DenominatorVanished, PreconditionFailed
from .suites import SUITES, SuiteConfig, run_suite
from .words import format_word, parse_word


class UsageError(Exception):
    pass


def parse_omega(text: str) -> float:
    """Accepts plain floats and multiples of pi such as '2pi' or 'pi'."""
    s = text.strip().lower().replace("π", "pi")
    if s.endswith("pi"):
        head = s[:-2].rstrip("*")
        return (float(head) if head else 1.0) * math.pi
    return float(s)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


# -- devlin ------------------------------------------------------------------


def _display_order(series) -> list:
    # within one grade, order by the reversed word: the order the recursion appends letters
    return sorted(series.items(), key=lambda kv: kv[0][::-1])


def cmd_devlin(args) -> int:
    if args.m < 2:
        raise UsageError("devlin needs --m >= 2")
    pieces, _ = abelfeed.devlin(args.m, args.cap)
    if args.format == "json":
        print(_dump({"m": args.m, "cap": args.cap,
                     "pieces": [{"n": n, "series": p.to_json()} for n, p in enumerate(pieces, 1)]}))
        return 0
    for n, piece in enumerate(pieces, 1):
        row = " | ".join(f"{q} {format_word(w)}" for w, q in _display_order(piece))
        print(f"n={n}: {row}")
    return 0


# -- abel --------------------------------------------------------------------


def cmd_abel(args) -> int:
    if args.m < 2:
        raise UsageError("abel needs --m >= 2")
    routes = abelfeed.abel_four_ways(args.m, args.cap)
    chosen = list(routes) if args.route == "all" else [args.route]
    if args.format == "json":
        print(_dump({name: routes[name].to_json() for name in chosen}))
    else:
        for name in chosen:
            print(f"{name}: {routes[name]}")
    if args.route == "all":
        rep = abelfeed.verify_four_way(args.m, args.cap)
        print(rep.line(), file=sys.stderr)
        return 0 if rep else 1
    return 0


# -- hopf --------------------------------------------------------------------


def _algebra(args) -> hopf.HopfAlgebra:
    mbar = args.m - 1 if args.mbar is None else args.mbar
    try:
        return hopf.HopfAlgebra(args.m, mbar)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _targets(args, H) -> list:
    if args.all:
        return H.generators(args.grade)
    try:
        return [H.gen(args.root, parse_word(args.word))]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_antipode(args) -> int:
    H = _algebra(args)
    algs = ["classical", "coderivation"] if args.alg == "both" else [args.alg]
    status = 0
    records = []
    for g in _targets(args, H):
        values = {a: H.antipode(hopf.CPoly.gen(g), a) for a in algs}
        rec = {"generator": g.label, **{a: str(v) for a, v in values.items()}}
        if len(algs) == 2:
            same = values["classical"] == values["coderivation"]
            rec["verdict"] = "MATCH" if same else "MISMATCH"
            status |= not same
        records.append(rec)
    if args.format == "json":
        print(_dump(records))
    else:
        for rec in records:
            prefix = f"S {rec['generator']}" if args.all or len(algs) == 2 else ""
            for a in algs:
                label = f" [{a}]" if len(algs) == 2 else ""
                print(f"{prefix}{label} = {rec[a]}" if prefix else rec[a])
            if "verdict" in rec:
                print(rec["verdict"])
    return int(status)


def cmd_coproduct(args) -> int:
    H = _algebra(args)
    out = []
    for g in _targets(args, H):
        t = H.reduced_coproduct(g) if args.reduced else H.coproduct(g)
        out.append((g, t))
    if args.format == "json":
        print(_dump([{"generator": g.label, "terms": t.to_json()} for g, t in out]))
    else:
        for g, t in out:
            print(f"{'reduced ' if args.reduced else ''}coproduct of {g.label}:")
            for line in t.lines() or ["0"]:
                print(f"  {line}")
    return 0


def cmd_bench(args) -> int:
    H0 = _algebra(args)
    m, mbar = H0.m, H0.mbar
    check = hopf.HopfAlgebra(m, mbar)
    gens = check.generators(args.grade)
    for i, g in enumerate(gens):
        a = check.antipode_classical(g)
        b = check.antipode_coderivation(g)
        if args.inject_mismatch and i == len(gens) - 1:
            a = a + hopf.CPoly.const(1)
        if a != b:
            print(f"antipode algorithms disagree on {g.label}; not timing", file=sys.stderr)
            return 1
    print("grade,generator_count,classical_ns,coderivation_ns,classical_median_ns,coderivation_median_ns")
    for grade in range(1, args.grade + 1):
        timings = {"classical": [], "coderivation": []}
        count = 0
        for _ in range(args.repetitions):
            for alg in timings:
                H = hopf.HopfAlgebra(m, mbar)
                fn = H.antipode_classical if alg == "classical" else H.antipode_coderivation
                targets = H.generators(grade)
                count = len(targets)
                start = time.perf_counter_ns()
                for g in targets:
                    fn(g)
                timings[alg].append(time.perf_counter_ns() - start)
        c, d = timings["classical"], timings["coderivation"]
        print(f"{grade},{count},{min(c)},{min(d)},{int(statistics.median(c))},{int(statistics.median(d))}")
    return 0


# -- fdb ---------------------------------------------------------------------


def cmd_fdb(args) -> int:
    n = args.n
    inv = fdbclassical.symbolic_toeplitz_inverse(n + 1)
    mh = fdbclassical.mh_matrix(n)
    rows = [fdbclassical.fdb_antipode_row(j) for j in range(1, n)]
    if args.format == "json":
        print(_dump({
            "toeplitz_inverse": {f"h~{j}": str(p) for j, p in enumerate(inv, 1)},
            "mh": [[str(x) for x in row] for row in mh],
            "antipode_row": {f"j={j}": str(p) for j, p in enumerate(rows, 1)},
        }))
        return 0
    for j, p in enumerate(inv, 1):
        print(f"h~{j} = {p}")
    print("M_h:")
    for row in mh:
        print("  [" + ", ".join(str(x) for x in row) + "]")
    print("top row of M_h^-1 at h1 = 1:")
    for j, p in enumerate(rows, 1):
        print(f"  j={j}: {p}")
    return 0


# -- verify ------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.m < 2:
        raise UsageError("verify needs --m >= 2")
    cfg = SuiteConfig(m=args.m, cap=args.cap, grade=args.grade, seed=args.seed)
    start = time.perf_counter()
    reports = run_suite(args.suite, cfg)
    elapsed = time.perf_counter() - start
    ok = all(reports)
    if args.format == "json":
        print(_dump({"suite": args.suite, "config": asdict(cfg), "pass": ok,
                     "checks": [r.to_json() for r in reports]}))
    else:
        for r in reports:
            print(r.line())
        print("PASS" if ok else "FAIL")
    print(f"runtime {elapsed:.2f} s", file=sys.stderr)
    return 0 if ok else 1


# -- simulate ----------------------------------------------------------------


def cmd_simulate(args) -> int:
    u = numeric.Signal.preset(args.preset, m=args.m, omega=args.omega, n=2 * args.steps + 1)
    rs = args.r or [0.1]
    try:
        report = numeric.center_check(u, rs, steps=args.steps)
    except (PreconditionFailed, DenominatorVanished) as exc:
        print(_dump({"name": "center", "pass": False, "max_error": None, "tolerance": 1e-6,
                     "detail": f"{type(exc).__name__}: {exc}"}))
        return 1
    if args.trace:
        trace = numeric.integrate_abel(numeric.u_to_v(u, rs[0]), rs[0], args.steps)
        with open(args.trace, "w") as fh:
            fh.write(trace.to_csv())
    print(_dump(report.to_json()))
    return 0 if report else 1


# -- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abelhopf", description="Abel generating series and the Hopf algebra H^(mbar)")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, choices=("text", "json")):
        sp.add_argument("--format", choices=choices, default=choices[0])

    sp = sub.add_parser("devlin", help="graded pieces c(1..cap+1) of the Abel series")
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--cap", type=int, default=4)
    fmt(sp)
    sp.set_defaults(func=cmd_devlin)

    sp = sub.add_parser("abel", help="the Abel series by one or all four routes")
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--cap", type=int, default=4)
    sp.add_argument("--route", choices=["devlin", "group-inverse", "feedback", "realization", "all"], default="all")
    fmt(sp)
    sp.set_defaults(func=cmd_abel)

    for name, func in (("antipode", cmd_antipode), ("coproduct", cmd_coproduct)):
        sp = sub.add_parser(name, help=f"{name} of coordinate generators a[k;word]")
        sp.add_argument("--m", type=int, default=3)
        sp.add_argument("--mbar", type=int, default=None)
        sp.add_argument("--root", type=int, default=1)
        sp.add_argument("--word", default="e")
        sp.add_argument("--all", action="store_true", help="every generator up to --grade")
        sp.add_argument("--grade", type=int, default=4)
        if name == "antipode":
            sp.add_argument("--alg", choices=["classical", "coderivation", "both"], default="coderivation")
        else:
            sp.add_argument("--reduced", action="store_true")
        fmt(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("bench", help="time both antipode algorithms per grade (CSV)")
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--mbar", type=int, default=None)
    sp.add_argument("--grade", type=int, default=7)
    sp.add_argument("--repetitions", type=int, default=3)
    sp.add_argument("--inject-mismatch", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("fdb", help="symbolic Toeplitz inverse, M_h and its inverse top row")
    sp.add_argument("--n", type=int, default=5)
    fmt(sp)
    sp.set_defaults(func=cmd_fdb)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--cap", type=int, default=6)
    sp.add_argument("--grade", type=int, default=6)
    sp.add_argument("--seed", type=int, default=0)
    fmt(sp, ("json", "text"))
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("simulate", help="integrate the Abel equation built from a preset input")
    sp.add_argument("--preset", choices=["cos-sin", "ramp", "zero"], default="cos-sin")
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--omega", type=parse_omega, default=2 * math.pi)
    sp.add_argument("--r", type=float, action="append")
    sp.add_argument("--steps", type=int, default=10000)
    sp.add_argument("--trace", help="write the t,z trace for the first r to this CSV file")
    sp.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
