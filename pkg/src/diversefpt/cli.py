"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 parse error, 4 bad input or violated
precondition, 5 budget exceeded, 6 witness verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .bases import WdbConfig, WdbInstance, kernelize_linear, solve_wdb
from .cis import WdcisInstance, solve_wdcis
from .errors import BudgetError, DiverseError, InputError, ParseError
from .io import (format_graph, format_matroid, parse_graph, parse_matroid,
                 parse_witness, read_header_params)
from .matchings import DpmConfig, Graph, solve_dpm
from .matroids import LinearMatroid, check_axioms
from .oracles import reduction_3partition
from .witness import Answer, Verification, verify_bases, verify_common_independent, verify_matchings

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_INPUT, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4, 5, 6


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _params(args, text: str) -> tuple[int, int]:
    header = read_header_params(text)
    k = args.k if args.k is not None else header.get("k")
    d = args.d if args.d is not None else header.get("d")
    if k is None or d is None:
        raise InputError("--k and --d are required (or '# k=.. d=..' in the instance file)")
    return k, d


def _pairwise_rows(answer_witness) -> list[dict]:
    if answer_witness is None:
        return []
    return [{"i": i, "j": j, "weight": w} for (i, j), w in sorted(answer_witness.pairwise.items())]


def _emit(args, record: dict, out) -> None:
    if args.json:
        out.write(json.dumps(record, sort_keys=True) + "\n")
        return
    out.write(f"answer: {record['answer']}\n")
    for i, s in enumerate(record.get("witness") or []):
        out.write(f"set {i}: {' '.join(map(str, s)) if s else '-'}\n")
    for row in record.get("pairwise") or []:
        out.write(f"pair {row['i']} {row['j']}: {row['weight']}\n")
    for key, value in sorted((record.get("stats") or {}).items()):
        out.write(f"{key}: {value}\n")


def _answer_record(problem: str, k: int, d: int, ans: Answer, seed=None) -> dict:
    rec = {
        "problem": problem,
        "k": k,
        "d": d,
        "answer": ans.label,
        "witness": ans.witness.as_lists() if ans.witness else None,
        "pairwise": _pairwise_rows(ans.witness),
        "stats": ans.stats,
    }
    if seed is not None:
        rec["seed"] = seed
    return rec


# -- commands ------------------------------------------------------------------------

def cmd_solve(args, out) -> int:
    if args.problem == "dpm":
        text = _read(args.files[0])
        G = parse_graph(text)
        k, d = _params(args, text)
        cfg = DpmConfig(repetitions=args.repetitions, trial_budget=args.trial_budget)
        ans = solve_dpm(G, k, d, seed=args.seed, config=cfg)
        _emit(args, _answer_record("dpm", k, d, ans, args.seed), out)
        return EXIT_OK
    text = _read(args.files[0])
    spec = parse_matroid(text)
    k, d = _params(args, text)
    if args.problem == "wdb":
        _need_files(args, 1)
        ans = solve_wdb(WdbInstance(spec.matroid, spec.weights, k, d),
                        WdbConfig(max_candidates=args.max_candidates))
    else:
        _need_files(args, 2)
        spec2 = parse_matroid(_read(args.files[1]))
        if spec2.matroid.ground != spec.matroid.ground:
            raise InputError("the two matroids must have the same number of elements")
        ans = solve_wdcis(WdcisInstance(spec.matroid, spec2.matroid, spec.weights, k, d))
    _emit(args, _answer_record(args.problem, k, d, ans), out)
    return EXIT_OK


def _need_files(args, count: int) -> None:
    if len(args.files) != count:
        raise InputError(f"'{args.problem}' expects {count} instance file(s), got {len(args.files)}")


def cmd_kernelize(args, out) -> int:
    text = _read(args.file)
    spec = parse_matroid(text)
    k, d = _params(args, text)
    if not isinstance(spec.matroid, LinearMatroid):
        raise InputError("kernelization needs a linear matroid")
    kern = kernelize_linear(WdbInstance(spec.matroid, spec.weights, k, d))
    body = format_matroid(kern.matroid, kern.weights)
    if args.json:
        rec = {"k": kern.k, "d": kern.d, "trivial": kern.trivial, "kept": kern.kept,
               "ground_size": len(kern.kept) if not kern.trivial else 1, "instance": body}
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        out.write(f"# k={kern.k} d={kern.d}\n")
        if kern.trivial:
            out.write("# trivial yes-instance\n")
        else:
            out.write("# kept " + " ".join(map(str, kern.kept)) + "\n")
        out.write(body)
    return EXIT_OK


def cmd_gen(args, out) -> int:
    if args.kind == "3partition":
        if args.b is None or args.s is None:
            raise InputError("gen 3partition needs --b and --s")
        try:
            S = [int(x) for x in args.s.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"--s must be comma-separated integers, got {args.s!r}") from None
        wdb, _ = reduction_3partition(args.b, S)
        out.write(f"# k={wdb.k} d={wdb.d}\n")
        out.write(format_matroid(wdb.M, wdb.weights))
        return EXIT_OK
    rng = np.random.default_rng(args.seed)
    if args.kind == "random-graph":
        n = args.n if args.n is not None else 6
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < args.p]
        if args.k is not None and args.d is not None:
            out.write(f"# k={args.k} d={args.d}\n")
        out.write(format_graph(Graph(n, edges)))
        return EXIT_OK
    # random-linear
    rows = args.rows if args.rows is not None else 3
    cols = args.cols if args.cols is not None else 6
    p = args.field
    mat = rng.integers(0, p, size=(rows, cols)).tolist()
    weights = rng.integers(1, args.max_weight + 1, size=cols).tolist()
    if args.k is not None and args.d is not None:
        out.write(f"# k={args.k} d={args.d}\n")
    out.write(format_matroid(LinearMatroid(mat, p), weights))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    *instances, witness_path = args.files
    text = _read(instances[0]) if instances else ""
    if not instances:
        raise InputError("verify needs instance file(s) and a witness file")
    k, d = _params(args, text)
    sets = parse_witness(_read(witness_path))
    if args.problem == "dpm":
        check: Verification = verify_matchings(parse_graph(text), d, sets, k)
    elif args.problem == "wdb":
        spec = parse_matroid(text)
        check = verify_bases(spec.matroid, spec.weights, d, sets, k)
    else:
        if len(instances) != 2:
            raise InputError("verify wdcis needs two matroid files and a witness file")
        spec, spec2 = parse_matroid(text), parse_matroid(_read(instances[1]))
        check = verify_common_independent(spec.matroid, spec2.matroid, spec.weights, d, sets, k)
    rec = {"ok": check.ok, "problems": check.problems, "pairwise": _pairwise_rows(check.witness)}
    if args.json:
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        out.write("verified\n" if check.ok else "verification failed\n")
        for p in check.problems:
            out.write(f"  {p}\n")
    return EXIT_OK if check.ok else EXIT_VERIFY


def cmd_check_axioms(args, out) -> int:
    spec = parse_matroid(_read(args.file))
    modes = ["independence", "basis", "closure"] if args.mode == "all" else [args.mode]
    ok = True
    records = []
    for mode in modes:
        rep = check_axioms(spec.matroid, mode, limit=args.limit)
        ok &= rep.ok
        records.append({"mode": mode, "checked": rep.checked, "violations": rep.violations})
    if args.json:
        out.write(json.dumps({"ok": ok, "reports": records}, sort_keys=True) + "\n")
    else:
        for r in records:
            status = "ok" if not r["violations"] else f"{len(r['violations'])} violation(s)"
            out.write(f"{r['mode']}: {status}\n")
            for v in r["violations"]:
                out.write(f"  {v}\n")
    return EXIT_OK if ok else EXIT_VERIFY


# -- parser ------------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, help="number of solutions")
    p.add_argument("--d", type=int, help="diversity threshold")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diversefpt", description="Diverse bases, common independent sets and perfect matchings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance")
    p.add_argument("problem", choices=["wdb", "wdcis", "dpm"])
    p.add_argument("files", nargs="+", help="instance file(s); wdcis takes two matroid files")
    _common(p)
    p.add_argument("--seed", type=int, default=0, help="root seed for randomized solvers (u64)")
    p.add_argument("--trial-budget", type=int, default=None, help="trials per randomized procedure call")
    p.add_argument("--repetitions", type=int, default=30, help="end-to-end repetitions for dpm")
    p.add_argument("--max-candidates", type=int, default=200_000, help="cap on candidate bases for wdb")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernelize", help="kernel for a linear matroid instance")
    p.add_argument("problem", choices=["wdb"])
    p.add_argument("file")
    _common(p)
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("kind", choices=["3partition", "random-graph", "random-linear"])
    p.add_argument("--b", type=int)
    p.add_argument("--s", type=str, help="comma-separated numbers for 3partition")
    p.add_argument("--n", type=int, help="vertices for random-graph")
    p.add_argument("--p", type=float, default=0.5, help="edge probability for random-graph")
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--field", type=int, default=5)
    p.add_argument("--max-weight", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="verify a witness file")
    p.add_argument("problem", choices=["wdb", "wdcis", "dpm"])
    p.add_argument("files", nargs="+", help="instance file(s) followed by the witness file")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-axioms", help="exhaustive axiom check for a small matroid")
    p.add_argument("file")
    p.add_argument("--mode", choices=["independence", "basis", "closure", "all"], default="all")
    p.add_argument("--limit", type=int, default=12)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_axioms)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not 0 <= getattr(args, "seed", 0) < 2 ** 64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DiverseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
