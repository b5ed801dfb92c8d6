"""``tsw`` command-line front end.

Exit codes: 0 success, 1 no solution within ``--max-swaps``, 2 invalid input,
3 search budget exhausted, 4 a produced or supplied sequence failed verification.
Swap sequences and generated instances go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional

from . import approx, bounds, colored, exact, generators
from .core import (
    Instance,
    SolveResult,
    apply_swaps,
    emit_instance,
    emit_swaps,
    parse_instance,
    parse_swaps,
    verify_colored_solution,
    verify_solution,
)
from .errors import BudgetExceeded, TokenSwapError, ValidationError

EXIT_OK = 0
EXIT_NO_SOLUTION = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4

ALGOS = ("exact", "exact-id", "exact-pruned", "happy", "cycles")
PERM_HELP = "random | reversal | rotation | identity | cycle-K"


class VerificationFailed(TokenSwapError):
    pass


class NoSolution(TokenSwapError):
    pass


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _uncolored_solver(algo: str, node_budget: Optional[int], max_swaps: Optional[int]):
    if algo == "exact":
        return lambda g, p: exact.solve_bfs(g, p, node_budget=node_budget)
    if algo in ("exact-id", "exact-pruned"):
        bounded = exact.solve_depth_bounded if algo == "exact-id" else exact.solve_misplaced_pruned
        return lambda g, p: exact.iterative_deepening(g, p, bounded, node_budget=node_budget, max_swaps=max_swaps)
    if algo == "happy":
        return approx.solve_happy
    if algo == "cycles":
        return approx.solve_cycle_decomposition
    raise ValidationError(f"unknown algorithm {algo!r}")


def run_solver(
    inst: Instance, algo: str, node_budget: Optional[int] = None, max_swaps: Optional[int] = None
) -> SolveResult:
    """Solve ``inst`` (colored or not) and re-verify the answer before returning it."""
    solver = _uncolored_solver(algo, node_budget, max_swaps)
    if inst.is_colored:
        cinst = inst.colored()
        res = colored.solve_colored(cinst, solver)
    else:
        res = solver(inst.graph, inst.placement)
    if res is None:
        raise NoSolution(f"no solution with at most {max_swaps} swaps")
    if max_swaps is not None and res.length > max_swaps:
        raise NoSolution(f"optimum {res.length} exceeds --max-swaps {max_swaps}")
    ok = verify_colored_solution(inst.colored(), res.sequence) if inst.is_colored else verify_solution(
        inst.graph, inst.placement, res.sequence
    )
    if not ok:
        raise VerificationFailed(f"{algo} produced a sequence that does not solve the instance")
    return res


# --- commands ----------------------------------------------------------------


def cmd_gen(args) -> int:
    inst = generators.generate(args.family, args.n, args.seed, args.perm)
    comment = f"{args.family} n={args.n} seed={args.seed} perm={args.perm}"
    _write(args.output, emit_instance(inst, comment=comment))
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    res = run_solver(inst, args.algo, args.node_budget, args.max_swaps)
    _write(args.output, emit_swaps(res.sequence))
    if args.trace:
        labels = res.trace if res.trace is not None else []
        if len(labels) != res.length:
            _err(f"note: {args.algo} does not label its swaps; trace file left empty")
            labels = []
        lines = [f"{kind} {u + 1} {v + 1}" for (kind, _), (u, v) in zip(labels, res.sequence)]
        Path(args.trace).write_text("".join(line + "\n" for line in lines))
    if args.assignment_out:
        if not inst.is_colored:
            raise ValidationError("--assignment-out needs a colored instance")
        a = colored.optimal_assignment(inst.colored())
        lines = [f"a {t + 1} {w + 1}" for t, w in enumerate(a.target)] + [f"L* {a.cost}"]
        Path(args.assignment_out).write_text("\n".join(lines) + "\n")
    lb = _bound(inst)
    _err(f"{args.algo}: {res.length} swaps (lower bound {lb})")
    if inst.threshold is not None:
        _err(f"threshold {inst.threshold}: {'met' if res.length <= inst.threshold else 'exceeded'}")
    return EXIT_OK


def _bound(inst: Instance) -> int:
    if inst.is_colored:
        return colored.assignment_floor(inst.colored())
    return bounds.lower_bound(inst.graph, inst.placement)


def cmd_bound(args) -> int:
    inst = parse_instance(_read(args.instance))
    g, p = inst.graph, inst.placement
    if inst.is_colored:
        a = colored.optimal_assignment(inst.colored())
        print(f"L* {a.cost}")
        print(f"lower_bound {(a.cost + 1) // 2}")
        return EXIT_OK
    print(f"L {bounds.total_displacement(g, p)}")
    print(f"lower_bound {bounds.lower_bound(g, p)}")
    if g.is_path():
        print(f"path_optimum {bounds.path_optimal(p, g)}")
    if g.is_complete():
        print(f"complete_optimum {bounds.complete_optimal(p, g)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.instance))
    seq = parse_swaps(_read(args.seq))
    for i, (u, v) in enumerate(seq):
        if not (0 <= u < inst.graph.n and 0 <= v < inst.graph.n):
            raise ValidationError(f"swap {i + 1} names a vertex outside 1..{inst.graph.n}")
    if inst.is_colored:
        ok = verify_colored_solution(inst.colored(), seq)
    else:
        ok = verify_solution(inst.graph, inst.placement, seq)
    within = inst.threshold is None or len(seq) <= inst.threshold
    if ok and within:
        print(f"ok {len(seq)} swaps")
        return EXIT_OK
    if not ok:
        final = apply_swaps(inst.graph, inst.placement, seq)
        wrong = sum(1 for v, t in enumerate(final) if t != v) if not inst.is_colored else None
        detail = f" ({wrong} tokens misplaced)" if wrong is not None else ""
        print(f"fail: sequence does not sort the instance{detail}")
    else:
        print(f"fail: {len(seq)} swaps exceed threshold {inst.threshold}")
    return EXIT_VERIFY


def cmd_reduce(args) -> int:
    from .reductions import cnf, dp, to_tsw
    from .reductions.dp_to_colored import check_structured, colored_solution_from_paths, dp_to_colored
    from .reductions.sat_to_dp import dp_paths_from_assignment, sat_to_dp

    formula = cnf.parse_dimacs(_read(args.formula))
    if args.pad:
        formula = cnf.pad_to_three(formula)
    dag = sat_to_dp(formula)
    checks: list[str] = []
    failures: list[str] = []
    sat = None
    if args.check:
        if formula.num_vars > 22:
            _err("note: too many variables for a truth-table check; skipping satisfiability cross-check")
        else:
            sat = formula.satisfying_assignment()
        bad = dag.violations()
        (failures if bad else checks).append("dp invariants" + (f": {bad}" if bad else " hold"))
        if sat is not None:
            paths = dp_paths_from_assignment(dag, sat)
            (checks if dp.check_paths(dag, paths) else failures).append("paths from the satisfying assignment")
        try:
            found = dp.dp_solve(dag)
        except BudgetExceeded:
            _err("note: disjoint-paths oracle ran out of budget")
        else:
            if formula.num_vars <= 22:
                agree = (found is not None) == (sat is not None)
                (checks if agree else failures).append("disjoint-paths oracle agrees with the truth table")
    if args.to == "dp":
        _write(args.output, dp.emit_dp(dag))
    else:
        sinst = dp_to_colored(dag)
        if args.check:
            bad = check_structured(sinst)
            (failures if bad else checks).append("colored structure" + (f": {bad}" if bad else " holds"))
            if sat is not None:
                cseq = colored_solution_from_paths(sinst, dp_paths_from_assignment(dag, sat))
                ok = verify_colored_solution(sinst.colored, cseq) and len(cseq) == sinst.threshold
                (checks if ok else failures).append("colored sequence meets the threshold")
        if args.to == "cts":
            c = sinst.colored
            inst = Instance(c.graph, c.placement, c.token_colors, c.vertex_colors, sinst.threshold)
            _write(args.output, emit_instance(inst, comment=f"{formula.num_vars} variables, {len(formula.clauses)} clauses"))
        else:
            red = to_tsw.structured_to_uncolored(sinst)
            if args.check:
                (checks if to_tsw.vertex_count_identity(red) else failures).append("vertex count identity")
                if sat is not None:
                    cseq = colored_solution_from_paths(
                        sinst, dp_paths_from_assignment(dag, sat)
                    )
                    useq = to_tsw.uncolored_solution(red, cseq)
                    ok = len(useq) == red.threshold and verify_solution(red.graph, red.placement, useq)
                    (checks if ok else failures).append(f"lifted sequence has exactly {red.threshold} swaps and sorts")
            inst = Instance(red.graph, red.placement, threshold=red.threshold)
            _write(args.output, emit_instance(inst, comment=f"{formula.num_vars} variables, {len(formula.clauses)} clauses"))
    if args.check:
        for line in checks:
            _err(f"check ok: {line}")
        for line in failures:
            _err(f"check FAILED: {line}")
        verdict = "satisfiable" if sat is not None else ("unsatisfiable" if formula.num_vars <= 22 else "unknown")
        _err(f"verdict: {'PASS' if not failures else 'FAIL'} ({verdict})")
        if failures:
            return EXIT_VERIFY
    return EXIT_OK


BENCH_COLUMNS = ("instance", "algo", "swaps", "lower_bound", "optimum", "ratio", "wall_ms")


def _bench_one(path: Path, algos: list[str], node_budget: Optional[int], optimum: bool) -> list[dict]:
    name = path.name
    try:
        inst = parse_instance(path.read_text())
    except TokenSwapError as exc:
        return [dict(instance=name, algo=a, swaps=f"error: {exc}") for a in algos]
    lb = _bound(inst)
    opt = None
    if optimum or "exact" in algos:
        try:
            if inst.is_colored:
                opt = colored.colored_optimum(inst.colored(), node_budget=node_budget or 5_000_000)
            else:
                opt = exact.solve_bfs(inst.graph, inst.placement, node_budget=node_budget).length
        except BudgetExceeded:
            opt = None
    rows = []
    for algo in algos:
        row = dict(instance=name, algo=algo, lower_bound=lb, optimum="" if opt is None else opt)
        t0 = time.perf_counter()
        try:
            res = run_solver(inst, algo, node_budget)
        except TokenSwapError as exc:
            row["swaps"] = f"error: {type(exc).__name__}"
        else:
            row["swaps"] = res.length
            if opt is not None:
                row["ratio"] = f"{res.length / opt:.4f}" if opt else ("1.0000" if res.length == 0 else "inf")
        row["wall_ms"] = f"{(time.perf_counter() - t0) * 1000:.1f}"
        rows.append(row)
    return rows


def bench(paths: list[Path], algos: list[str], node_budget: Optional[int] = None, optimum: bool = False, jobs: int = 1) -> str:
    """CSV report, one row per (instance, algorithm), sorted by instance then algorithm."""
    for a in algos:
        if a not in ALGOS:
            raise ValidationError(f"unknown algorithm {a!r}")
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            chunks = list(pool.map(lambda p: _bench_one(p, algos, node_budget, optimum), paths))
    else:
        chunks = [_bench_one(p, algos, node_budget, optimum) for p in paths]
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=lambda r: (r["instance"], r["algo"]))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_bench(args) -> int:
    root = Path(args.dir)
    if not root.is_dir():
        raise ValidationError(f"{args.dir} is not a directory")
    paths = sorted(root.glob(args.pattern))
    if not paths:
        raise ValidationError(f"no files matching {args.pattern!r} in {args.dir}")
    algos = [a for part in args.algos for a in part.split(",") if a]
    _write(args.output, bench(paths, algos, args.node_budget, args.optimum, args.jobs))
    return EXIT_OK


# --- argument parsing ------------------------------------------------------------


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tsw", description="Token swapping on graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded instance")
    g.add_argument("family", choices=generators.FAMILIES)
    g.add_argument("n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--perm", default="random", help=PERM_HELP)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("instance", help="instance file, or - for stdin")
    s.add_argument("--algo", choices=ALGOS, default="happy")
    s.add_argument("--max-swaps", type=_nonneg)
    s.add_argument("--node-budget", type=_nonneg, help="overrides TSW_NODE_BUDGET")
    s.add_argument("--trace", help="write h/u labels of the happy-swap solver here")
    s.add_argument("--assignment-out", help="write the optimal token->vertex assignment here")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bound", help="print displacement and lower bounds")
    b.add_argument("instance")
    b.set_defaults(func=cmd_bound)

    r = sub.add_parser("reduce", help="build a hardness-reduction instance from a CNF formula")
    r.add_argument("--from", dest="source", choices=("sat",), default="sat")
    r.add_argument("--to", choices=("dp", "cts", "tsw"), required=True)
    r.add_argument("formula", help="DIMACS CNF file")
    r.add_argument("--check", action="store_true", help="run the stage oracles and print a verdict")
    r.add_argument("--pad", action="store_true", help="rewrite short clauses into 3-literal ones first")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="check a swap sequence against an instance")
    v.add_argument("--instance", required=True)
    v.add_argument("--seq", required=True)
    v.set_defaults(func=cmd_verify)

    bn = sub.add_parser("bench", help="run algorithms over a directory of instances, CSV out")
    bn.add_argument("--dir", required=True)
    bn.add_argument("--algos", nargs="+", default=["happy"])
    bn.add_argument("--pattern", default="*.tsw")
    bn.add_argument("--optimum", action="store_true", help="compute the exact optimum even without the exact algo")
    bn.add_argument("--node-budget", type=_nonneg)
    bn.add_argument("--jobs", type=int, default=1)
    bn.add_argument("-o", "--output")
    bn.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except VerificationFailed as exc:
        _err(f"error: {exc}")
        return EXIT_VERIFY
    except NoSolution as exc:
        _err(f"error: {exc}")
        return EXIT_NO_SOLUTION
    except BudgetExceeded as exc:
        _err(f"error: search budget exceeded ({exc})")
        return EXIT_BUDGET
    except ValidationError as exc:
        _err(f"error: {exc}")
        return EXIT_INVALID
    except TokenSwapError as exc:
        _err(f"error: {exc}")
        return EXIT_VERIFY
    except ValueError as exc:
        _err(f"error: {exc}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
