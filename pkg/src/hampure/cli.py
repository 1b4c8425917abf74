"""Command line front end: one verb per construction or diagnostic.

Every command prints a JSON report echoing its parameters, seed, and the
tolerance in effect, so runs are reproducible from the report alone.  Exit
codes: 0 on success (verification passed / computation done), 1 when a
verification fails or a search is declared infeasible, 2 on usage or I/O
errors.  ``frontier`` emits CSV instead, with the echo in a leading comment
line.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import algebra, constructions, lie, zeno
from .search import SearchProblem, frontier_scan
from .search import search as run_search
from .linalg import (
    HermitianOperator,
    ProjectionConvention,
    hermitian_from_coords,
    random_hermitian,
    random_unitary_haar,
)
from .serialization import (
    dump_json,
    load_json,
    matrix_from_obj,
    matrix_to_obj,
    operators_from_obj,
    purification_from_obj,
    purification_to_obj,
)


def _report(command: str, params: dict, result: dict, *, seed=None, tol=None,
            passed=None, elapsed: float = 0.0) -> dict:
    return {
        "command": command,
        "parameters": params,
        "seed": seed,
        "tol": tol,
        "pass": passed,
        "elapsed_seconds": elapsed,
        "result": result,
    }


def _emit(report: dict) -> None:
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _load_operators(path: str) -> list[np.ndarray]:
    return operators_from_obj(load_json(path))


def _finish_construction(command, params, p, args, *, seed=None, started=0.0) -> int:
    rep = constructions.verify(p, args.tol)
    bundle = purification_to_obj(p, rep.tol)
    if args.output:
        dump_json(bundle, args.output)
        result = {"verification": rep.to_dict(), "output": args.output}
    else:
        result = {"verification": rep.to_dict(), "purification": bundle}
    _emit(_report(command, params, result, seed=seed, tol=rep.tol,
                  passed=rep.passed, elapsed=time.perf_counter() - started))
    return 0 if rep.passed else 1


def cmd_purify_pair(args) -> int:
    started = time.perf_counter()
    if args.input:
        ops = _load_operators(args.input)
        if len(ops) != 2:
            raise ValueError("purify-pair needs exactly two operators")
        h1, h2 = (HermitianOperator(o) for o in ops)
    else:
        if args.random_dim is None:
            raise ValueError("provide --input or --random-dim")
        rng = np.random.default_rng(args.seed)
        h1 = random_hermitian(args.random_dim, rng)
        h2 = random_hermitian(args.random_dim, rng)
    builders = {
        "tensor2d": constructions.purify_pair_tensor,
        "qubit3": constructions.purify_pair_qubit,
        "schur2dm1": constructions.purify_pair_schur,
    }
    p = builders[args.method](h1, h2)
    params = {"method": args.method, "input": args.input, "random_dim": args.random_dim}
    return _finish_construction("purify-pair", params, p, args, seed=args.seed, started=started)


def cmd_purify_m(args) -> int:
    started = time.perf_counter()
    ops = [HermitianOperator(o) for o in _load_operators(args.input)]
    p = constructions.purify_m_md(ops)
    params = {"input": args.input, "m": len(ops)}
    return _finish_construction("purify-m", params, p, args, started=started)


def cmd_purify_algebra(args) -> int:
    started = time.perf_counter()
    purifier = algebra.build_algebra_purifier(args.d)
    if args.input:
        ops = [HermitianOperator(o) for o in _load_operators(args.input)]
    else:
        # default: the full orthonormal Hermitian basis of the d-level algebra
        n = args.d * args.d
        ops = [
            HermitianOperator(hermitian_from_coords(np.eye(n)[k], args.d))
            for k in range(n)
        ]
    p = algebra.purify_full_basis(purifier, ops)
    params = {"d": args.d, "input": args.input, "m": len(ops)}
    return _finish_construction("purify-algebra", params, p, args, started=started)


def cmd_purify_generators(args) -> int:
    started = time.perf_counter()
    p = lie.generator_purification(args.d)
    return _finish_construction("purify-generators", {"d": args.d}, p, args, started=started)


def cmd_genericity(args) -> int:
    started = time.perf_counter()
    rng = np.random.default_rng(args.seed)
    failures = 0
    min_rank = args.d * args.d
    for _ in range(args.samples):
        u = random_unitary_haar(args.d * args.d, rng)
        rep = algebra.surjectivity_test(u, args.d)
        if not rep.surjective:
            failures += 1
        min_rank = min(min_rank, rep.rank)
    result = {"samples": args.samples, "failures": failures, "min_rank": min_rank}
    passed = failures == 0
    _emit(_report("genericity", {"d": args.d, "samples": args.samples}, result,
                  seed=args.seed, tol=algebra.SURJECTIVITY_CUTOFF, passed=passed,
                  elapsed=time.perf_counter() - started))
    return 0 if passed else 1


def cmd_lie_closure(args) -> int:
    started = time.perf_counter()
    ops = [HermitianOperator(o) for o in _load_operators(args.input)]
    rep = lie.lie_closure(ops, max_dim=args.max_dim)
    result = {
        "dimension": rep.dimension,
        "saturated": rep.saturated,
        "generations": rep.generations,
    }
    _emit(_report("lie-closure", {"input": args.input, "max_dim": args.max_dim},
                  result, tol=1e-8, elapsed=time.perf_counter() - started))
    return 0


def cmd_zeno(args) -> int:
    started = time.perf_counter()
    h = HermitianOperator(matrix_from_obj(load_json(args.input)))
    steps = [int(s) for s in args.steps.split(",") if s]
    conv = ProjectionConvention(args.d, h.dim, args.placement)
    run = zeno.zeno_run(h, conv, args.t, steps)
    result = {
        "table": [{"N": n, "error": e} for n, e in zip(run.N_values, run.errors)],
        "slope": run.slope(),
    }
    _emit(_report("zeno", {"input": args.input, "d": args.d, "t": args.t,
                           "steps": steps, "placement": args.placement},
                  result, elapsed=time.perf_counter() - started))
    return 0


def cmd_search(args) -> int:
    started = time.perf_counter()
    if args.targets:
        targets = [HermitianOperator(o) for o in _load_operators(args.targets)]
        if args.m is not None and args.m != len(targets):
            raise ValueError(f"--m {args.m} does not match {len(targets)} targets")
        if args.d is not None and args.d != targets[0].dim:
            raise ValueError(f"--d {args.d} does not match target dimension {targets[0].dim}")
    else:
        if args.d is None or args.m is None:
            raise ValueError("random targets need --d and --m")
        rng = np.random.default_rng(args.seed)
        targets = [random_hermitian(args.d, rng) for _ in range(args.m)]
    problem = SearchProblem(
        targets=tuple(targets),
        d_E=args.de,
        restarts=args.restarts,
        max_iters=args.max_iters,
        tol_feasible=args.tol_feasible,
        seed=args.seed,
    )
    res = run_search(problem)
    result = res.to_dict()
    result["best_unitary"] = matrix_to_obj(res.best_unitary)
    result["best_diagonals"] = [list(map(float, d.values)) for d in res.best_diagonals]
    if args.output:
        dump_json(result, args.output)
        result = {k: result[k] for k in ("best_residual", "feasible", "restarts_used",
                                         "iterations_used")} | {"output": args.output}
    _emit(_report("search", {"d": problem.d, "m": problem.m, "de": args.de,
                             "restarts": args.restarts, "targets": args.targets},
                  result, seed=args.seed, tol=args.tol_feasible,
                  passed=res.feasible, elapsed=time.perf_counter() - started))
    return 0 if res.feasible else 1


def cmd_frontier(args) -> int:
    rows = frontier_scan(
        d=args.d,
        m=args.m,
        d_E_values=range(args.de_min, args.de_max + 1),
        trials=args.trials,
        seed=args.seed,
        restarts=args.restarts,
        tol_feasible=args.tol_feasible,
    )
    lines = [
        f"# command=frontier d={args.d} m={args.m} trials={args.trials} "
        f"restarts={args.restarts} seed={args.seed} tol={args.tol_feasible}",
        "d_E,feasible_fraction,median_residual",
    ]
    lines += [f"{r.d_E},{r.feasible_fraction},{r.median_residual}" for r in rows]
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    started = time.perf_counter()
    p, recorded_tol = purification_from_obj(load_json(args.input))
    tol = args.tol if args.tol is not None else recorded_tol
    rep = constructions.verify(p, tol)
    _emit(_report("verify", {"input": args.input, "method": p.method,
                             "d": p.d, "d_E": p.d_E},
                  rep.to_dict(), tol=rep.tol, passed=rep.passed,
                  elapsed=time.perf_counter() - started))
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hampure",
        description="Construct, verify, and search for commuting extensions "
        "of Hermitian operator sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, output=True, tol=True):
        if output:
            p.add_argument("--output", help="write the primary artifact to this file")
        if tol:
            p.add_argument("--tol", type=float, default=None,
                           help="verification tolerance override")

    p = sub.add_parser("purify-pair", help="extend a pair of operators")
    p.add_argument("--method", required=True, choices=("tensor2d", "qubit3", "schur2dm1"))
    p.add_argument("--input", help='JSON file with {"operators": [m1, m2]}')
    p.add_argument("--random-dim", type=int, default=None, help="sample random targets of this dimension")
    p.add_argument("--seed", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_purify_pair)

    p = sub.add_parser("purify-m", help="extend m operators into dimension m*d")
    p.add_argument("--input", required=True, help='JSON file with {"operators": [...]}')
    add_common(p)
    p.set_defaults(func=cmd_purify_m)

    p = sub.add_parser("purify-algebra", help="extend a full operator basis into dimension d^2")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--input", help="operator list; defaults to the standard Hermitian basis")
    add_common(p)
    p.set_defaults(func=cmd_purify_algebra)

    p = sub.add_parser("purify-generators", help="extend the generating pair into dimension d+1")
    p.add_argument("--d", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_purify_generators)

    p = sub.add_parser("genericity", help="rank-test random unitaries on the d^2 space")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_genericity)

    p = sub.add_parser("lie-closure", help="dimension of the generated Lie algebra")
    p.add_argument("--input", required=True, help='JSON file with {"operators": [...]}')
    p.add_argument("--max-dim", type=int, default=None)
    p.set_defaults(func=cmd_lie_closure)

    p = sub.add_parser("zeno", help="project-evolve convergence sweep")
    p.add_argument("--input", required=True, help="JSON matrix file for the extended operator")
    p.add_argument("--d", type=int, required=True, help="projected dimension")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--steps", default="10,100,1000,10000", help="comma-separated N values")
    p.add_argument("--placement", default="top-left", choices=("top-left", "bottom-right"))
    p.set_defaults(func=cmd_zeno)

    p = sub.add_parser("search", help="feasibility search at a candidate dimension")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--de", type=int, required=True)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--tol-feasible", type=float, default=1e-7)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--targets", help="JSON operator list; random targets if omitted")
    p.add_argument("--output", help="write the full result (including the unitary) here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("frontier", help="feasibility fractions over a dimension range (CSV)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--de-min", type=int, required=True)
    p.add_argument("--de-max", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--tol-feasible", type=float, default=1e-7)
    p.add_argument("--output", help="write the CSV table to this file")
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("verify", help="check a stored purification bundle")
    p.add_argument("--input", required=True)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
