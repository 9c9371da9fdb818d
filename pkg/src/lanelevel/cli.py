"""Command line interface: ``lanelevel {solve,oracle-check,gen,export-dot,bench}``.

Exit codes: 0 success; 1 error (a JSON error record is printed on stderr);
2 for ``solve`` when even the best traversal needs an infeasible turn;
3 for ``oracle-check`` when solver and oracle disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path as FsPath

from . import io
from .baselines import SearchSpaceTooLarge, oracle_best
from .generate import GenSpec, gen_dependency_chain, gen_random, gen_uniform_chain
from .graph import build_llg
from .guidance import emit_instructions
from .model import PathError, ValidationFailed, validate_path
from .solver import SOLVERS

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE, EXIT_MISMATCH = 0, 1, 2, 3


class CliError(Exception):
    pass


def _error_record(exc: BaseException) -> dict:
    record = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ValidationFailed):
        record["issues"] = [i.as_dict() for i in exc.report.issues]
    if isinstance(exc, io.ParseError):
        record["line"], record["column"] = exc.line, exc.column
    return record


def _load_inputs(args):
    net_bytes = FsPath(args.network).read_bytes()
    path_bytes = FsPath(args.path).read_bytes()
    network = io.loads_network(net_bytes)
    path = validate_path(network, io.loads_path(path_bytes))
    digests = {"network": io.digest(net_bytes), "path": io.digest(path_bytes)}
    return network, path, digests


def cmd_solve(args) -> int:
    network, path, digests = _load_inputs(args)
    llg = build_llg(network, path)
    start = time.perf_counter()
    traversal = SOLVERS[args.algorithm](llg)
    elapsed = (time.perf_counter() - start) * 1000.0
    result = io.ResultDocument(
        traversal, tuple(emit_instructions(traversal, network, path)), args.algorithm, round(elapsed, 3), digests
    )
    text = io.dumps_result(result)
    if args.out:
        FsPath(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK if traversal.feasible else EXIT_INFEASIBLE


def cmd_oracle_check(args) -> int:
    network, path, _ = _load_inputs(args)
    traversal = SOLVERS[args.algorithm](build_llg(network, path))
    oracle = oracle_best(network, path, args.max_states)
    match = tuple(traversal.total_cost) == tuple(oracle.best.total_cost)
    print(
        json.dumps(
            {
                "match": match,
                "solver_cost": list(traversal.total_cost),
                "oracle_cost": list(oracle.best.total_cost),
                "evaluated": oracle.evaluated,
            },
            sort_keys=True,
        )
    )
    return EXIT_OK if match else EXIT_MISMATCH


def cmd_gen(args) -> int:
    if args.chain is not None:
        network, path = gen_dependency_chain(args.chain)
    else:
        if args.segments is None:
            raise CliError("gen needs --segments (or --chain)")
        spec = GenSpec(args.segments, args.max_lanes, args.density, args.inconvenient, args.seed)
        network, path = gen_random(spec)
    prefix = args.out_prefix
    io.save_network(network, f"{prefix}network.json")
    io.save_path(path, f"{prefix}path.json")
    print(json.dumps({"network": f"{prefix}network.json", "path": f"{prefix}path.json"}))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    network, path, _ = _load_inputs(args)
    llg = build_llg(network, path)
    traversal = SOLVERS[args.algorithm](llg) if args.solve else None
    sys.stdout.write(io.export_dot(llg, traversal))
    return EXIT_OK


def _parse_lengths(text: str) -> list[int]:
    try:
        lengths = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not lengths or min(lengths) < 1:
        raise argparse.ArgumentTypeError("chain lengths must be positive")
    return lengths


def cmd_bench(args) -> int:
    solve = SOLVERS[args.algorithm]
    print(f"{'length':>10} {'arcs':>10} {'build_ms':>10} {'solve_ms':>10} {'ns/arc':>8}")
    for length in args.chain_lengths:
        network, path = gen_uniform_chain(length, args.lanes)
        vp = validate_path(network, path)
        t0 = time.perf_counter()
        llg = build_llg(network, vp)
        build_ms = (time.perf_counter() - t0) * 1000.0
        times = []
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            solve(llg)
            times.append(time.perf_counter() - t0)
        best = min(times)
        arcs = llg.arc_count
        print(f"{length:>10} {arcs:>10} {build_ms:>10.1f} {best * 1000:>10.1f} {best * 1e9 / arcs:>8.0f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lanelevel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p):
        p.add_argument("--network", required=True)
        p.add_argument("--path", required=True)

    def algorithm(p):
        p.add_argument("--algorithm", choices=sorted(SOLVERS), default="sweep")

    p = sub.add_parser("solve", help="compute the optimal traversal and guidance")
    inputs(p)
    algorithm(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle-check", help="compare solver cost against exhaustive search")
    inputs(p)
    algorithm(p)
    p.add_argument("--max-states", type=int, default=1_000_000)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("gen", help="write a synthetic network/path pair")
    p.add_argument("--segments", type=int)
    p.add_argument("--max-lanes", type=int, default=3)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--inconvenient", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chain", type=int, help="generate the lane dependency chain of this length instead")
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export-dot", help="print the lane-level graph as DOT")
    inputs(p)
    algorithm(p)
    p.add_argument("--solve", action="store_true", help="highlight the optimal traversal")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("bench", help="time a solver on uniform chains")
    p.add_argument("--chain-lengths", type=_parse_lengths, required=True)
    algorithm(p)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--lanes", type=int, default=2)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        CliError,
        OSError,
        io.ParseError,
        ValidationFailed,
        PathError,
        SearchSpaceTooLarge,
        ValueError,
    ) as exc:
        print(json.dumps(_error_record(exc), sort_keys=True), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
