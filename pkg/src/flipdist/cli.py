"""Command line front end: validate, gen, distance, dag, bench."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .flip_dag import (
    InvalidFlipSequence,
    apply_sequence,
    arc_lines,
    build_dag,
    classify_essential,
)
from .fpt_solver import SolverStats, decide_flip_distance_eq
from .instances import (
    GenerationError,
    Instance,
    InstanceFormatError,
    generate_instance,
    parse_instance,
    render_instance,
)
from .oracle import DEFAULT_CAP, OracleStats, SearchBudgetExceeded, bfs_distance
from .triangulation import InvalidTriangulation, make_edge

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _read_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def _emit(record: dict) -> None:
    sys.stdout.write(json.dumps(record) + "\n")


def cmd_validate(args: argparse.Namespace) -> int:
    inst = _read_instance(args.file)
    initial, _ = inst.triangulations()
    print(
        f"ok: n={len(initial.ps)} h={initial.ps.hull_size} "
        f"triangles={len(initial.triangles)} k={inst.k if inst.k is not None else '-'}"
    )
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    inst = generate_instance(args.n, args.hull, args.scramble, args.seed)
    sys.stdout.write(render_instance(inst))
    return EXIT_OK


def cmd_distance(args: argparse.Namespace) -> int:
    inst = _read_instance(args.file)
    initial, final = inst.triangulations()
    prune = args.pruning == "on"
    k = args.k if args.k is not None else inst.k
    record = {
        "n": len(initial.ps),
        "h": initial.ps.hull_size,
        "k": k,
        "engine": args.engine,
        "result": None,
        "states_explored": 0,
        "millis": 0,
    }
    started = time.perf_counter()

    distance = None
    ostats = OracleStats()
    if args.engine in ("oracle", "both"):
        distance = bfs_distance(initial, final, cap=args.cap, stats=ostats)
        record["states_explored"] += ostats.nodes_visited
        if distance is None:
            record["millis"] = round((time.perf_counter() - started) * 1000)
            _emit(record)
            print(f"oracle: distance exceeds cap {args.cap}", file=sys.stderr)
            return EXIT_BUDGET

    decision = None
    if args.engine in ("fpt", "both"):
        if k is None:
            if args.engine == "fpt":
                print("distance: engine fpt needs k (instance 'k' line or --k)", file=sys.stderr)
                return EXIT_INPUT
            k = distance
            record["k"] = k
        fstats = SolverStats()
        decision = decide_flip_distance_eq(initial, final, k, prune, fstats)
        record["states_explored"] += fstats.states_expanded

    if args.engine == "oracle":
        record["result"] = distance
    elif args.engine == "fpt":
        record["result"] = decision
    else:
        agree = decision == (k == distance)
        record["result"] = {"oracle": distance, "fpt": decision, "agree": agree}
    record["millis"] = round((time.perf_counter() - started) * 1000)
    _emit(record)

    if args.engine == "oracle":
        return EXIT_OK
    if args.engine == "fpt":
        return EXIT_OK if decision else EXIT_REJECT
    if not record["result"]["agree"]:
        print("distance: engines disagree (this is a bug)", file=sys.stderr)
        return EXIT_REJECT
    return EXIT_OK if decision else EXIT_REJECT


def _parse_flips(spec: str) -> list[tuple[int, int]]:
    if not spec.strip():
        return []
    out = []
    for part in spec.split(","):
        bits = part.strip().split("-")
        if len(bits) != 2:
            raise ValueError(f"bad flip {part!r}, expected 'u-v'")
        out.append(make_edge(int(bits[0]), int(bits[1])))
    return out


def cmd_dag(args: argparse.Namespace) -> int:
    inst = _read_instance(args.file)
    initial, _ = inst.triangulations()
    try:
        flips = _parse_flips(args.flips)
    except ValueError as exc:
        print(f"dag: {exc}", file=sys.stderr)
        return EXIT_INPUT
    seq = apply_sequence(initial, flips)
    dag = build_dag(seq)
    print(f"nodes {dag.node_count}")
    for rec in seq.records:
        print(
            f"{rec.position} removed={rec.removed[0]}-{rec.removed[1]} "
            f"created={rec.created[0]}-{rec.created[1]}"
        )
    print(f"arcs {len(dag.arcs)}")
    for line in arc_lines(dag):
        print(line)
    labelled = classify_essential(dag, seq)
    print(f"components {len(labelled)}")
    for idx, (comp, essential) in enumerate(labelled, start=1):
        kind = "essential" if essential else "nonessential"
        print(f"{idx}: {' '.join(map(str, comp))} {kind}")
    return EXIT_OK


def _bench_row(params: tuple[int, int, int, int, bool]) -> dict:
    n, scramble, seed, cap, prune = params
    inst = generate_instance(n, "random", scramble, seed)
    initial, final = inst.triangulations()
    row = {"n": n, "h": initial.ps.hull_size, "seed": seed, "scramble": scramble}

    started = time.perf_counter()
    ostats = OracleStats()
    distance = bfs_distance(initial, final, cap=cap, stats=ostats)
    row["millis_oracle"] = round((time.perf_counter() - started) * 1000)
    row["states_oracle"] = ostats.nodes_visited
    row["distance"] = distance
    if distance is None:
        row.update(decision=None, agree=None, skipped=True, millis_fpt=0, states_fpt=0)
        return row

    started = time.perf_counter()
    fstats = SolverStats()
    decision = decide_flip_distance_eq(initial, final, distance, prune, fstats)
    row["millis_fpt"] = round((time.perf_counter() - started) * 1000)
    row["states_fpt"] = fstats.states_expanded
    row["decision"] = decision
    row["agree"] = decision is True
    row["skipped"] = False
    return row


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        sizes = [int(s) for s in args.n.split(",") if s.strip()]
    except ValueError:
        print(f"bench: bad --n list {args.n!r}", file=sys.stderr)
        return EXIT_INPUT
    if not sizes:
        print("bench: empty --n list", file=sys.stderr)
        return EXIT_INPUT
    prune = args.pruning == "on"
    params = []
    for i, n in enumerate(sizes):
        for trial in range(args.trials):
            params.append((n, args.scramble, args.seed + 1000 * i + trial, args.cap, prune))

    started = time.perf_counter()
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_row, params))
    else:
        rows = [_bench_row(p) for p in params]
    for row in rows:
        _emit(row)

    agreed = sum(1 for r in rows if r["agree"] is True)
    skipped = sum(1 for r in rows if r["skipped"])
    disagreed = len(rows) - agreed - skipped
    print(
        f"bench: rows={len(rows)} agreed={agreed} disagreed={disagreed} "
        f"skipped={skipped} seconds={time.perf_counter() - started:.2f}",
        file=sys.stderr,
    )
    return EXIT_OK if disagreed == 0 else EXIT_REJECT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flipdist",
        description="Flip distance between triangulations of a planar point set.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate an instance file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen", help="generate a random instance on stdout")
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--hull", choices=("random", "convex"), default="random")
    p.add_argument("--scramble", type=int, default=0, help="random flips applied to the final copy")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("distance", help="compute/decide flip distance, JSON record on stdout")
    p.add_argument("file")
    p.add_argument("--engine", choices=("oracle", "fpt", "both"), default="both")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="oracle BFS depth cap")
    p.add_argument("--k", type=int, default=None, help="override the instance k")
    p.add_argument("--pruning", choices=("on", "off"), default="on")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("dag", help="dependency DAG of a flip sequence on the initial triangulation")
    p.add_argument("file")
    p.add_argument("--flips", default="", help="comma list of edges, e.g. 0-2,1-3")
    p.set_defaults(func=cmd_dag)

    p = sub.add_parser("bench", help="random instances: oracle vs decision procedure")
    p.add_argument("--n", default="5,6,7", help="comma list of point counts")
    p.add_argument("--scramble", type=int, default=3)
    p.add_argument("--trials", type=int, default=5, help="instances per point count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--pruning", choices=("on", "off"), default="on")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFormatError, InvalidTriangulation, InvalidFlipSequence, GenerationError) as exc:
        print(f"flipdist: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"flipdist: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SearchBudgetExceeded as exc:
        print(f"flipdist: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
