"""Command line front end.

Exit codes: 0 when the requested work succeeded and every checked
property held, 1 when a checked property failed (an unstable matching,
a fractional vertex, a vertex/stable mismatch), 2 for unusable input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator

from .adjacency import adjacency_verdict
from .instances import (
    SIDE_A,
    SIDE_B,
    Instance,
    InstanceError,
    exhaustive_complete,
    instance_to_json,
    load_instance,
    parse_weights,
    random_instances,
)
from .lattice import enumerate_stable
from .matchings import Matching, blocking_pairs, gale_shapley, is_stable
from .polytope import build_system
from .verification import verify_instance

WORKERS_ENV = "STABLEPOLY_WORKERS"


def _emit(data: object, fmt: str, table: str) -> None:
    if fmt == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(table)


def _load_matching(instance: Instance, path: str) -> Matching:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise InstanceError("matching document must be a JSON list of pairs")
    return Matching.from_pairs(instance, data)


def _matching_lines(instance: Instance, matching: Matching) -> str:
    if not matching.edges:
        return "(empty matching)"
    return "\n".join(instance.edge_name(e) for e in matching.sorted_edges())


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    side = SIDE_A if args.side == "a" else SIDE_B
    matching = gale_shapley(instance, proposing_side=side)
    stable = is_stable(instance, matching, cross_check=True)
    _emit(
        {"matching": matching.to_pairs(instance), "stable": stable},
        args.format,
        _matching_lines(instance, matching),
    )
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    stable = enumerate_stable(instance, max_edges=args.max_edges)
    table = "\n".join(
        f"[{k}] " + (", ".join(instance.edge_name(e) for e in m.sorted_edges()) or "(empty)")
        for k, m in enumerate(stable)
    )
    _emit(
        {"count": len(stable), "matchings": [m.to_pairs(instance) for m in stable]},
        args.format,
        table or "(no stable matchings)",
    )
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    matching = _load_matching(instance, args.matching)
    stable = is_stable(instance, matching, cross_check=True)
    blocking = blocking_pairs(instance, matching)
    table = (
        "stable"
        if stable
        else "unstable, blocked by: " + ", ".join(instance.edge_name(e) for e in blocking)
    )
    _emit(
        {
            "stable": stable,
            "blocking": [instance.edge_name(e) for e in blocking],
        },
        args.format,
        table,
    )
    return 0 if stable else 1


def _cmd_lp(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    system = build_system(instance)
    weights = None
    if args.weights:
        with open(args.weights, encoding="utf-8") as fh:
            weights = parse_weights(json.load(fh), instance)
    if args.solve:
        objective = weights if weights is not None else {e: Fraction(1) for e in system.columns}
        result = system.optimize(objective, sense=args.sense)
        point = None
        if result.point is not None:
            point = {
                name: str(x) for name, x in zip(system.column_names, result.point)
            }
        _emit(
            {
                "status": result.status,
                "value": None if result.value is None else str(result.value),
                "point": point,
            },
            args.format,
            f"{result.status}: {result.value}",
        )
        return 0
    if args.format == "json":
        print(json.dumps(system.to_json(), sort_keys=True, indent=2))
    else:
        sys.stdout.write(system.to_lp_text(objective=weights, sense=args.sense))
    return 0


def _cmd_vertices(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    system = build_system(instance)
    report = system.enumerate_vertices(max_edges=args.max_edges, method=args.method)
    lines = []
    for v in report.vertices:
        coords = ", ".join(
            f"{name}={x}" for name, x in zip(report.column_names, v.point) if x != 0
        )
        tag = "integral" if v.integral else "FRACTIONAL"
        lines.append(f"[{tag}] {coords or '(origin)'}")
    _emit(report.to_json(), args.format, "\n".join(lines) or "(no vertices)")
    return 1 if report.fractional_vertices() else 0


def _cmd_adjacency(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    if (args.m1 is None) != (args.m2 is None):
        raise InstanceError("--m1 and --m2 must be given together")
    records = []
    if args.m1:
        pairs = [(_load_matching(instance, args.m1), _load_matching(instance, args.m2))]
    else:
        stable = enumerate_stable(instance, max_edges=args.max_edges)
        pairs = list(itertools.combinations(stable, 2))
    for m1, m2 in pairs:
        verdict = adjacency_verdict(instance, m1, m2, max_edges=args.max_edges)
        records.append(
            {
                "m1": m1.to_pairs(instance),
                "m2": m2.to_pairs(instance),
                "verdict": verdict.to_json(instance),
            }
        )
    table = "\n".join(
        "{} | {} -> {}{}{}".format(
            ", ".join(instance.edge_name(e) for e in pairs[i][0].sorted_edges()) or "(empty)",
            ", ".join(instance.edge_name(e) for e in pairs[i][1].sorted_edges()) or "(empty)",
            "adjacent" if r["verdict"]["adjacent"] else "not adjacent",
            "" if r["verdict"]["uniformly_oriented"] else ", mixed orientation",
            "" if r["verdict"]["witness"] is None else ", witness " + r["verdict"]["witness"]["edge"],
        )
        for i, r in enumerate(records)
    )
    _emit(records, args.format, table or "(fewer than two stable matchings)")
    return 0


def _verify_task(payload: tuple[Instance, int, str]) -> dict | None:
    instance, max_edges, method = payload
    result = verify_instance(instance, max_edges=max_edges, method=method)
    return None if result.ok else result.to_json()


def _instances_for_verify(args: argparse.Namespace) -> Iterator[Instance]:
    if args.instances:
        for path in args.instances:
            yield load_instance(path)
        return
    if args.complete is not None:
        yield from exhaustive_complete(args.complete)
        return
    if args.random is not None:
        stream = random_instances(
            args.a, args.b, args.p, args.seed, skip_edgeless=args.skip_edgeless
        )
        yield from itertools.islice(stream, args.random)
        return
    raise InstanceError("give instance files, --complete N, or --random K")


def _cmd_verify(args: argparse.Namespace) -> int:
    workers = args.workers
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    if workers < 1:
        raise InstanceError("worker count must be at least 1")
    payloads = (
        (inst, args.max_edges, args.method) for inst in _instances_for_verify(args)
    )
    failures: list[dict] = []
    checked = 0
    if workers == 1:
        outcomes: Iterable[dict | None] = map(_verify_task, payloads)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        outcomes = pool.map(_verify_task, payloads, chunksize=16)
    for outcome in outcomes:
        checked += 1
        if outcome is not None:
            failures.append(outcome)
    if workers > 1:
        pool.shutdown()
    if args.quarantine:
        Path(args.quarantine).write_text(
            json.dumps(failures, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
    summary = {
        "checked": checked,
        "ok": checked - len(failures),
        "failures": failures,
    }
    table = (
        f"checked {checked} instances: vertex sets and stable sets agree everywhere"
        if not failures
        else f"checked {checked} instances: {len(failures)} DISAGREE"
    )
    _emit(summary, args.format, table)
    return 1 if failures else 0


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.complete is not None:
        stream: Iterator[Instance] = exhaustive_complete(args.complete)
    else:
        if args.random is None:
            raise InstanceError("give --complete N or --random K")
        stream = itertools.islice(
            random_instances(args.a, args.b, args.p, args.seed, skip_edgeless=args.skip_edgeless),
            args.random,
        )
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        count = 0
        for k, inst in enumerate(stream):
            path = out / f"instance_{k:05d}.json"
            path.write_text(
                json.dumps(instance_to_json(inst), sort_keys=True, indent=2) + "\n",
                encoding="utf-8",
            )
            count += 1
        print(f"wrote {count} instances to {out}")
    else:
        for inst in stream:
            print(json.dumps(instance_to_json(inst), sort_keys=True))
    return 0


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("table", "json"), default="table", help="output style"
    )


def _add_random_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a", type=int, default=4, help="a-side size for --random")
    parser.add_argument("--b", type=int, default=4, help="b-side size for --random")
    parser.add_argument("--p", type=float, default=0.5, help="edge probability for --random")
    parser.add_argument("--seed", type=int, default=0, help="seed for --random")
    parser.add_argument(
        "--skip-edgeless",
        action="store_true",
        help="redraw random instances that came out with no edges",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stablepoly",
        description="Stable matchings and the exact geometry of their relaxation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run deferred acceptance on an instance")
    p.add_argument("instance")
    p.add_argument("--side", choices=("a", "b"), default="a", help="proposing side")
    _add_format(p)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("enumerate", help="list every stable matching")
    p.add_argument("instance")
    p.add_argument("--max-edges", type=int, default=16)
    _add_format(p)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("check", help="test a matching file for stability")
    p.add_argument("instance")
    p.add_argument("matching")
    _add_format(p)
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("lp", help="export or optimize the halfspace description")
    p.add_argument("instance")
    p.add_argument("--weights", help="JSON file of edge weights, exact fractions")
    p.add_argument("--sense", choices=("max", "min"), default="max")
    p.add_argument("--solve", action="store_true", help="optimize instead of exporting")
    _add_format(p)
    p.set_defaults(handler=_cmd_lp)

    p = sub.add_parser("vertices", help="enumerate the extreme points exactly")
    p.add_argument("instance")
    p.add_argument("--max-edges", type=int, default=10)
    p.add_argument("--method", choices=("incidence", "basis"), default="incidence")
    _add_format(p)
    p.set_defaults(handler=_cmd_vertices)

    p = sub.add_parser(
        "adjacency", help="adjacency verdicts for stable matching pairs"
    )
    p.add_argument("instance")
    p.add_argument("--m1", help="first matching file (needs --m2)")
    p.add_argument("--m2", help="second matching file (needs --m1)")
    p.add_argument("--max-edges", type=int, default=16)
    _add_format(p)
    p.set_defaults(handler=_cmd_adjacency)

    p = sub.add_parser(
        "verify",
        help="compare polytope vertices against stable matchings per instance",
    )
    p.add_argument("instances", nargs="*", help="instance files")
    p.add_argument("--complete", type=int, help="verify every complete n-by-n instance")
    p.add_argument("--random", type=int, help="verify this many random instances")
    _add_random_options(p)
    p.add_argument("--max-edges", type=int, default=10)
    p.add_argument("--method", choices=("incidence", "basis"), default="incidence")
    p.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"parallel workers (default: ${WORKERS_ENV} or 1)",
    )
    p.add_argument(
        "--quarantine",
        help="write failing instances to this JSON file (empty list when clean)",
    )
    _add_format(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("generate", help="emit instances as JSON")
    p.add_argument("--complete", type=int, help="every complete n-by-n instance")
    p.add_argument("--random", type=int, help="this many random instances")
    _add_random_options(p)
    p.add_argument("--out", help="directory for one file per instance (default: stdout lines)")
    p.set_defaults(handler=_cmd_generate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (InstanceError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"property violated: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
