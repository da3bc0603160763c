"""Command-line interface.

Exit codes: 0 success (and, where applicable, a valid witness or a holding
inequality), 1 contract violations, 2 malformed input.  Diagnostics go to
stderr; results are JSON (or CSV for ``sweep``) on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .approximation import build_outer
from .errors import ConvexCoverError, WitnessInvalid
from .geometry import body_from_json, body_to_json
from .harness import Scenario, generate_partition, sweep, verify_covering
from .inradius import inradius_body
from .witness import CoveringInstance, bang_plank_witness, witness


class _MalformedInput(Exception):
    pass


def _read_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _MalformedInput(f"cannot read JSON from {path}: {exc}") from exc


def _parse(fn, *args):
    try:
        return fn(*args)
    except (KeyError, TypeError, ValueError) as exc:
        raise _MalformedInput(f"malformed input: {exc}") from exc


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _cmd_inradius(args) -> int:
    body = _parse(body_from_json, _read_json(args.body))
    _emit(inradius_body(body).to_json())
    return 0


def _cmd_approximate(args) -> int:
    body = _parse(body_from_json, _read_json(args.body))
    _emit(build_outer(body, args.eps).to_json())
    return 0


def _cmd_witness(args) -> int:
    inst = _parse(CoveringInstance.from_json, _read_json(args.instance), False)
    inst.validate()
    try:
        report = witness(inst, mode=args.mode)
    except WitnessInvalid as exc:
        if exc.report is not None:
            _emit(exc.report.to_json())
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(report.to_json())
    return 0 if report.valid else 1


def _cmd_planks(args) -> int:
    obj = _read_json(args.planks)
    if isinstance(obj, dict):
        obj = obj.get("planks")
    if not isinstance(obj, list):
        raise _MalformedInput("planks file must hold a list (or {'planks': [...]})")
    planks = [_parse(body_from_json, rec) for rec in obj]
    try:
        report = bang_plank_witness(planks)
    except WitnessInvalid as exc:
        if exc.report is not None:
            _emit(exc.report.to_json())
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(report.to_json())
    return 0 if report.valid else 1


def _cmd_verify(args) -> int:
    scenario = _parse(Scenario.from_json, _read_json(args.scenario))
    result = verify_covering(scenario, args.samples)
    _emit(result.to_json())
    return 0 if result.inequality_holds else 1


def _cmd_generate(args) -> int:
    body = _parse(body_from_json, _read_json(args.target))
    scenario = generate_partition(body, args.cuts, args.seed)
    _emit(scenario.to_json())
    return 0


def _cmd_sweep(args) -> int:
    csv_text, results = sweep(args.trials, args.seed, dim=args.dim, cuts=args.cuts)
    sys.stdout.write(csv_text)
    return 0 if all(r.inequality_holds for r in results) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexcover",
        description="Inscribed balls, outer approximations, and covering witnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inradius", help="largest inscribed ball of a body")
    p.add_argument("body")
    p.set_defaults(fn=_cmd_inradius)

    p = sub.add_parser("approximate", help="outer polytope with hull certificate")
    p.add_argument("body")
    p.add_argument("--eps", type=float, required=True)
    p.set_defaults(fn=_cmd_approximate)

    p = sub.add_parser("witness", help="uncovered point for a covering instance")
    p.add_argument("instance")
    p.add_argument("--mode", choices=("ascent", "exhaustive"), default="ascent")
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("planks", help="uncovered point for a plank family")
    p.add_argument("planks")
    p.set_defaults(fn=_cmd_planks)

    p = sub.add_parser("verify", help="check the covering inequality on a scenario")
    p.add_argument("scenario")
    p.add_argument("--samples", type=int, default=512)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("generate", help="random hyperplane partition of a polytope")
    p.add_argument("--target", required=True)
    p.add_argument("--cuts", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("sweep", help="many random partitions, CSV summary")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--cuts", type=int, default=3)
    p.set_defaults(fn=_cmd_sweep)
    return parser


def cli_main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConvexCoverError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())
