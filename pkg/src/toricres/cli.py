"""Command-line interface.

Every command prints one report with the fields ``command``, ``result``,
``complete``, ``nodes`` and ``elapsed_ms``.  Exit codes: 0 success,
2 invalid input, 3 search budget exhausted, 4 internal check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from math import gcd
from typing import Any, Optional, Sequence

from .cone import ConeError
from .families import (
    basis_plus_vector,
    det_identity_table,
    family_cone,
    forced_chain,
    gorenstein_4d,
    hyperplane_obstruction,
    known_resolution_1_3,
)
from .fan import is_crepant, is_subdivision_of, validate_fan
from .hilbert import hilbert_basis
from .records import cone_to_record, fan_to_record, load_cone, load_fan
from .search import (
    Budget,
    InvariantError,
    SearchOutcome,
    canonical_subdivision,
    enumerate_hilbert_basis_resolutions,
    find_moderate_resolutions,
    is_moderate,
    minimal_terminal_models_3d,
    resolve,
)
from .singularity import classify, recognize_family_4d, terminal_form_3d

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4


class BudgetExhausted(Exception):
    pass


class Outcome:
    """What a command handler returns: payload plus optional search bookkeeping."""

    def __init__(self, result: Any, complete: Optional[bool] = None, nodes: Optional[int] = None, ok: bool = True):
        self.result = result
        self.complete = complete
        self.nodes = nodes
        self.ok = ok


def _vectors(vs) -> list[list[int]]:
    return [list(v) for v in vs]


def _budget(args) -> Budget:
    return Budget(args.budget_nodes, args.budget_seconds)


def _search_outcome(out: SearchOutcome) -> Outcome:
    for f in out.fans:
        if not validate_fan(f):
            raise InvariantError("search returned an invalid fan")
    result = {"count": len(out.fans), "fans": [fan_to_record(f) for f in out.fans]}
    return Outcome(result, out.complete, out.nodes_explored)


def cmd_hilbert(args) -> Outcome:
    hb = hilbert_basis(load_cone(args.input))
    return Outcome({"elements": _vectors(hb.elements), "exceptional": _vectors(hb.exceptional)})


def cmd_classify(args) -> Outcome:
    c = load_cone(args.input)
    report = classify(c)
    result = report.as_dict()
    if c.rank == 3 and report.terminal and report.simplicial:
        form = terminal_form_3d(c)
        result["terminal_form"] = list(form) if form else None
    if c.rank == 4:
        fam = recognize_family_4d(c)
        result["family_4d"] = list(fam) if fam else None
    return Outcome(result)


def cmd_resolve(args) -> Outcome:
    return Outcome(fan_to_record(resolve(load_cone(args.input))))


def _cone_and_fan(args):
    if not args.fan:
        raise ValueError("--fan is required")
    return load_cone(args.input), load_fan(args.fan)


def cmd_check_subdivision(args) -> Outcome:
    c, f = _cone_and_fan(args)
    return Outcome({"valid_fan": validate_fan(f), "is_subdivision": is_subdivision_of(f, c)})


def cmd_check_moderate(args) -> Outcome:
    c, f = _cone_and_fan(args)
    return Outcome({"moderate": is_moderate(f, c)})


def cmd_check_crepant(args) -> Outcome:
    c, f = _cone_and_fan(args)
    if not is_subdivision_of(f, c):
        raise ConeError("fan is not a subdivision of the cone")
    return Outcome({"crepant": is_crepant(f, c)})


def cmd_search(args) -> Outcome:
    c = load_cone(args.input)
    run = enumerate_hilbert_basis_resolutions if args.kind == "hbr" else find_moderate_resolutions
    return _search_outcome(run(c, _budget(args)))


def cmd_canonical_model(args) -> Outcome:
    return Outcome(fan_to_record(canonical_subdivision(load_cone(args.input))))


def cmd_minimal_models(args) -> Outcome:
    c = load_cone(args.input)
    try:
        fans = minimal_terminal_models_3d(c, _budget(args))
    except RuntimeError as exc:
        raise BudgetExhausted(str(exc)) from exc
    return Outcome({"count": len(fans), "fans": [fan_to_record(f) for f in fans]}, complete=True)


def cmd_verify_obstruction(args) -> Outcome:
    if not args.vector:
        raise ValueError("--vector is required")
    report = hyperplane_obstruction(basis_plus_vector(args.vector))
    return Outcome(report.as_dict(), ok=report.obstructed)


def cmd_verify_det_identities(args) -> Outcome:
    a, r = args.a, args.r
    if a is None or r is None:
        raise ValueError("--a and --r are required")
    if gcd(a, r) != 1 or not 1 <= a < r:
        raise ValueError(f"need gcd(a, r) = 1 and 1 <= a < r, got a={a}, r={r}")
    ls = [args.l] if args.l is not None else range(1, r)
    l2s = [args.l2] if args.l2 is not None else range(1, r)
    checked, failures = 0, []
    for l in ls:
        for l2 in l2s:
            for name, direct, forms in det_identity_table(a, r, l, l2):
                checked += 1
                if any(v != direct for v in forms):
                    failures.append({"identity": name, "l": l, "l2": l2, "direct": direct, "closed": list(forms)})
    result = {"a": a, "r": r, "checked": checked, "failures": failures, "holds": not failures}
    return Outcome(result, ok=not failures)


def cmd_verify_forced_chain(args) -> Outcome:
    if args.a is None or args.r is None:
        raise ValueError("--a and --r are required")
    cert = forced_chain(args.a, args.r)
    return Outcome(cert.as_dict(), ok=cert.holds)


def cmd_reproduce(args) -> Outcome:
    c = family_cone(gorenstein_4d(1, 3))
    hb = hilbert_basis(c)
    out = enumerate_hilbert_basis_resolutions(c, _budget(args))
    known = known_resolution_1_3()
    found = any(f.same_as(known) for f in out.fans)
    result = {
        "cone": cone_to_record(c),
        "hilbert_basis": _vectors(hb.elements),
        "resolutions": [fan_to_record(f) for f in out.fans],
        "known_fan": fan_to_record(known),
        "known_fan_found": found,
    }
    return Outcome(result, out.complete, out.nodes_explored, ok=found or not out.complete)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="cone record (JSON)")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--budget-nodes", type=int, default=10**7)
    p.add_argument("--budget-seconds", type=float, default=300.0)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as null")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricres", description="Exact computations on lattice cones and fans.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, needs_input=True, **kw):
        p = sub.add_parser(name, **kw)
        _common(p)
        p.set_defaults(handler=handler, needs_input=needs_input)
        return p

    add("hilbert", cmd_hilbert, help="Hilbert basis of a cone")
    add("classify", cmd_classify, help="singularity classification")
    add("resolve", cmd_resolve, help="a smooth subdivision")
    for name, handler in [
        ("check-subdivision", cmd_check_subdivision),
        ("check-moderate", cmd_check_moderate),
        ("check-crepant", cmd_check_crepant),
    ]:
        add(name, handler).add_argument("--fan", help="fan record (JSON)")
    add("search", cmd_search, help="exhaustive resolution search").add_argument("kind", choices=["hbr", "moderate"])
    add("canonical-model", cmd_canonical_model, help="fan over the bounded faces")
    add("minimal-models", cmd_minimal_models, help="minimal terminal simplicial models (rank 3)")

    verify = add("verify", None, needs_input=False, help="family certificates")
    verify.add_argument("what", choices=["obstruction", "det-identities", "lemma-det", "forced-chain"])
    verify.add_argument("--vector", type=int, nargs="+", help="apex generator (a_1 .. a_d)")
    verify.add_argument("--a", type=int)
    verify.add_argument("--r", type=int)
    verify.add_argument("--l", type=int)
    verify.add_argument("--l2", type=int)

    rep = add("reproduce", cmd_reproduce, needs_input=False, help="reproduce a known example")
    rep.add_argument("example", choices=["a1r3"])
    return parser


VERIFY = {
    "obstruction": cmd_verify_obstruction,
    "det-identities": cmd_verify_det_identities,
    "lemma-det": cmd_verify_det_identities,
    "forced-chain": cmd_verify_forced_chain,
}


def _command_name(args) -> str:
    for extra in ("kind", "what", "example"):
        if getattr(args, extra, None):
            return f"{args.command} {getattr(args, extra)}"
    return args.command


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True)
    lines = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True, indent=2)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = VERIFY[args.what] if args.command == "verify" else args.handler
    start = time.monotonic()
    try:
        if args.needs_input and not args.input:
            raise ValueError("--input is required")
        if args.budget_nodes <= 0 or args.budget_seconds <= 0:
            raise ValueError("budgets must be positive")
        outcome = handler(args)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except AssertionError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    elapsed = None if args.no_timing else int((time.monotonic() - start) * 1000)
    report = {
        "command": _command_name(args),
        "result": outcome.result,
        "complete": outcome.complete,
        "nodes": outcome.nodes,
        "elapsed_ms": elapsed,
    }
    text = _render(report, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if outcome.complete is False:
        print("search budget exhausted; result is inconclusive", file=sys.stderr)
        return EXIT_BUDGET
    if not outcome.ok:
        print("verification failed", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
