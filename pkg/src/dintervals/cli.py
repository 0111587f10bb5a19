"""Command-line front end.

Exit codes: 0 when the command ran and every asserted property held,
1 when a checked property failed or a certified invariant broke (the
report carries a witness), 2 for usage errors, schema errors, guard
overruns, and unmet preconditions.  ``dcollapse-oracle`` is a query:
it exits 0 whichever way the answer goes.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .complexes import is_d_collapsible, nerve, sweep_collapse
from .errors import (
    GuardExceededError,
    PreconditionError,
    SchemaError,
    TheoremViolationError,
)
from .experiments import SUITES, run_suite
from .generators import (
    ColorfulHellyProperty,
    GenSpec,
    KIntersectRich,
    PqProperty,
    gen_conditioned,
    gen_instance,
)
from .helly import (
    cfh_stats,
    colorful_helly_points,
    frac_helly_stats,
    helly_check,
    radon_number_bruteforce,
)
from .instances import Instance, dump_instance, parse_instance
from .piercing import pierce_all, pq_check
from .rationals import parse_rational
from .reports import Report, emit_report, jsonify


def _read_document(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_instance(args) -> Instance:
    text = _read_document(args.file)
    instance, warnings = parse_instance(text, strict=not args.lenient)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return instance


def _finish(report: Report, args, code: int = 0) -> int:
    report.timing["seconds"] = round(time.perf_counter() - args._t0, 6)
    text = emit_report(report, getattr(args, "format", "json"), getattr(args, "out", None))
    if getattr(args, "out", None):
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return code


# ---------------------------------------------------------------------------
# handlers


def cmd_nerve(args) -> int:
    inst = _load_instance(args)
    K = nerve(inst.sets, enumeration_guard=args.guard)
    report = Report(
        "nerve",
        {"file": args.file, "sets": len(inst.sets), "d": inst.ground.d},
        statistics={
            "faces": len(K.faces),
            "dim": K.dim,
            "vertices": sorted(K.vertices),
        },
        witnesses={
            "faces": [sorted(f) for f in K.sorted_faces()],
            "names": {i + 1: name for i, name in enumerate(inst.names)},
        },
    )
    return _finish(report, args)


def cmd_collapse(args) -> int:
    inst = _load_instance(args)
    result = sweep_collapse(inst.sets, strict=args.strict, enumeration_guard=args.guard)
    final = result.sequence.replay()
    rows = [
        {
            "iteration": i,
            "pivot": sorted(it.pivot_face),
            "value": str(it.pivot_value),
            "mode": it.mode,
            "steps": len(it.steps),
        }
        for i, it in enumerate(result.iterations)
    ]
    report = Report(
        "collapse",
        {"file": args.file, "strict": args.strict, "d": inst.ground.d},
        verdicts={"collapsed": final.is_terminal},
        statistics={
            "iterations": len(result.iterations),
            "steps": result.step_count,
            "max_free_face": max(
                (len(s.free_face) for s in result.sequence.steps), default=0
            ),
        },
        rows=rows,
    )
    return _finish(report, args, 0 if final.is_terminal else 1)


def cmd_dcollapse_oracle(args) -> int:
    inst = _load_instance(args)
    K = nerve(inst.sets, enumeration_guard=args.guard)
    ok, witness = is_d_collapsible(K, args.bound, face_guard=args.face_guard)
    steps = None
    if witness is not None:
        steps = [
            {"free": sorted(s.free_face), "maximal": sorted(s.unique_maximal)}
            for s in witness.steps
        ]
    report = Report(
        "dcollapse-oracle",
        {"file": args.file, "bound": args.bound},
        statistics={"collapsible": ok, "faces": len(K.faces)},
        witnesses={} if steps is None else {"sequence": steps},
    )
    # query semantics: a negative answer is still a successful run
    return _finish(report, args)


def cmd_radon(args) -> int:
    inst = _load_instance(args)
    cap = args.cap if args.cap is not None else 2 * inst.ground.d + 1
    number = radon_number_bruteforce(inst.ground, cap)
    report = Report(
        "radon",
        {"file": args.file, "cap": cap, "points": len(inst.ground)},
        statistics={"radon_number": number},
    )
    return _finish(report, args)


def cmd_helly(args) -> int:
    inst = _load_instance(args)
    rep = helly_check(inst.sets, args.m, args.k)
    report = Report(
        "helly",
        {"file": args.file, "m": args.m, "k": args.k},
        verdicts={"holds": rep.verdict},
        witnesses=rep.witnesses,
        statistics=rep.statistics,
    )
    return _finish(report, args, 0 if rep.verdict else 1)


def cmd_colorful_helly(args) -> int:
    inst = _load_instance(args)
    families = inst.family_traces()
    designated = None
    if args.rotate is not None:
        designated = args.rotate % len(families)
    sel = colorful_helly_points(families, args.k, designated=designated)
    report = Report(
        "colorful-helly",
        {"file": args.file, "k": args.k, "families": len(families)},
        verdicts={"selected": True},
        witnesses={
            "points": sel.points,
            "designated": sel.designated,
            "minimizing_tuple": sel.minimizing_tuple,
            "minimum": sel.minimum,
        },
    )
    return _finish(report, args)


def cmd_frac_helly(args) -> int:
    inst = _load_instance(args)
    rep = frac_helly_stats(inst.sets, args.k)
    report = Report(
        "frac-helly",
        {"file": args.file, "k": args.k, "n": len(inst.sets)},
        verdicts={"bound_holds": rep.verdict},
        witnesses=rep.witnesses,
        statistics=rep.statistics,
    )
    return _finish(report, args, 0 if rep.verdict else 1)


def cmd_cfh(args) -> int:
    inst = _load_instance(args)
    rep = cfh_stats(inst.family_traces())
    report = Report(
        "cfh",
        {"file": args.file},
        verdicts={"bound_holds": rep.verdict},
        witnesses=rep.witnesses,
        statistics=rep.statistics,
    )
    return _finish(report, args, 0 if rep.verdict else 1)


def cmd_pierce(args) -> int:
    inst = _load_instance(args)
    res = pierce_all(inst.sets)
    report = Report(
        "pierce",
        {"file": args.file, "n": len(inst.sets), "d": inst.ground.d},
        verdicts={"sandwich": True, "lp_certified": res.lp.certified},
        statistics={
            "tau": res.tau,
            "nu": res.nu,
            "tau_star": res.tau_star,
            "nu_star": res.nu_star,
        },
        witnesses={
            "piercing_points": res.piercing_points,
            "disjoint_subfamily": res.disjoint_subfamily,
            "matching_weights": res.lp.matching_weights,
            "transversal_weights": res.lp.transversal_weights,
        },
    )
    return _finish(report, args)


def cmd_pq_check(args) -> int:
    inst = _load_instance(args)
    if args.kind == "plain":
        families = [inst.sets]
    else:
        families = inst.family_traces()
    ok, counterexample = pq_check(families, args.p, args.q, args.kind)
    report = Report(
        "pq-check",
        {"file": args.file, "p": args.p, "q": args.q, "kind": args.kind},
        verdicts={"has_property": ok},
        witnesses={} if ok else {"counterexample": counterexample},
    )
    return _finish(report, args, 0 if ok else 1)


def _parse_predicate(text: str):
    parts = text.split(":")
    head, rest = parts[0], parts[1:]
    if head == "colorful-helly":
        if len(rest) != 1:
            raise ValueError("use colorful-helly:K")
        return ColorfulHellyProperty(int(rest[0]))
    if head == "pq":
        if len(rest) not in (2, 3):
            raise ValueError("use pq:P:Q or pq:P:Q:KIND")
        kind = rest[2] if len(rest) == 3 else "plain"
        return PqProperty(int(rest[0]), int(rest[1]), kind)
    if head == "k-rich":
        if len(rest) != 2:
            raise ValueError("use k-rich:K:ALPHA")
        return KIntersectRich(int(rest[0]), parse_rational(rest[1]))
    raise ValueError(f"unknown predicate {head!r}")


def _parse_points(text: str, d: int):
    parts = [int(p) for p in text.split(",")]
    if len(parts) == 1:
        return parts[0]
    if len(parts) != d:
        raise ValueError(f"points spec needs 1 or {d} counts")
    return tuple(parts)


def cmd_gen(args) -> int:
    coord_lo, coord_hi = (int(x) for x in args.range.split(":"))
    predicate = _parse_predicate(args.predicate) if args.predicate else None
    n_families = args.families
    if n_families is None:
        n_families = predicate.families_needed(args.d) if predicate else 1
    spec = GenSpec(
        d=args.d,
        points_per_level=_parse_points(args.points, args.d),
        coord_range=(coord_lo, coord_hi),
        n_sets=args.sets,
        presence=parse_rational(args.presence),
        max_width=args.max_width if args.max_width is not None else coord_hi - coord_lo,
        seed=args.seed,
        n_families=n_families,
    )
    if predicate is None:
        ground, families = gen_instance(spec)
        draws = 1
    else:
        outcome = gen_conditioned(spec, predicate, cap_draws=args.cap)
        if not outcome.found:
            print(
                f"no instance with {predicate.name} in {outcome.draws} draws",
                file=sys.stderr,
            )
            return 1
        ground, families, draws = outcome.ground, outcome.families, outcome.draws
    flat = [t for fam in families for t in fam]
    names = [f"S{i + 1}" for i in range(len(flat))]
    groups = None
    if len(families) > 1:
        groups, offset = [], 0
        for fam in families:
            groups.append(list(range(offset, offset + len(fam))))
            offset += len(fam)
    inst = Instance(ground, flat, names, groups)
    text = dump_instance(inst)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out} after {draws} draw(s)")
    else:
        sys.stdout.write(text)
    return 0


def cmd_experiment(args) -> int:
    d_choices = None
    if args.d:
        d_choices = tuple(int(x) for x in args.d.split(","))
    report = run_suite(args.suite, trials=args.trials, seed=args.seed, d_choices=d_choices)
    return _finish(report, args, 0 if report.passed else 1)


# ---------------------------------------------------------------------------
# parser


def _add_io(sub, with_file: bool = True):
    if with_file:
        sub.add_argument("file", help="instance file path, or - for stdin")
        sub.add_argument(
            "--lenient",
            action="store_true",
            help="warn on unknown fields instead of rejecting them",
        )
    sub.add_argument("--out", help="write the report here instead of stdout")
    sub.add_argument(
        "--format", choices=("json", "csv"), default="json", help="report format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dintervals",
        description="check intersection properties of separated multi-level intervals",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("nerve", help="intersection complex of the sets")
    _add_io(s)
    s.add_argument("--guard", type=int, default=None, help="family-size guard override")
    s.set_defaults(handler=cmd_nerve)

    s = subs.add_parser("collapse", help="run the sweep collapse")
    _add_io(s)
    s.add_argument(
        "--strict",
        action="store_true",
        help="abort when literal truncation disagrees with the collapse",
    )
    s.add_argument("--guard", type=int, default=None)
    s.set_defaults(handler=cmd_collapse)

    s = subs.add_parser(
        "dcollapse-oracle", help="backtracking collapsibility decision"
    )
    _add_io(s)
    s.add_argument("--bound", type=int, required=True, help="max free-face size")
    s.add_argument("--guard", type=int, default=None)
    s.add_argument("--face-guard", type=int, default=None, dest="face_guard")
    s.set_defaults(handler=cmd_dcollapse_oracle)

    s = subs.add_parser("radon", help="brute-force partition threshold of the points")
    _add_io(s)
    s.add_argument("--cap", type=int, default=None, help="largest size to test")
    s.set_defaults(handler=cmd_radon)

    s = subs.add_parser("helly", help="m-wise implies all-wise intersection check")
    _add_io(s)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k", type=int, default=1, help="levels the intersections must meet")
    s.set_defaults(handler=cmd_helly)

    s = subs.add_parser("colorful-helly", help="point selection across families")
    _add_io(s)
    s.add_argument("--k", type=int, default=1)
    s.add_argument(
        "--rotate",
        type=int,
        default=None,
        help="designated family index (mod family count); default last",
    )
    s.set_defaults(handler=cmd_colorful_helly)

    s = subs.add_parser("frac-helly", help="fractional intersection statistics")
    _add_io(s)
    s.add_argument("--k", type=int, default=1)
    s.set_defaults(handler=cmd_frac_helly)

    s = subs.add_parser("cfh", help="colorful fractional statistics over 2d families")
    _add_io(s)
    s.set_defaults(handler=cmd_cfh)

    s = subs.add_parser("pierce", help="exact and fractional piercing numbers")
    _add_io(s)
    s.set_defaults(handler=cmd_pierce)

    s = subs.add_parser("pq-check", help="exhaustive (p,q) property test")
    _add_io(s)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument(
        "--kind",
        choices=("plain", "colorful-first", "colorful-second"),
        default="plain",
    )
    s.set_defaults(handler=cmd_pq_check)

    s = subs.add_parser("gen", help="emit a seeded random instance file")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--points", default="4", help="count, or comma list per level")
    s.add_argument("--range", default="0:10", help="coordinate range LO:HI")
    s.add_argument("--sets", type=int, default=4, help="sets per family")
    s.add_argument("--presence", default="1", help="per-level presence probability")
    s.add_argument("--max-width", type=int, default=None, dest="max_width")
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--families", type=int, default=None)
    s.add_argument(
        "--predicate",
        default=None,
        help="colorful-helly:K | pq:P:Q[:KIND] | k-rich:K:ALPHA",
    )
    s.add_argument("--cap", type=int, default=None, help="rejection-sampling draw cap")
    s.add_argument("--out", help="instance file to write; stdout otherwise")
    s.set_defaults(handler=cmd_gen)

    s = subs.add_parser("experiment", help="run a seeded corpus suite")
    s.add_argument("--suite", choices=sorted(SUITES), required=True)
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--d", default=None, help="comma list of levels, e.g. 1,2,3")
    _add_io(s, with_file=False)
    s.set_defaults(handler=cmd_experiment)

    return parser


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._t0 = time.perf_counter()
    try:
        return args.handler(args)
    except TheoremViolationError as exc:
        print(f"violation: {exc}", file=sys.stderr)
        if exc.diagnostics:
            print(jsonify(exc.diagnostics), file=sys.stderr)
        return 1
    except (SchemaError, GuardExceededError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
