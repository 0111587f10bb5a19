"""Seeded corpus experiments: one function per suite.

Every suite draws its own per-trial parameters from a named stream, so
a (suite, seed, trials) triple pins the corpus exactly.  Suites return
a Report whose verdicts say whether the property under test survived
the whole corpus; witnesses carry the first failure in full.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import ceil

from .complexes import is_d_collapsible, nerve, sweep_collapse
from .errors import DIntervalError, SweepInvariantError, TheoremViolationError
from .generators import (
    ColorfulHellyProperty,
    GenSpec,
    PqProperty,
    gen_conditioned,
    gen_family,
    gen_ground,
    gen_helly_lower_bound,
    gen_instance,
    gen_radon_lower_bound,
)
from .geometry import f_value, intersect_all, k_intersects
from .helly import (
    cfh_stats,
    colorful_helly_points,
    frac_helly_stats,
    helly_check,
    maxima_witness_subfamily,
    radon_number_bruteforce,
    radon_partition,
)
from .piercing import (
    blow_up,
    max_point_cover,
    pierce_all,
    piercing_bound_check,
    pq_check,
    tau_exact,
)
from .reports import Report

PRESENCES = (Fraction(1, 2), Fraction(3, 4), Fraction(1))


def _trial_rng(seed: int, suite: str, t: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{t}")


def _spec_seed(seed: int, t: int) -> int:
    return seed * 1_000_003 + t


def _random_spec(
    rng: random.Random,
    seed: int,
    t: int,
    d: int,
    n_lo: int = 2,
    n_hi: int = 8,
    pts_lo: int = 0,
    pts_hi: int = 6,
    n_families: int = 1,
    full_presence: bool = False,
) -> GenSpec:
    hi = rng.randrange(8, 16)
    pts = tuple(rng.randrange(pts_lo, pts_hi + 1) for _ in range(d))
    presence = Fraction(1) if full_presence else PRESENCES[rng.randrange(len(PRESENCES))]
    return GenSpec(
        d=d,
        points_per_level=pts,
        coord_range=(0, hi),
        n_sets=rng.randrange(n_lo, n_hi + 1),
        presence=presence,
        max_width=rng.randrange(hi + 1),
        seed=_spec_seed(seed, t),
        n_families=n_families,
    )


def collapse_suite(trials: int = 1000, seed: int = 7, d_choices=(1, 2, 3)) -> Report:
    report = Report(
        "experiment",
        {"suite": "collapse", "trials": trials, "d": list(d_choices)},
        seed=seed,
        rows=[],
    )
    failures = 0
    mode_totals = {"delete": 0, "truncate": 0, "star": 0}
    for t in range(trials):
        rng = _trial_rng(seed, "collapse", t)
        d = d_choices[rng.randrange(len(d_choices))]
        spec = _random_spec(rng, seed, t, d)
        ground, family = gen_family(spec)
        row = {"trial": t, "d": d, "n": len(family), "ok": True}
        try:
            result = sweep_collapse(family)
            final = result.sequence.replay()
            if not final.is_terminal:
                raise TheoremViolationError("replay did not reach the empty complex")
            for it in result.iterations:
                mode_totals[it.mode] += 1
            row["steps"] = result.step_count
            row["iterations"] = len(result.iterations)
        except (SweepInvariantError, TheoremViolationError, ValueError) as exc:
            failures += 1
            row["ok"] = False
            row["error"] = str(exc)
            report.witnesses.setdefault("first_failure", {"trial": t, "error": str(exc)})
        report.rows.append(row)
    report.statistics.update(failures=failures, modes=mode_totals)
    report.verdicts["all_sweeps_succeed"] = failures == 0
    return report


def radon_suite(trials: int = 40, seed: int = 7, d_choices=(1, 2, 3)) -> Report:
    report = Report(
        "experiment",
        {"suite": "radon", "trials": trials, "d": list(d_choices)},
        seed=seed,
        rows=[],
    )
    failures = 0
    for t in range(trials):
        rng = _trial_rng(seed, "radon", t)
        d = d_choices[rng.randrange(len(d_choices))]
        per_level = min(4, 12 // d)
        spec = _random_spec(
            rng, seed, t, d, n_lo=0, n_hi=0, pts_lo=2, pts_hi=per_level
        )
        ground = gen_ground(spec)
        row = {"trial": t, "d": d, "points": len(ground), "ok": True}
        try:
            pts = sorted(ground.points(), key=lambda p: (p.level, p.coord))
            import itertools as _it

            for subset in _it.combinations(pts, 2 * d + 1):
                part = radon_partition(ground, subset)
                if part is None or not part.verify(ground):
                    raise TheoremViolationError(
                        "a (2d+1)-subset lacks a verified partition",
                        diagnostics={"subset": subset},
                    )
            gen_radon_lower_bound(ground)
            number = radon_number_bruteforce(ground, 2 * d + 1)
            if number != 2 * d + 1:
                raise TheoremViolationError(
                    f"brute-force number {number} != {2 * d + 1}"
                )
            row["radon_number"] = number
        except (DIntervalError, ValueError) as exc:
            failures += 1
            row["ok"] = False
            row["error"] = str(exc)
            report.witnesses.setdefault("first_failure", {"trial": t, "error": str(exc)})
        report.rows.append(row)
    report.statistics["failures"] = failures
    report.verdicts["radon_number_everywhere"] = failures == 0
    return report


def helly_suite(trials: int = 300, seed: int = 7, d_choices=(1, 2, 3)) -> Report:
    report = Report(
        "experiment",
        {"suite": "helly", "trials": trials, "d": list(d_choices)},
        seed=seed,
        rows=[],
    )
    violations = 0
    lower_bound_misses = 0
    for t in range(trials):
        rng = _trial_rng(seed, "helly", t)
        d = d_choices[rng.randrange(len(d_choices))]
        spec = _random_spec(rng, seed, t, d, n_lo=2, n_hi=10, pts_lo=2, pts_hi=6)
        ground, family = gen_family(spec)
        row = {"trial": t, "d": d, "n": len(family)}
        check = helly_check(family, 2 * d, 1)
        row["helly_2d_ok"] = check.verdict
        if not check.verdict:
            violations += 1
            report.witnesses.setdefault(
                "first_violation", {"trial": t, "witnesses": check.witnesses}
            )
        lb = gen_helly_lower_bound(ground)
        lb_check = helly_check(lb, 2 * d - 1, 1)
        row["lower_bound_violates"] = not lb_check.verdict
        if lb_check.verdict:
            lower_bound_misses += 1
        report.rows.append(row)
    report.statistics.update(
        violations=violations, lower_bound_misses=lower_bound_misses
    )
    report.verdicts["helly_at_2d"] = violations == 0
    report.verdicts["lower_bound_at_2d_minus_1"] = lower_bound_misses == 0
    return report


def colorful_suite(
    trials: int = 200, seed: int = 7, d_choices=(1, 2, 3), cap_per_instance: int = 500
) -> Report:
    """Per (d, k ≤ d): rejection-sample instances with the colorful
    property, then run the point selection on each."""
    report = Report(
        "experiment",
        {"suite": "colorful-helly", "trials": trials, "d": list(d_choices)},
        seed=seed,
        rows=[],
    )
    all_ok = True
    for d in d_choices:
        for k in range(1, d + 1):
            found = 0
            violations = 0
            attempt = 0
            max_attempts = trials * 200
            while found < trials and attempt < max_attempts:
                rng = _trial_rng(seed, f"colorful:{d}:{k}", attempt)
                # narrow ground and wide windows keep the acceptance rate
                # workable; the hardest cell gets singleton families
                hard = d == 3 and k == 3
                hi = rng.randrange(2, 5) if hard else rng.randrange(3, 7)
                n_hi = 3 if d == 1 else (1 if hard else 2)
                spec = GenSpec(
                    d=d,
                    points_per_level=tuple(
                        rng.randrange(2, 4) for _ in range(d)
                    ),
                    coord_range=(0, hi),
                    n_sets=rng.randrange(1, n_hi + 1),
                    presence=Fraction(1),
                    max_width=hi,
                    seed=_spec_seed(seed, attempt),
                    n_families=2 * d - k + 1,
                )
                attempt += 1
                outcome = gen_conditioned(
                    spec, ColorfulHellyProperty(k), cap_draws=cap_per_instance
                )
                if not outcome.found:
                    continue
                found += 1
                try:
                    colorful_helly_points(outcome.families, k)
                except (TheoremViolationError, DIntervalError) as exc:
                    violations += 1
                    report.witnesses.setdefault(
                        "first_violation",
                        {"d": d, "k": k, "attempt": attempt - 1, "error": str(exc)},
                    )
            ok = violations == 0 and found >= trials
            all_ok = all_ok and ok
            report.rows.append(
                {
                    "d": d,
                    "k": k,
                    "found": found,
                    "attempts": attempt,
                    "violations": violations,
                    "ok": ok,
                }
            )
    report.verdicts["colorful_points_everywhere"] = all_ok
    return report


def frac_suite(trials: int = 500, seed: int = 7, d_choices=(1, 2, 3)) -> Report:
    report = Report(
        "experiment",
        {"suite": "frac-helly", "trials": trials, "d": list(d_choices)},
        seed=seed,
        rows=[],
    )
    frac_violations = 0
    cfh_violations = 0
    for d in d_choices:
        for t in range(trials):
            rng = _trial_rng(seed, f"frac:{d}", t)
            spec = _random_spec(rng, seed, t, d, n_lo=2 * d, n_hi=9, pts_lo=2, pts_hi=5)
            ground, family = gen_family(spec)
            row = {"d": d, "trial": t, "n": len(family), "ok": True}
            for k in range(1, d + 1):
                stats = frac_helly_stats(family, k)
                if not stats.verdict:
                    frac_violations += 1
                    row["ok"] = False
                    report.witnesses.setdefault(
                        "first_frac_violation",
                        {"d": d, "k": k, "trial": t, "stats": stats.statistics},
                    )
            cspec = _random_spec(
                rng, seed, t, d, n_lo=1, n_hi=3, pts_lo=2, pts_hi=5,
                n_families=2 * d,
            )
            _, families = gen_instance(cspec)
            cstats = cfh_stats(families)
            if not cstats.verdict:
                cfh_violations += 1
                row["ok"] = False
                report.witnesses.setdefault(
                    "first_cfh_violation",
                    {"d": d, "trial": t, "stats": cstats.statistics},
                )
            report.rows.append(row)
    report.statistics.update(
        frac_violations=frac_violations, cfh_violations=cfh_violations
    )
    report.verdicts["fractional_bound"] = frac_violations == 0
    report.verdicts["colorful_fractional_bound"] = cfh_violations == 0
    return report


def _nonempty_family(ground, family):
    return [t for t in family if not t.is_empty]


def pierce_suite(trials: int = 220, seed: int = 7, d_choices=(1, 2, 3)) -> Report:
    report = Report(
        "experiment",
        {"suite": "pierce", "trials": trials, "d": list(d_choices)},
        seed=seed,
        rows=[],
    )
    failures = 0
    blowup_failures = 0
    solved = 0
    for t in range(trials):
        rng = _trial_rng(seed, "pierce", t)
        d = d_choices[rng.randrange(len(d_choices))]
        spec = _random_spec(
            rng, seed, t, d, n_lo=2, n_hi=8, pts_lo=2, pts_hi=6, full_presence=True
        )
        ground, raw = gen_family(spec)
        family = _nonempty_family(ground, raw)
        if len(family) < 2:
            report.rows.append({"trial": t, "d": d, "skipped": True})
            continue
        row = {"trial": t, "d": d, "n": len(family), "ok": True}
        try:
            res = pierce_all(family)
            solved += 1
            row.update(tau=res.tau, nu=res.nu, tau_star=res.tau_star)
            mult = [rng.randrange(0, 4) for _ in family]
            total = sum(mult)
            if total >= 1:
                bu = blow_up(family, mult)
                cover, _ = max_point_cover(bu.traces)
                # cover ≥ total/ν*  ⇔  cover·ν* ≥ total, exactly
                if cover * res.nu_star < total:
                    raise TheoremViolationError(
                        "blow-up cover below the fractional pigeonhole",
                        diagnostics={"cover": cover, "total": total},
                    )
        except (DIntervalError, ValueError) as exc:
            failures += 1
            row["ok"] = False
            row["error"] = str(exc)
            report.witnesses.setdefault("first_failure", {"trial": t, "error": str(exc)})
        report.rows.append(row)
    report.statistics.update(
        failures=failures, blowup_failures=blowup_failures, solved=solved
    )
    report.verdicts["duality_and_sandwich"] = failures == 0
    report.statistics["solved"] = solved
    return report


def bound_suite(trials: int = 200, seed: int = 7, d_choices=(2, 3)) -> Report:
    report = Report(
        "experiment",
        {"suite": "piercing-bound", "trials": trials, "d": list(d_choices)},
        seed=seed,
        rows=[],
    )
    violations = 0
    for t in range(trials):
        rng = _trial_rng(seed, "bound", t)
        d = d_choices[rng.randrange(len(d_choices))]
        spec = _random_spec(
            rng, seed, t, d, n_lo=2, n_hi=8, pts_lo=2, pts_hi=6, full_presence=True
        )
        ground, raw = gen_family(spec)
        family = _nonempty_family(ground, raw)
        if len(family) < 2:
            report.rows.append({"trial": t, "d": d, "skipped": True})
            continue
        ok, tau, nu = piercing_bound_check(family)
        if not ok:
            violations += 1
            report.witnesses.setdefault(
                "first_violation", {"trial": t, "d": d, "tau": tau, "nu": nu}
            )
        report.rows.append({"trial": t, "d": d, "tau": tau, "nu": nu, "ok": ok})
    report.statistics["violations"] = violations
    report.verdicts["piercing_bound"] = violations == 0
    return report


def pq_suite(trials: int = 100, seed: int = 7, d_choices=(1, 2, 3)) -> Report:
    """Families with the (p,2) property: the observed τ per (d,p) is
    reported; no closed-form ceiling is asserted."""
    report = Report(
        "experiment",
        {"suite": "pq", "trials": trials, "d": list(d_choices)},
        seed=seed,
        rows=[],
    )
    max_tau: dict[str, int] = {}
    examined = 0
    for t in range(trials):
        rng = _trial_rng(seed, "pq", t)
        d = d_choices[rng.randrange(len(d_choices))]
        p = rng.randrange(3, 6)
        spec = _random_spec(
            rng, seed, t, d, n_lo=p, n_hi=8, pts_lo=2, pts_hi=6, full_presence=True
        )
        ground, raw = gen_family(spec)
        family = _nonempty_family(ground, raw)
        if len(family) < p:
            continue
        ok, _ = pq_check([family], p, 2, "plain")
        if not ok:
            continue
        examined += 1
        tau, _ = tau_exact(family)
        key = f"d={d},p={p}"
        max_tau[key] = max(max_tau.get(key, 0), tau)
        report.rows.append({"trial": t, "d": d, "p": p, "tau": tau})
    report.statistics.update(examined=examined, max_tau=max_tau)
    report.verdicts["measured"] = True
    return report


def witness_suite(trials: int = 300, seed: int = 7, d_choices=(1, 2, 3)) -> Report:
    import itertools as _it

    report = Report(
        "experiment",
        {"suite": "maxima-witness", "trials": trials, "d": list(d_choices)},
        seed=seed,
        rows=[],
    )
    failures = 0
    found = 0
    attempt = 0
    max_attempts = trials * 60
    while found < trials and attempt < max_attempts:
        rng = _trial_rng(seed, "witness", attempt)
        d = d_choices[rng.randrange(len(d_choices))]
        k = rng.randrange(1, d + 1)
        spec = _random_spec(
            rng, seed, attempt, d, n_lo=2, n_hi=7, pts_lo=2, pts_hi=6,
            full_presence=True,
        )
        attempt += 1
        ground, family = gen_family(spec)
        if not family or not k_intersects(family, k):
            continue
        found += 1
        row = {"attempt": attempt - 1, "d": d, "k": k, "n": len(family), "ok": True}
        try:
            indices = maxima_witness_subfamily(family, k)
            target = f_value(intersect_all(list(family))[0])
            bound = 2 * d - k
            if len(indices) > bound:
                raise TheoremViolationError("witness too large")
            # oracle: some subfamily within the size bound matches f
            brute = False
            for size in range(1, min(bound, len(family)) + 1):
                for idx in _it.combinations(range(len(family)), size):
                    joint, _ = intersect_all([family[j] for j in idx])
                    if f_value(joint) == target:
                        brute = True
                        break
                if brute:
                    break
            if not brute:
                raise TheoremViolationError("brute force finds no witness at all")
            row["size"] = len(indices)
        except (DIntervalError, ValueError) as exc:
            failures += 1
            row["ok"] = False
            row["error"] = str(exc)
            report.witnesses.setdefault(
                "first_failure", {"attempt": attempt - 1, "error": str(exc)}
            )
        report.rows.append(row)
    report.statistics.update(failures=failures, found=found, attempts=attempt)
    report.verdicts["witness_contracts"] = failures == 0 and found >= trials
    return report


def oracle_suite(trials: int = 100, seed: int = 7, d_choices=(1, 2)) -> Report:
    report = Report(
        "experiment",
        {"suite": "oracle-agreement", "trials": trials, "d": list(d_choices)},
        seed=seed,
        rows=[],
    )
    disagreements = 0
    for t in range(trials):
        rng = _trial_rng(seed, "oracle", t)
        d = d_choices[rng.randrange(len(d_choices))]
        spec = _random_spec(rng, seed, t, d, n_lo=2, n_hi=5, pts_lo=1, pts_hi=5)
        ground, family = gen_family(spec)
        row = {"trial": t, "d": d, "n": len(family)}
        K = nerve(family)
        sweep_ok = True
        try:
            result = sweep_collapse(family)
            sweep_ok = result.sequence.replay().is_terminal
        except DIntervalError:
            sweep_ok = False
        collapsible, witness = is_d_collapsible(K, 2 * d - 1)
        if witness is not None and not witness.replays_to_empty():
            collapsible = False
        row.update(sweep_ok=sweep_ok, oracle=collapsible)
        if sweep_ok != collapsible:
            disagreements += 1
            report.witnesses.setdefault("first_disagreement", row)
        report.rows.append(row)
    report.statistics["disagreements"] = disagreements
    report.verdicts["oracle_agrees_with_sweep"] = disagreements == 0
    return report


SUITES = {
    "collapse": collapse_suite,
    "radon": radon_suite,
    "helly": helly_suite,
    "colorful-helly": colorful_suite,
    "frac-helly": frac_suite,
    "pierce": pierce_suite,
    "piercing-bound": bound_suite,
    "pq": pq_suite,
    "maxima-witness": witness_suite,
    "oracle-agreement": oracle_suite,
}


def run_suite(name: str, trials: int | None = None, seed: int = 7, d_choices=None) -> Report:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    fn = SUITES[name]
    kwargs = {"seed": seed}
    if trials is not None:
        kwargs["trials"] = trials
    if d_choices is not None:
        kwargs["d_choices"] = tuple(d_choices)
    return fn(**kwargs)
