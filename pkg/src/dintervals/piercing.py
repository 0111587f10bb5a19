"""Transversal and matching numbers, exact and fractional, plus the
(p,q) property checkers and blow-ups.

Candidate piercing points are the ground points covered by at least one
set: sound because every set is a subset of the ground set.  Families
handed to the piercing solvers must have no empty member (an empty set
cannot be pierced, so τ would be undefined).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb
from typing import Sequence

from .config import guard_limit
from .errors import (
    GuardExceededError,
    PreconditionError,
    TheoremViolationError,
)
from .geometry import Point, TraceSet, intersect_all
from .lp import SimplexOutcome, simplex_maximize


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    matching_weights: tuple[Fraction, ...]  # one per set
    transversal_weights: tuple[Fraction, ...]  # one per candidate point
    candidate_points: tuple[Point, ...]
    certified: bool


@dataclass(frozen=True)
class PiercingResult:
    tau: int
    piercing_points: tuple[Point, ...]
    nu: int
    disjoint_subfamily: tuple[int, ...]
    tau_star: Fraction
    nu_star: Fraction
    lp: LPSolution


def _validate_family(family: Sequence[TraceSet], cap_name: str = "PIERCE_SETS"):
    if not family:
        raise PreconditionError("family is empty")
    limit = guard_limit(cap_name)
    if len(family) > limit:
        raise GuardExceededError("family size", len(family), limit)
    for j, t in enumerate(family):
        if t.is_empty:
            raise PreconditionError(
                f"set {j} has empty trace; piercing undefined", witness=j
            )
    ground = family[0].ground
    for t in family[1:]:
        if t.ground != ground:
            raise PreconditionError("family spans several ground sets")


def candidate_points(family: Sequence[TraceSet]) -> tuple[Point, ...]:
    seen = set()
    for t in family:
        seen.update(t.points())
    return tuple(sorted(seen, key=lambda p: (p.level, p.coord)))


def max_point_cover(family: Sequence[TraceSet]) -> tuple[int, Point | None]:
    """Largest subfamily sharing one point, by scanning candidates."""
    best, best_point = 0, None
    for p in candidate_points(family):
        hit = sum(1 for t in family if p in t)
        if hit > best:
            best, best_point = hit, p
    return best, best_point


# ---------------------------------------------------------------------------
# exact numbers


def tau_exact(family: Sequence[TraceSet]) -> tuple[int, tuple[Point, ...]]:
    """Minimum piercing set via branch and bound.

    Lower bounds: the LP optimum at the root, a greedy disjoint packing
    per node.  Branching splits on the cheapest unpierced set's points.
    """
    _validate_family(family)
    points = candidate_points(family)
    membership = [frozenset(t.points()) for t in family]
    covers = {p: frozenset(j for j, s in enumerate(membership) if p in s) for p in points}

    rank = {p: i for i, p in enumerate(points)}

    def greedy_cover() -> list[Point]:
        uncovered = set(range(len(family)))
        picked = []
        while uncovered:
            p = max(points, key=lambda q: (len(covers[q] & uncovered), -rank[q]))
            picked.append(p)
            uncovered -= covers[p]
        return picked

    def disjoint_lower_bound(uncovered: frozenset) -> int:
        taken = 0
        blocked: set[int] = set()
        for j in sorted(uncovered, key=lambda j: len(membership[j])):
            if j in blocked:
                continue
            taken += 1
            for l in uncovered:
                if l not in blocked and membership[j] & membership[l]:
                    blocked.add(l)
        return taken

    root_lb = ceil(fractional_lp(family).value)
    best = greedy_cover()
    best_size = len(best)

    def branch(uncovered: frozenset, chosen: list[Point]):
        nonlocal best, best_size
        if not uncovered:
            if len(chosen) < best_size:
                best, best_size = list(chosen), len(chosen)
            return
        if len(chosen) + disjoint_lower_bound(uncovered) >= best_size:
            return
        target = min(uncovered, key=lambda j: (len(membership[j]), j))
        for p in sorted(membership[target], key=lambda q: (q.level, q.coord)):
            branch(uncovered - covers[p], chosen + [p])

    if best_size > root_lb:
        branch(frozenset(range(len(family))), [])
    result = tuple(sorted(best, key=lambda p: (p.level, p.coord)))
    for j, s in enumerate(membership):
        if not any(p in s for p in result):
            raise TheoremViolationError(
                "piercing witness misses a set", diagnostics={"set": j}
            )
    return len(result), result


def nu_exact(family: Sequence[TraceSet]) -> tuple[int, tuple[int, ...]]:
    """Maximum pairwise-disjoint subfamily: independent set in the
    intersection graph, by include/exclude with a size cutoff."""
    _validate_family(family)
    n = len(family)
    adj = [set() for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        joint, _ = intersect_all([family[i], family[j]])
        if not joint.is_empty:
            adj[i].add(j)
            adj[j].add(i)

    best: list[int] = []

    def extend(chosen: list[int], allowed: list[int]):
        nonlocal best
        if len(chosen) + len(allowed) <= len(best):
            return
        if not allowed:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        v, rest = allowed[0], allowed[1:]
        extend(chosen + [v], [u for u in rest if u not in adj[v]])
        extend(chosen, rest)

    order = sorted(range(n), key=lambda v: (len(adj[v]), v))
    extend([], order)
    witness = tuple(sorted(best))
    for i, j in itertools.combinations(witness, 2):
        joint, _ = intersect_all([family[i], family[j]])
        if not joint.is_empty:
            raise TheoremViolationError(
                "disjointness witness overlaps", diagnostics={"pair": (i, j)}
            )
    return len(witness), witness


# ---------------------------------------------------------------------------
# LP relaxation


def fractional_lp(family: Sequence[TraceSet]) -> LPSolution:
    """Fractional matching (primal) and transversal (dual), certified.

    max Σ y_C  s.t.  Σ_{C ∋ p} y_C ≤ 1 per candidate point, y ≥ 0;
    the dual weights come from the slack columns and are rechecked
    against every constraint before the certificate is granted.
    """
    _validate_family(family)
    points = candidate_points(family)
    n, m = len(family), len(points)
    one = Fraction(1)
    A = [[one if p in family[j] else Fraction(0) for j in range(n)] for p in points]
    out: SimplexOutcome = simplex_maximize([one] * n, A, [one] * m)

    y, x = out.primal, out.dual
    if any(v < 0 for v in y) or any(v < 0 for v in x):
        raise TheoremViolationError("LP produced negative weights")
    for i, p in enumerate(points):
        if sum((y[j] for j in range(n) if p in family[j]), Fraction(0)) > 1:
            raise TheoremViolationError(
                "matching weights overload a point", diagnostics={"point": p}
            )
    for j in range(n):
        if sum((x[i] for i, p in enumerate(points) if p in family[j]), Fraction(0)) < 1:
            raise TheoremViolationError(
                "transversal weights miss a set", diagnostics={"set": j}
            )
    dual_value = sum(x, Fraction(0))
    if dual_value != out.value:
        raise TheoremViolationError(
            "duality gap",
            diagnostics={"primal": out.value, "dual": dual_value},
        )
    return LPSolution(out.value, y, x, points, True)


def pierce_all(family: Sequence[TraceSet]) -> PiercingResult:
    """τ, ν and their common fractional value, sandwich-checked."""
    lp = fractional_lp(family)
    tau, pts = tau_exact(family)
    nu, sub = nu_exact(family)
    if not (nu <= lp.value <= tau):
        raise TheoremViolationError(
            "sandwich ν ≤ ν* = τ* ≤ τ violated",
            diagnostics={"nu": nu, "lp": lp.value, "tau": tau},
        )
    return PiercingResult(tau, pts, nu, sub, lp.value, lp.value, lp)


# ---------------------------------------------------------------------------
# (p,q) properties


def _pq_guard(work: int, override: int | None):
    limit = guard_limit("PQ_WORK", override)
    if work > limit:
        raise GuardExceededError("(p,q) enumeration", work, limit)


def pq_check(
    families: Sequence[Sequence[TraceSet]],
    p: int,
    q: int,
    kind: str = "plain",
    work_guard: int | None = None,
) -> tuple[bool, tuple | None]:
    """Exhaustive (p,q) verification.

    plain: one family; among any p members, some q share a point.
    colorful-first: q families; for any choice of p members from each,
    some colorful q-tuple (the j_i-th pick from family i) has a common
    point.
    colorful-second: p families; every colorful p-tuple has q members
    sharing a point.
    """
    if p < 1 or q < 1 or q > p:
        raise ValueError("need p ≥ q ≥ 1")
    if kind == "plain":
        if len(families) != 1:
            raise ValueError("plain kind takes exactly one family")
        family = families[0]
        if len(family) < p:
            raise ValueError(f"family has {len(family)} < p = {p} members")
        _pq_guard(comb(len(family), p) * p, work_guard)
        for idx in itertools.combinations(range(len(family)), p):
            cover, _ = max_point_cover([family[j] for j in idx])
            if cover < q:
                return False, idx
        return True, None

    if kind == "colorful-first":
        if len(families) != q:
            raise ValueError(f"colorful-first takes q = {q} families")
        if any(len(f) < p for f in families):
            raise ValueError("every family needs at least p members")
        choice_work = 1
        for f in families:
            choice_work *= comb(len(f), p)
        _pq_guard(choice_work * p**q * q, work_guard)
        for choices in itertools.product(
            *(itertools.combinations(range(len(f)), p) for f in families)
        ):
            ok = False
            for picks in itertools.product(range(p), repeat=q):
                members = [
                    families[i][choices[i][picks[i]]] for i in range(q)
                ]
                joint, _ = intersect_all(members)
                if not joint.is_empty:
                    ok = True
                    break
            if not ok:
                return False, choices
        return True, None

    if kind == "colorful-second":
        if len(families) != p:
            raise ValueError(f"colorful-second takes p = {p} families")
        if any(not f for f in families):
            raise ValueError("families must be nonempty")
        work = 1
        for f in families:
            work *= len(f)
        _pq_guard(work * p, work_guard)
        for combo in itertools.product(*(range(len(f)) for f in families)):
            members = [families[i][j] for i, j in enumerate(combo)]
            cover, _ = max_point_cover(members)
            if cover < q:
                return False, combo
        return True, None

    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# blow-ups and the piercing bound


@dataclass(frozen=True)
class BlowUpFamily:
    traces: tuple[TraceSet, ...]
    origins: tuple[int, ...]  # origin index per copy


def blow_up(family: Sequence[TraceSet], multiplicities: Sequence[int]) -> BlowUpFamily:
    if len(multiplicities) != len(family):
        raise ValueError("one multiplicity per set required")
    if any(m < 0 for m in multiplicities):
        raise ValueError("multiplicities must be nonnegative")
    traces, origins = [], []
    for j, (t, m) in enumerate(zip(family, multiplicities)):
        traces.extend([t] * m)
        origins.extend([j] * m)
    return BlowUpFamily(tuple(traces), tuple(origins))


def piercing_bound_check(family: Sequence[TraceSet]) -> tuple[bool, int, int]:
    """τ ≤ (d²−d)·ν for d ≥ 2; for d = 1 the interval identity τ = ν
    stands in, since the coefficient degenerates to zero."""
    _validate_family(family)
    d = family[0].ground.d
    tau, _ = tau_exact(family)
    nu, _ = nu_exact(family)
    if d == 1:
        return tau == nu, tau, nu
    return tau <= (d * d - d) * nu, tau, nu
