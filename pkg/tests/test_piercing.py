"""Transversal/matching numbers, the exact LP, (p,q) checks, blow-ups."""

import itertools
import random
from fractions import Fraction

import pytest

from dintervals import (
    DInterval,
    GuardExceededError,
    Point,
    PointSet,
    PreconditionError,
    TraceSet,
    blow_up,
    candidate_points,
    fractional_lp,
    gen_helly_lower_bound,
    intersect_all,
    max_point_cover,
    nu_exact,
    pierce_all,
    piercing_bound_check,
    pq_check,
    tau_exact,
    trace_of,
)
from dintervals.lp import simplex_maximize
from helpers import p6, random_ground, random_trace


def line(*coords) -> PointSet:
    return PointSet(1, (tuple(Fraction(c) for c in coords),))


def window(ground: PointSet, pairs: dict[int, tuple]) -> TraceSet:
    return trace_of(DInterval.from_pairs(ground.d, pairs), ground)


def triangle_triple():
    """Three pairwise-intersecting two-level sets with empty joint
    intersection: tau 2, nu 1, fractional value 3/2."""
    P = PointSet(
        2,
        (
            tuple(Fraction(c) for c in (0, 1, 2, 4, 5)),
            tuple(Fraction(c) for c in (0, 1, 2, 3)),
        ),
    )
    a = window(P, {1: (0, 1), 2: (0, 1)})
    b = window(P, {1: (1, 2), 2: (2, 3)})
    c = window(P, {1: (4, 5), 2: (1, 2)})
    return P, [a, b, c]


def tau_oracle(family) -> int:
    pts = candidate_points(family)
    for r in range(1, len(pts) + 1):
        for S in itertools.combinations(pts, r):
            if all(any(p in t for p in S) for t in family):
                return r
    raise AssertionError("unpierceable family")


def nu_oracle(family) -> int:
    best = 0
    for r in range(1, len(family) + 1):
        for idx in itertools.combinations(range(len(family)), r):
            if all(
                intersect_all([family[i], family[j]])[0].is_empty
                for i, j in itertools.combinations(idx, 2)
            ):
                best = r
    return best


# ----------------------------------------------------------------- simplex


def test_simplex_on_a_textbook_problem():
    # max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
    c = [Fraction(3), Fraction(5)]
    A = [
        [Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(2)],
        [Fraction(3), Fraction(2)],
    ]
    b = [Fraction(4), Fraction(12), Fraction(18)]
    got = simplex_maximize(c, A, b)
    assert got.value == 36
    assert got.primal == (Fraction(2), Fraction(6))
    assert sum(x * y for x, y in zip(got.dual, b)) == 36


def test_simplex_fractional_vertex():
    # pairwise constraints force the half-weight vertex
    one = Fraction(1)
    c = [one, one, one]
    A = [[one, one, Fraction(0)], [one, Fraction(0), one], [Fraction(0), one, one]]
    b = [one, one, one]
    got = simplex_maximize(c, A, b)
    assert got.value == Fraction(3, 2)
    assert got.primal == (Fraction(1, 2),) * 3


def test_simplex_rejects_bad_shapes():
    with pytest.raises(ValueError):
        simplex_maximize([Fraction(1)], [[Fraction(1), Fraction(1)]], [Fraction(1)])
    with pytest.raises(ValueError):
        simplex_maximize([Fraction(1)], [[Fraction(1)]], [Fraction(-1)])


def test_simplex_detects_unbounded_problems():
    with pytest.raises(ValueError):
        simplex_maximize([Fraction(1)], [[Fraction(-1)]], [Fraction(1)])


# ------------------------------------------------------------- exact numbers


def test_tau_of_the_triangle_triple_is_two():
    P, fam = triangle_triple()
    tau, pts = tau_exact(fam)
    assert tau == 2
    for t in fam:
        assert any(p in t for p in pts)


def test_tau_one_with_a_common_point():
    P = line(0, 1, 2)
    fam = [window(P, {1: (0, 2)}), window(P, {1: (1, 2)})]
    assert tau_exact(fam)[0] == 1


def test_tau_counts_pairwise_disjoint_sets():
    P = line(0, 1, 2, 3, 4, 5)
    fam = [window(P, {1: (2 * i, 2 * i)}) for i in range(3)]
    assert tau_exact(fam)[0] == 3


def test_tau_guard_and_empty_preconditions():
    P = line(0, 1)
    t = window(P, {1: (0, 1)})
    with pytest.raises(GuardExceededError):
        tau_exact([t] * 31)
    with pytest.raises(PreconditionError):
        tau_exact([t, TraceSet.empty(P)])
    with pytest.raises(PreconditionError):
        tau_exact([])


def test_nu_of_the_triangle_triple_is_one():
    _, fam = triangle_triple()
    assert nu_exact(fam)[0] == 1


def test_nu_of_disjoint_sets_is_their_count():
    P = line(0, 1, 2, 3, 4, 5)
    fam = [window(P, {1: (2 * i, 2 * i)}) for i in range(3)]
    nu, sub = nu_exact(fam)
    assert nu == 3 and sub == (0, 1, 2)


def test_nu_with_a_bridging_interval():
    P = line(0, 1, 2, 3)
    fam = [window(P, {1: (0, 1)}), window(P, {1: (2, 3)}), window(P, {1: (1, 2)})]
    nu, sub = nu_exact(fam)
    assert nu == 2 and sub == (0, 1)


# -------------------------------------------------------------- LP sandwich


def test_lp_value_of_the_triangle_triple():
    _, fam = triangle_triple()
    got = fractional_lp(fam)
    assert got.value == Fraction(3, 2)
    assert got.matching_weights == (Fraction(1, 2),) * 3
    assert got.certified


def test_lp_value_one_with_a_common_point():
    P = line(0, 1, 2)
    fam = [window(P, {1: (0, 2)}), window(P, {1: (0, 1)})]
    assert fractional_lp(fam).value == 1


def test_lp_value_counts_disjoint_sets():
    P = line(0, 1, 2, 3)
    fam = [window(P, {1: (0, 1)}), window(P, {1: (2, 3)})]
    assert fractional_lp(fam).value == 2


def test_pierce_all_reproduces_the_triple_exactly():
    _, fam = triangle_triple()
    got = pierce_all(fam)
    assert got.tau == 2
    assert got.nu == 1
    assert got.tau_star == got.nu_star == Fraction(3, 2)
    assert got.lp.certified


def test_sandwich_and_oracles_on_random_families():
    rng = random.Random(401)
    solved = 0
    while solved < 60:
        d = rng.randrange(1, 3)
        ground = random_ground(rng, d, max_per_level=4)
        fam = [random_trace(rng, ground, empty_bias=0.0) for _ in range(rng.randrange(2, 6))]
        fam = [t for t in fam if not t.is_empty]
        if len(fam) < 2:
            continue
        got = pierce_all(fam)
        assert got.nu <= got.nu_star == got.tau_star <= got.tau
        assert got.tau == tau_oracle(fam)
        assert got.nu == nu_oracle(fam)
        solved += 1


# ------------------------------------------------------------------- (p, q)


def test_pairwise_intersecting_family_has_p2_property():
    _, fam = triangle_triple()
    assert pq_check([fam], p=2, q=2) == (True, None)
    assert pq_check([fam], p=3, q=2) == (True, None)


def test_lower_bound_family_has_the_4_3_property():
    fam = gen_helly_lower_bound(p6())
    ok, _ = pq_check([fam], p=4, q=3)
    assert ok
    ok, counterexample = pq_check([fam], p=4, q=4)
    assert not ok and counterexample == (0, 1, 2, 3)


def test_colorful_second_with_p_equal_q_is_the_colorful_property():
    P = line(0, 1, 2, 3)
    f1 = [window(P, {1: (0, 2)})]
    f2 = [window(P, {1: (1, 3)})]
    assert pq_check([f1, f2], p=2, q=2, kind="colorful-second") == (True, None)
    f3 = [window(P, {1: (0, 0)})]
    f4 = [window(P, {1: (3, 3)})]
    ok, combo = pq_check([f3, f4], p=2, q=2, kind="colorful-second")
    assert not ok and combo == (0, 0)


def test_colorful_first_checks_cross_family_picks():
    P = line(0, 1, 2)
    shared = [window(P, {1: (0, 2)}), window(P, {1: (1, 2)})]
    assert pq_check([shared, shared], p=2, q=2, kind="colorful-first") == (True, None)
    Q = line(0, 1, 3, 4)
    low = [window(Q, {1: (0, 0)}), window(Q, {1: (1, 1)})]
    high = [window(Q, {1: (3, 3)}), window(Q, {1: (4, 4)})]
    ok, choices = pq_check([low, high], p=2, q=2, kind="colorful-first")
    assert not ok and choices == ((0, 1), (0, 1))


def test_pq_check_arity_errors():
    P = line(0, 1)
    f = [window(P, {1: (0, 1)})]
    with pytest.raises(ValueError):
        pq_check([f, f], p=1, q=1, kind="plain")
    with pytest.raises(ValueError):
        pq_check([f], p=1, q=2)
    with pytest.raises(ValueError):
        pq_check([f], p=1, q=1, kind="no-such-kind")


# ----------------------------------------------------------------- blow-ups


def test_blow_up_repeats_sets_with_origin_tags():
    P = line(0, 1, 2, 3)
    a = window(P, {1: (0, 1)})
    b = window(P, {1: (2, 3)})
    got = blow_up([a, b], [2, 1])
    assert got.traces == (a, a, b)
    assert got.origins == (0, 0, 1)


def test_blow_up_multiplicity_zero_drops_a_set():
    P = line(0, 1)
    a = window(P, {1: (0, 0)})
    b = window(P, {1: (1, 1)})
    got = blow_up([a, b], [0, 2])
    assert got.traces == (b, b)


def test_blow_up_with_ones_keeps_the_lp_value():
    _, fam = triangle_triple()
    blown = blow_up(fam, [1, 1, 1])
    assert fractional_lp(list(blown.traces)).value == fractional_lp(fam).value


def test_blow_up_rejects_bad_multiplicities():
    P = line(0, 1)
    a = window(P, {1: (0, 1)})
    with pytest.raises(ValueError):
        blow_up([a], [1, 2])
    with pytest.raises(ValueError):
        blow_up([a], [-1])


def test_blow_up_cover_beats_the_fractional_ratio():
    # an intersecting subfamily of the blow-up of size >= total / nu*
    rng = random.Random(402)
    done = 0
    while done < 40:
        d = rng.randrange(1, 3)
        ground = random_ground(rng, d, max_per_level=4)
        fam = [random_trace(rng, ground, empty_bias=0.0) for _ in range(rng.randrange(2, 5))]
        fam = [t for t in fam if not t.is_empty]
        if len(fam) < 2:
            continue
        mult = [rng.randrange(0, 4) for _ in fam]
        total = sum(mult)
        if total == 0:
            continue
        blown = blow_up(fam, mult)
        cover, _ = max_point_cover(list(blown.traces))
        nu_star = fractional_lp(fam).value
        assert cover * nu_star >= total
        done += 1


# ------------------------------------------------------------ piercing bound


def test_bound_is_tight_on_the_triangle_triple():
    _, fam = triangle_triple()
    ok, tau, nu = piercing_bound_check(fam)
    assert ok and tau == 2 and nu == 1
    assert tau == (2 * 2 - 2) * nu


def test_bound_with_a_common_point_two_levels():
    P = PointSet(2, ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(1))))
    fam = [window(P, {1: (0, 1)}), window(P, {1: (0, 0)})]
    ok, tau, nu = piercing_bound_check(fam)
    assert ok and tau == 1 and nu == 1


def test_bound_on_a_line_is_the_interval_identity():
    P = line(0, 1, 2, 3)
    fam = [window(P, {1: (0, 1)}), window(P, {1: (2, 3)})]
    ok, tau, nu = piercing_bound_check(fam)
    assert ok and tau == nu == 2


def test_bound_never_fails_on_random_two_level_families():
    rng = random.Random(403)
    done = 0
    while done < 50:
        ground = random_ground(rng, 2, max_per_level=4)
        fam = [random_trace(rng, ground, empty_bias=0.0) for _ in range(rng.randrange(2, 6))]
        fam = [t for t in fam if not t.is_empty]
        if len(fam) < 2:
            continue
        ok, _, _ = piercing_bound_check(fam)
        assert ok
        done += 1
