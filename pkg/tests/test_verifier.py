import math
from fractions import Fraction

import pytest

from constellations.affine import AP3, INTRO4, AffineSystem, three_primes_system
from constellations.artin import make_base
from constellations.chebotarev import quadratic_spec, trivial_spec
from constellations.errors import NotRefinable, Overflow, RegionUnbounded, ValidationError
from constellations.primes import IntPolynomial, sieve
from constellations.singular_series import artin_series
from constellations.verifier import (
    Region,
    chebotarev_progression_check,
    congruence,
    count_constellations,
    poly_split,
    predicted_main_term,
    primitive_root,
    quadratic_split,
    unrestricted,
    volume,
)

SINGLE = AffineSystem((0,), ((1,),))


def test_region_validation():
    with pytest.raises(RegionUnbounded):
        Region(())
    with pytest.raises(ValidationError):
        Region.box((5, 3))
    region = Region.box((1, 10), (2, 20))
    assert region.kind == "box" and region.s == 2
    poly = Region(((0, 1), (0, 1)), (((-1, 1), 0),))  # x2 <= x1
    assert poly.kind == "halfspace_polytope"


def test_intro_witness_and_obstruction():
    rep = count_constellations(INTRO4, [primitive_root(7)] * 4, Region.box((1, 200), (1, 200)))
    assert (41, 67) in rep.witnesses
    assert rep.solution_count >= 1
    rep5 = count_constellations(INTRO4, [primitive_root(5)] * 4,
                                Region.box((1, 10**4), (1, 10**4)))
    assert rep5.solution_count == 0
    assert rep5.witnesses == ()


def test_theta_exact_equality():
    rep = count_constellations(SINGLE, [unrestricted()], Region.box((1, 1000)))
    direct = math.fsum(math.log(int(p)) for p in sieve(0, 1001).members())
    assert rep.weighted_sum == direct
    assert rep.solution_count == sieve(0, 1001).count()


def test_strategies_agree():
    region = Region.box((1, 300), (1, 300))
    for preds in ([unrestricted()] * 3, [primitive_root(2)] * 3):
        a = count_constellations(AP3, preds, region, strategy="lattice", max_witnesses=10**6)
        b = count_constellations(AP3, preds, region, strategy="prime_table", max_witnesses=10**6)
        assert a.solution_count == b.solution_count
        assert set(a.witnesses) == set(b.witnesses)
        assert a.weighted_sum == b.weighted_sum  # fsum: order independent


def test_count_respects_halfspaces():
    region = Region(((1, 50), (1, 50)), (((1, 1), 40),))  # n1 + n2 <= 40
    rep = count_constellations(AP3, [unrestricted()] * 3, region, max_witnesses=10**6)
    full = count_constellations(AP3, [unrestricted()] * 3, Region.box((1, 50), (1, 50)),
                                max_witnesses=10**6)
    assert rep.solution_count < full.solution_count
    assert all(w[0] + w[1] <= 40 for w in rep.witnesses)
    expected = [w for w in full.witnesses if w[0] + w[1] <= 40]
    assert list(rep.witnesses) == expected


def test_congruence_and_quadratic_predicates():
    rep = count_constellations(SINGLE, [congruence(1, 4)], Region.box((1, 100)))
    direct = [p for p in (int(x) for x in sieve(0, 101).members()) if p % 4 == 1]
    assert rep.solution_count == len(direct)
    split = count_constellations(SINGLE, [quadratic_split(-1, True)], Region.box((1, 100)))
    assert split.solution_count == len(direct)  # p splits in Q(i) iff p = 1 mod 4
    inert = count_constellations(SINGLE, [quadratic_split(-1, False)], Region.box((1, 100)))
    assert inert.solution_count == len([p for p in (int(x) for x in sieve(0, 101).members())
                                        if p % 4 == 3])


def test_poly_split_predicate():
    f = IntPolynomial((1, 0, 1))  # splits iff p = 1 mod 4; p = 2 ramified -> excluded
    rep = count_constellations(SINGLE, [poly_split(f)], Region.box((1, 200)))
    direct = [p for p in (int(x) for x in sieve(0, 201).members()) if p % 4 == 1]
    assert rep.solution_count == len(direct)


def test_overflow_guard():
    with pytest.raises(Overflow):
        count_constellations(SINGLE, [unrestricted()], Region.box((1, 2 * 10**9)))


def test_volume_box_cases():
    lo, hi = volume(Region.box((1, 100), (1, 100)), AP3)
    assert lo == hi == 99 * 99
    lo, hi = volume(Region.box((-100, -10), (0, 1)), SINGLE)
    assert lo == hi == 0.0
    # halfspace x1 > x2 on the unit box cuts it in half
    region = Region(((0, 1), (0, 1)), (((-1, 1), 0),))
    positive = AffineSystem((10, 10), ((1, 0), (0, 1)))
    lo, hi = volume(region, positive, seed=5)
    assert lo <= 0.5 <= hi
    assert hi - lo < 0.05


def test_predicted_main_term_three_primes_simplex():
    N = 101
    system = three_primes_system(N)
    bases = [make_base(2)] * 3
    series = artin_series(bases, system, euler_cutoff=3000).with_numeric()
    region = Region(((0, N), (0, N)), (((1, 1), N),))
    lo, hi = predicted_main_term(system, region, series, N)
    mid_series = sum(series.numeric) / 2
    target = N * N / 2 * mid_series
    assert lo <= target <= hi
    assert (hi - lo) / target < 0.1
    empty = Region.box((-5, -1), (-5, -1))
    assert predicted_main_term(system, empty, series, N) == (0.0, 0.0)


def test_report_ratio_fields():
    bases = [make_base(2)] * 3
    series = artin_series(bases, AP3, euler_cutoff=3000).with_numeric()
    rep = count_constellations(AP3, [primitive_root(2)] * 3,
                               Region.box((1, 3000), (1, 3000)), N=3000, series=series)
    assert rep.predicted is not None
    assert rep.ratio == rep.weighted_sum / (sum(rep.predicted) / 2)
    assert 0.5 < rep.ratio < 1.6  # loose smoke at small N


def test_chebotarev_progression_check():
    split = quadratic_spec(-1, split=True)
    rep = chebotarev_progression_check(split, 1, 4, 10**5)
    assert abs(rep.ratio - 1) < 0.05
    triv = chebotarev_progression_check(trivial_spec(), 1, 3, 10**5)
    assert abs(triv.ratio - 1) < 0.05
    degenerate = chebotarev_progression_check(split, 2, 4, 10**4)
    assert degenerate.weighted_sum == 0.0 and degenerate.predicted == 0.0
    with pytest.raises(NotRefinable):
        chebotarev_progression_check(split, 1, 6, 100)
