import math
import random
from fractions import Fraction

import pytest

from constellations.artin import (
    ArtinBase,
    SymbolicDensity,
    artin_constant,
    beta_of_q,
    cA,
    delta,
    delta_series,
    eta_artin,
    f_dagger,
    f_ddagger,
    make_base,
)
from constellations.errors import InvalidBase, NotSquarefree, PoleAtTwo
from constellations.ntheory import euler_phi, is_squarefree

A = Fraction  # brevity for coefficients


def test_make_base():
    b2 = make_base(2)
    assert (b2.h, b2.disc, b2.abs_disc) == (1, 8, 8)
    b5 = make_base(5)
    assert (b5.h, b5.disc) == (1, 5)
    assert make_base(8).h == 3
    assert make_base(-8).h == 3
    assert make_base(-16).h == 1  # negative numbers are only odd powers
    assert make_base(-2).disc == -8
    assert make_base(-3).disc == -3
    assert make_base(27).h == 3 and make_base(27).disc == 12
    for bad in (-1, 0, 1, 4, 9, 10**8):
        with pytest.raises(InvalidBase):
            make_base(bad)


def test_artin_constant():
    lo, hi = artin_constant(1, 10**7)
    artin = 0.3739558136192023  # as printed to the shown digits
    assert lo <= artin <= hi
    assert hi - lo < 1e-5
    assert abs((lo + hi) / 2 - artin) < 1e-6
    assert artin_constant(2, 10**4) == (0.0, 0.0)
    # heads agree when h has no prime under the cutoff
    big_prime = 10**6 + 3
    assert artin_constant(1, 1000)[0] != 0
    h_lo, h_hi = artin_constant(big_prime, 1000)
    g_lo, g_hi = artin_constant(1, 1000)
    assert abs(h_lo - g_lo) / g_lo < 1e-5  # differs only by the exact p>cutoff swap


def test_f_ddagger():
    b2 = make_base(2)
    b5 = make_base(5)
    assert f_ddagger(b2, 1) == 1
    assert f_ddagger(b2, 8) == 1
    assert f_ddagger(b5, 5) == A(1, 19)
    assert f_ddagger(make_base(27), 3) == 1  # p=3 divides h: 1/(3-2)
    with pytest.raises(PoleAtTwo):
        f_ddagger(ArtinBase(4, 2, 8), 2)  # synthetic even-h base


def test_f_dagger():
    b2 = make_base(2)
    assert f_dagger(b2, 1) == 1
    assert f_dagger(b2, 2) == 2
    assert f_dagger(b2, 3) == A(6, 5)
    assert f_dagger(make_base(27), 3) == 2  # (1 - 1/2)^-1 at p = 3 | h


def test_beta_of_q():
    assert beta_of_q(make_base(5), 5) == 5
    assert beta_of_q(make_base(2), 3) == 1
    # disc | q collapses to the sign rule at quotient 1
    for a in (2, 3, 5, 6, 7, 10, -2, -3, -5):
        base = make_base(a)
        for mult in (1, 2, 3):
            assert beta_of_q(base, base.abs_disc * mult) == base.disc


def test_cA():
    b2 = make_base(2)
    assert cA(b2, 0, 1) == SymbolicDensity(A(1), {2: 1})
    assert cA(b2, 2, 2) == 0
    assert cA(b2, 1, 3) == SymbolicDensity(A(2, 5), {2: 1})


def test_delta_examples():
    assert delta(make_base(2), 0, 1) == SymbolicDensity(A(1), {2: 1})
    assert delta(make_base(5), 0, 1) == SymbolicDensity(A(20, 19), {5: 1})
    assert delta(make_base(2), 4, 6) == 0
    # even discriminant (28): mu(56) = 0, no correction term
    assert delta(make_base(7), 0, 1) == SymbolicDensity(A(1), {7: 1})
    # odd discriminant (13): mu(26) = 1, f_ddagger(13) = 1/155
    assert delta(make_base(13), 0, 1) == SymbolicDensity(A(156, 155), {13: 1})


def test_delta_depends_on_residue_only():
    rng = random.Random(2)
    for _ in range(200):
        a = rng.choice([2, 3, 5, 6, 7, 10, -2, -5])
        base = make_base(a)
        q = rng.randrange(1, 40)
        b = rng.randrange(-200, 200)
        assert delta(base, b, q) == delta(base, b % q, q)


def test_delta_phi_bound():
    # delta(a,b,q) <= 1/phi(q), using the upper end of the A_a enclosure
    for a in (2, 3, 5, 6, 7, 10, 11, 13):
        base = make_base(a)
        _, a_hi = artin_constant(base.h, 10**4)
        for q in range(1, 61):
            bound = Fraction(1, euler_phi(q))
            for b in range(q):
                value = delta(base, b, q)
                assert value.coefficient >= 0
                assert float(value.coefficient) * a_hi <= float(bound) + 1e-12, (a, b, q)


def test_delta_mass_identity():
    # residue classes partition the primes: sum_b delta(a,b,q) = delta(a,0,1)
    for a in (2, 3, 5, 6, 7, 10, -2, -6):
        base = make_base(a)
        for q in (2, 3, 8, 12, 24, 40):
            total = SymbolicDensity(Fraction(0))
            for b in range(q):
                total = SymbolicDensity(
                    total.coefficient + delta(base, b, q).coefficient, {a: 1})
            assert total == delta(base, 0, 1), (a, q)


def test_delta_almost_multiplicativity():
    # delta(a,0,1) delta(a,b,q1 q2) = delta(a,b,q1) delta(a,b,q2)
    # whenever |disc| divides q1 and gcd(q1, q2) = 1
    for a in (2, 3, 5, 6):
        base = make_base(a)
        d = base.abs_disc
        for q1 in (d, 2 * d, 3 * d):
            for q2 in range(2, 31):
                if math.gcd(q1, q2) != 1:
                    continue
                for b in range(q1 * q2):
                    lhs = delta(base, 0, 1) * delta(base, b, q1 * q2)
                    rhs = delta(base, b, q1) * delta(base, b, q2)
                    assert lhs == rhs, (a, b, q1, q2)


def test_eta_artin_examples():
    b2 = make_base(2)
    b5 = make_base(5)
    for q in (1, 2, 5, 12):
        for b in range(q):
            expect = Fraction(int(math.gcd(b, q) == 1), euler_phi(q))
            assert eta_artin(b2, b, 1, q) == expect
    assert eta_artin(b2, 1, 2, 1) == A(1, 2)
    assert eta_artin(b5, 2, 2, 5) == 0
    with pytest.raises(NotSquarefree):
        eta_artin(b2, 1, 4, 3)


def test_delta_series_examples():
    b2 = make_base(2)
    val, tail = delta_series(b2, 0, 1, 1)
    assert val == 1.0 and tail == 4.0
    assert delta_series(b2, 4, 6, 200)[0] == 0.0
    # K = 1 reduces to the gcd indicator over phi(q)
    for q in (3, 8):
        for b in range(q):
            val, _ = delta_series(b2, b, q, 1)
            assert val == float(Fraction(int(math.gcd(b, q) == 1), euler_phi(q)))


def test_delta_series_matches_closed_formula():
    rng = random.Random(13)
    lo, hi = artin_constant(1, 10**6)
    mid = (lo + hi) / 2
    cases = 0
    while cases < 20:
        a = rng.choice([2, 3, 5, 6, 7, 10, 11, 13])
        q = rng.randrange(1, 25)
        b = rng.randrange(0, q)
        series, tail = delta_series(make_base(a), b, q, 10**4)
        closed = float(delta(make_base(a), b, q).coefficient) * mid
        assert abs(series - closed) < 1e-3, (a, b, q)
        cases += 1


def test_delta_series_negative_bases():
    # formulas applied literally for a < 0 agree with the independent series
    for a in (-2, -3, -5, -6, -10):
        base = make_base(a)
        lo, hi = artin_constant(base.h, 10**6)
        mid = (lo + hi) / 2
        for q in (1, 3, 4, 8):
            for b in range(q):
                series, _ = delta_series(base, b, q, 4000)
                closed = float(delta(base, b, q).coefficient) * mid
                assert abs(series - closed) < 2e-3, (a, b, q)


def test_symbolic_density_algebra():
    x = SymbolicDensity(A(2, 3), {2: 1})
    y = SymbolicDensity(A(3, 5), {2: 1, 5: 2})
    assert (x * y).coefficient == A(2, 5)
    assert (x * y).artin_exponents == {2: 2, 5: 2}
    assert (x / x) == SymbolicDensity(A(1))
    assert (x / x).as_fraction() == 1
    with pytest.raises(ValueError):
        x.as_fraction()
    assert SymbolicDensity(A(0), {2: 5}).artin_exponents == {}
    lo, hi = x.evaluate(10**4)
    assert lo <= (2 / 3) * 0.3739558 <= hi
