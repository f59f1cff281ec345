import math
import random
from fractions import Fraction

import pytest

from constellations.errors import Incompatible
from constellations.ntheory import (
    crt,
    euler_phi,
    factor,
    fundamental_discriminant,
    is_prime_u64,
    kronecker_symbol,
    moebius,
    radical,
    squarefree_kernel,
)


def test_factor_examples():
    assert factor(1).prime_powers == ()
    assert factor(12).prime_powers == ((2, 2), (3, 1))
    assert factor(68921).prime_powers == ((41, 3),)


def test_factor_trial_division_oracle():
    # derived oracle for 68921: plain trial division
    n, fs = 68921, []
    d = 2
    while d * d <= n:
        while n % d == 0:
            fs.append(d)
            n //= d
        d += 1
    if n > 1:
        fs.append(n)
    assert fs == [41, 41, 41]


def test_factor_roundtrip_exhaustive_small():
    for n in range(1, 20000):
        f = factor(n)
        assert f.n == n
        primes = f.primes()
        assert list(primes) == sorted(primes)
        assert all(is_prime_u64(p) for p in primes)


def test_factor_roundtrip_random_large():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(1, 10**12)
        assert factor(n).n == n
    # exercise the rho path with semiprimes of equal-size factors
    for _ in range(20):
        p = q = 0
        while not is_prime_u64(p):
            p = rng.randrange(10**7, 10**8)
        while not is_prime_u64(q):
            q = rng.randrange(10**7, 10**8)
        assert factor(p * q).n == p * q


def test_arithmetic_functions():
    assert euler_phi(1) == 1
    assert moebius(10) == 1
    assert moebius(16) == 0
    assert radical(360) == 30
    assert squarefree_kernel(-12) == -3
    assert fundamental_discriminant(2) == 8
    assert fundamental_discriminant(5) == 5
    assert fundamental_discriminant(-1) == -4


def test_phi_divisor_sum():
    # sum_{d|n} phi(d) = n for n <= 10^4
    limit = 10**4
    acc = [0] * (limit + 1)
    for d in range(1, limit + 1):
        pd = euler_phi(d)
        for m in range(d, limit + 1, d):
            acc[m] += pd
    assert acc[1:] == list(range(1, limit + 1))


def test_phi_multiplicative():
    rng = random.Random(11)
    for _ in range(200):
        a = rng.randrange(1, 5000)
        b = rng.randrange(1, 5000)
        if math.gcd(a, b) == 1:
            assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)


def test_kronecker_examples():
    assert kronecker_symbol(5, 2) == -1
    assert kronecker_symbol(8, 3) == -1
    for D in range(-20, 21):
        assert kronecker_symbol(D, 1) == 1


def test_kronecker_degenerate_conventions():
    assert kronecker_symbol(1, 0) == 1
    assert kronecker_symbol(-1, 0) == 1
    assert kronecker_symbol(5, 0) == 0
    assert kronecker_symbol(0, 1) == 1
    assert kronecker_symbol(0, -1) == 1
    assert kronecker_symbol(0, 7) == 0
    assert kronecker_symbol(-3, -1) == -1
    assert kronecker_symbol(3, -1) == 1


def test_kronecker_agrees_with_legendre():
    # Euler criterion oracle for odd prime n, gcd(D, n) = 1
    primes = [p for p in range(3, 1000) if is_prime_u64(p)]
    for D in range(-50, 51):
        for p in primes:
            if D % p == 0:
                continue
            legendre = pow(D, (p - 1) // 2, p)
            legendre = 1 if legendre == 1 else -1
            assert kronecker_symbol(D, p) == legendre, (D, p)


def test_kronecker_periodicity():
    for D in [d for d in range(-48, 49) if d != 0 and d % 4 in (0, 1)]:
        for n in range(-60, 60):
            assert kronecker_symbol(D, n) == kronecker_symbol(D, n + abs(D)), (D, n)


def test_kronecker_multiplicative():
    rng = random.Random(3)
    for _ in range(400):
        D = rng.randrange(-60, 60)
        m = rng.randrange(-60, 60)
        n = rng.randrange(-60, 60)
        assert kronecker_symbol(D, m * n) == kronecker_symbol(D, m) * kronecker_symbol(D, n)


def test_crt():
    assert crt([(1, 2), (2, 3)]) == (5, 6)
    assert crt([(1, 3), (1, 2)]) == (1, 6)
    with pytest.raises(Incompatible):
        crt([(0, 4), (1, 2)])
    r, m = crt([(3, 7), (4, 9), (5, 11)])
    assert m == 693 and r % 7 == 3 and r % 9 == 4 and r % 11 == 5


def test_crt_random_consistency():
    rng = random.Random(5)
    for _ in range(200):
        mods = [rng.randrange(1, 40) for _ in range(4)]
        x = rng.randrange(0, 10**6)
        r, m = crt([(x % mi, mi) for mi in mods])
        assert m == math.lcm(*mods)
        assert r == x % m


def test_fraction_is_normalized():
    # the package's Rational is fractions.Fraction: lowest terms, positive denominator
    v = Fraction(6, -4)
    assert v.numerator == -3 and v.denominator == 2
