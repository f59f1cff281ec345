"""Elementary number-theoretic primitives shared by all other modules.

Everything here is exact integer/rational arithmetic:

    factor(n)            exact factorization for 1 <= n < 2^63
    euler_phi, moebius, radical, squarefree_kernel
    kronecker_symbol(D, n)   full Kronecker extension
    crt([(r1,m1), ...])  simultaneous congruences

Rationals are ``fractions.Fraction`` throughout the package (lowest terms
and positive denominator are guaranteed by the stdlib type).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import Incompatible

Rational = Fraction

_TRIAL_BOUND = 10**5

# Deterministic Miller-Rabin bases, proven for all n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime_u64(n: int) -> bool:
    """Deterministic Miller-Rabin for 0 <= n < 2^63."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    """One nontrivial factor of composite odd n (Brent's cycle variant)."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition, primes strictly increasing."""

    prime_powers: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        out = 1
        for p, e in self.prime_powers:
            out *= p**e
        return out

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.prime_powers)


def factor(n: int) -> Factorization:
    """Exact factorization of 1 <= n < 2^63.

    Trial division below 10^5, then Miller-Rabin plus Pollard rho for the
    cofactor.  factor(1) is the empty product.
    """
    if n < 1 or n >= 2**63:
        raise ValueError(f"factor() requires 1 <= n < 2^63, got {n}")
    found: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    # 2,3,5-wheel trial division
    d = 7
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d <= _TRIAL_BOUND and d * d <= n:
        while n % d == 0:
            found[d] = found.get(d, 0) + 1
            n //= d
        d += increments[i]
        i = (i + 1) % 8
    if n > 1:
        if d * d > n:
            found[n] = found.get(n, 0) + 1
        else:
            rng = random.Random(n)
            stack = [n]
            while stack:
                m = stack.pop()
                if is_prime_u64(m):
                    found[m] = found.get(m, 0) + 1
                    continue
                g = _pollard_rho(m, rng)
                stack.append(g)
                stack.append(m // g)
    return Factorization(tuple(sorted(found.items())))


def euler_phi(n: int) -> int:
    out = n
    for p in factor(n).primes():
        out -= out // p
    return out


def moebius(n: int) -> int:
    f = factor(n)
    if any(e > 1 for _, e in f.prime_powers):
        return 0
    return -1 if len(f.prime_powers) % 2 else 1


def radical(n: int) -> int:
    out = 1
    for p in factor(n).primes():
        out *= p
    return out


def is_squarefree(n: int) -> bool:
    return moebius(n) != 0


def squarefree_kernel(a: int) -> int:
    """Signed squarefree part: a = kernel * square, |kernel| squarefree."""
    if a == 0:
        raise ValueError("0 has no squarefree kernel")
    k = -1 if a < 0 else 1
    for p, e in factor(abs(a)).prime_powers:
        if e % 2:
            k *= p
    return k


def _kronecker_two(a: int) -> int:
    # (a/2): 0 for even a, +1 for a = +-1 mod 8, -1 for a = +-3 mod 8
    if a % 2 == 0:
        return 0
    return 1 if a % 8 in (1, 7) else -1


def kronecker_symbol(D: int, n: int) -> int:
    """Kronecker symbol (D/n), fully extended.

    Conventions at degenerate arguments: (D/0) = 1 iff D = +-1 else 0,
    (D/-1) = -1 iff D < 0, (0/n) = 1 iff n = +-1 else 0.
    """
    if n == 0:
        return 1 if D in (1, -1) else 0
    res = 1
    if n < 0:
        n = -n
        if D < 0:
            res = -1
    while n % 2 == 0:
        t = _kronecker_two(D)
        if t == 0:
            return 0
        res *= t
        n //= 2
    # n odd positive: Jacobi symbol by reciprocity
    a = D % n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


def crt(residues: Iterable[tuple[int, int]]) -> tuple[int, int]:
    """Solve r = r_i mod m_i simultaneously; returns (r, lcm) with 0 <= r < lcm.

    Raises Incompatible when the congruences conflict.
    """
    r, m = 0, 1
    for r_i, m_i in residues:
        if m_i < 1:
            raise ValueError(f"modulus must be >= 1, got {m_i}")
        g = math.gcd(m, m_i)
        if (r_i - r) % g != 0:
            raise Incompatible(f"no solution: x = {r} mod {m} and x = {r_i} mod {m_i}")
        lcm = m // g * m_i
        # r + m*k = r_i mod m_i  =>  k = (r_i - r)/g * inv(m/g) mod m_i/g
        k = (r_i - r) // g * pow(m // g, -1, m_i // g) % (m_i // g) if m_i != g else 0
        r = (r + m * k) % lcm
        m = lcm
    return r, m


def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt(d)) for non-square d: k if k = 1 mod 4 else 4k,
    where k is the squarefree kernel of d."""
    k = squarefree_kernel(d)
    return k if k % 4 == 1 else 4 * k


def prime_divisors_of_gcd(a: int, b: int) -> tuple[int, ...]:
    """Primes dividing both a and b; gcd(0, b) = b, so a = 0 yields primes of b."""
    g = math.gcd(a, b)
    if g == 0:
        return ()
    return factor(g).primes()


def product(values: Sequence[Fraction]) -> Fraction:
    out = Fraction(1)
    for v in values:
        out *= v
    return out
