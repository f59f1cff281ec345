"""Artin primitive-root densities delta(a, b, q), exactly.

A prime p is counted when a generates F_p^x and p = b mod q.  The density
of such primes among all primes is computed symbolically as

    delta(a, b, q) = (exact rational) * A_a,

where A_a is the Euler-product constant attached to h_a (the largest m with
a an m-th power),

    A_a = prod_{p | h} (1 - 1/(p-1)) * prod_{p !| h} (1 - 1/(p(p-1))).

Two independent routes are provided:

* :func:`delta` -- Moree's closed formula (correction factor built from the
  quadratic discriminant of Q(sqrt(a)), a Kronecker character and the
  f-dagger / f-double-dagger local factors);
* :func:`delta_series` -- the inclusion-exclusion series
  sum_k mu(k) eta(a, b, k, q) over squarefree k, where eta is a Chebotarev
  density computed from field degrees alone.

They agree; the test suite asserts it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import InvalidBase, NotSquarefree, PoleAtTwo
from .ntheory import (
    factor,
    fundamental_discriminant,
    euler_phi,
    is_squarefree,
    kronecker_symbol,
    moebius,
)

Interval = tuple[float, float]


@dataclass(frozen=True)
class ArtinBase:
    """A valid primitive-root base: a not -1 and not a perfect square."""

    a: int
    h: int          # largest m with a an m-th power
    disc: int       # discriminant of Q(sqrt(a))

    @property
    def abs_disc(self) -> int:
        return abs(self.disc)


def make_base(a: int) -> ArtinBase:
    if a in (-1, 0, 1):
        raise InvalidBase(f"a = {a} admits no primitive-root density")
    if a > 0 and math.isqrt(a) ** 2 == a:
        raise InvalidBase(f"a = {a} is a perfect square")
    g = 0
    for _, e in factor(abs(a)).prime_powers:
        g = math.gcd(g, e)
    h = g
    if a < 0:
        # a negative number is an m-th power only for odd m
        while h % 2 == 0:
            h //= 2
    return ArtinBase(a, h, fundamental_discriminant(a))


@dataclass(frozen=True)
class SymbolicDensity:
    """coefficient * prod_a A_a^e(a), with the A_a kept formal."""

    coefficient: Fraction
    artin_exponents: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        exps = {a: e for a, e in self.artin_exponents.items() if e != 0}
        if self.coefficient == 0:
            exps = {}
        object.__setattr__(self, "artin_exponents", exps)
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))

    def __bool__(self) -> bool:
        return self.coefficient != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, SymbolicDensity):
            return (self.coefficient == other.coefficient
                    and self.artin_exponents == other.artin_exponents)
        if self.artin_exponents:
            return NotImplemented
        return self.coefficient == other

    def __hash__(self):
        return hash((self.coefficient, tuple(sorted(self.artin_exponents.items()))))

    def __mul__(self, other) -> "SymbolicDensity":
        if isinstance(other, SymbolicDensity):
            exps = dict(self.artin_exponents)
            for a, e in other.artin_exponents.items():
                exps[a] = exps.get(a, 0) + e
            return SymbolicDensity(self.coefficient * other.coefficient, exps)
        return SymbolicDensity(self.coefficient * Fraction(other), self.artin_exponents)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SymbolicDensity":
        if isinstance(other, SymbolicDensity):
            if other.coefficient == 0:
                raise ZeroDivisionError("division by zero SymbolicDensity")
            exps = dict(self.artin_exponents)
            for a, e in other.artin_exponents.items():
                exps[a] = exps.get(a, 0) - e
            return SymbolicDensity(self.coefficient / other.coefficient, exps)
        return SymbolicDensity(self.coefficient / Fraction(other), self.artin_exponents)

    def as_fraction(self) -> Fraction:
        """Exact value when every formal constant has cancelled."""
        if self.artin_exponents:
            raise ValueError(f"uncancelled Artin constants: {self.artin_exponents}")
        return self.coefficient

    def evaluate(self, prime_cutoff: int = 10**6) -> Interval:
        """Numeric enclosure, multiplying in each A_a at the given cutoff."""
        lo = hi = float(self.coefficient)
        if lo > hi:
            lo, hi = hi, lo
        for a, e in self.artin_exponents.items():
            alo, ahi = artin_constant(make_base(a).h, prime_cutoff)
            for _ in range(e if e > 0 else 0):
                lo, hi = _imul((lo, hi), (alo, ahi))
            for _ in range(-e if e < 0 else 0):
                lo, hi = _idiv((lo, hi), (alo, ahi))
        return lo, hi


def _imul(x: Interval, y: Interval) -> Interval:
    vals = (x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
    return min(vals), max(vals)


def _idiv(x: Interval, y: Interval) -> Interval:
    if y[0] <= 0 <= y[1]:
        raise ZeroDivisionError("interval straddles zero")
    vals = (x[0] / y[0], x[0] / y[1], x[1] / y[0], x[1] / y[1])
    return min(vals), max(vals)


_artin_constant_cache: dict[tuple[int, int], Interval] = {}


def artin_constant(h: int, prime_cutoff: int = 10**6) -> Interval:
    """Enclosure of prod_{p|h}(1 - 1/(p-1)) * prod_{p!|h}(1 - 1/(p(p-1))).

    Head over primes <= cutoff; the tail satisfies
    0 <= -log prod_{p>cutoff} <= sum_{p>cutoff} 2/(p(p-1)) <= 2/cutoff,
    so [head*(1 - 2/cutoff), head] is widened only by float slop.
    """
    if prime_cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    key = (math.prod(sorted(set(factor(h).primes()))), prime_cutoff)
    if key in _artin_constant_cache:
        return _artin_constant_cache[key]
    sieve = np.ones(prime_cutoff + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(prime_cutoff) + 1):
        if sieve[i]:
            sieve[i * i:: i] = False
    primes = np.flatnonzero(sieve).astype(np.float64)
    factors = 1.0 - 1.0 / (primes * (primes - 1.0))
    head = 1.0
    for p in factor(h).primes():
        if p <= prime_cutoff:
            head *= 1.0 - 1.0 / (p - 1)
            factors[int(np.searchsorted(primes, p))] = 1.0
        else:
            # swap the generic tail factor for the h-branch one, exactly
            head *= (1.0 - 1.0 / (p - 1)) / (1.0 - 1.0 / (p * (p - 1)))
    head *= float(np.prod(factors))
    slop = 1e-15 * len(primes) + 1e-15
    lo = head * (1.0 - 2.0 / prime_cutoff) * (1.0 - slop)
    hi = head * (1.0 + slop)
    _artin_constant_cache[key] = (lo, hi)
    return lo, hi


def f_ddagger(base: ArtinBase, m: int) -> Fraction:
    """prod_{p|m, p|h} 1/(p-2) * prod_{p|m, p!|h} 1/(p^2-p-1)."""
    if m < 1:
        raise ValueError("m must be positive")
    out = Fraction(1)
    for p in factor(m).primes():
        if base.h % p == 0:
            if p == 2:
                raise PoleAtTwo("factor 1/(p-2) undefined at p = 2")
            out *= Fraction(1, p - 2)
        else:
            out *= Fraction(1, p * p - p - 1)
    return out


def f_dagger(base: ArtinBase, q: int) -> Fraction:
    """prod_{p|h, p|q} (1-1/(p-1))^-1 * prod_{p!|h, p|q} (1-1/(p(p-1)))^-1."""
    if q < 1:
        raise ValueError("q must be positive")
    out = Fraction(1)
    for p in factor(q).primes():
        if base.h % p == 0:
            out /= 1 - Fraction(1, p - 1)
        else:
            out /= 1 - Fraction(1, p * (p - 1))
    return out


def beta_of_q(base: ArtinBase, q: int) -> int:
    """(-1)^((disc/g - 1)/2) * g when disc/g is odd (g = gcd(q, disc)), else 1."""
    if q < 1:
        raise ValueError("q must be positive")
    g = math.gcd(q, base.abs_disc)
    quot = base.disc // g
    if quot % 2 == 0:
        return 1
    return g if ((quot - 1) // 2) % 2 == 0 else -g


def cA(base: ArtinBase, b: int, q: int) -> SymbolicDensity:
    """A_a(b,q): the heuristic density before the entanglement correction."""
    if q < 1:
        raise ValueError("q must be positive")
    if math.gcd(math.gcd(b - 1, q), base.h) != 1 or math.gcd(b, q) != 1:
        return SymbolicDensity(Fraction(0))
    coeff = f_dagger(base, q) / euler_phi(q)
    for p in factor(math.gcd(b - 1, q)).primes():
        coeff *= 1 - Fraction(1, p)
    return SymbolicDensity(coeff, {base.a: 1})


def delta(base: ArtinBase, b: int, q: int) -> SymbolicDensity:
    """Moree's closed formula for delta(a, b, q), as rational * A_a."""
    lead = cA(base, b, q)
    if not lead:
        return lead
    g = math.gcd(q, base.abs_disc)
    mu = moebius(2 * base.abs_disc // g)
    if mu == 0:
        return lead
    corr = 1 + mu * kronecker_symbol(beta_of_q(base, q), b) * f_ddagger(base, base.abs_disc // g)
    return lead * corr


def eta_artin(base: ArtinBase, b: int, k: int, q: int) -> Fraction:
    """Density of primes = b mod q splitting completely in Q(mu_k, a^(1/k)).

    Nonzero iff gcd(b,q) = 1, b = 1 mod gcd(q,k), and -- when the field
    meets Q(mu_q) in a quadratic extension of Q(mu_gcd(q,k)) -- the
    Kronecker character of that quadratic field is +1 at b.  The value is
    then eps / (k' phi(lcm(q,k))) with k' = k/gcd(k, h) and eps in {1, 2}.
    """
    if k < 1 or not is_squarefree(k):
        raise NotSquarefree(f"k = {k} is not squarefree")
    if q < 1:
        raise ValueError("q must be positive")
    if math.gcd(b, q) != 1:
        return Fraction(0)
    if (b - 1) % math.gcd(q, k) != 0:
        return Fraction(0)
    L = math.lcm(q, k)
    disc_in_lcm = L % base.abs_disc == 0
    if k % 2 == 0 and k % base.abs_disc != 0 and disc_in_lcm:
        if kronecker_symbol(beta_of_q(base, q), b) != 1:
            return Fraction(0)
    eps = 2 if (k % 2 == 0 and disc_in_lcm) else 1
    k_prime = k // math.gcd(k, base.h)
    return Fraction(eps, k_prime * euler_phi(L))


def delta_series(base: ArtinBase, b: int, q: int, cutoff: int) -> tuple[float, float]:
    """Truncated series sum_{k<=cutoff} mu(k) eta_artin(a,b,k,q) and a tail bound.

    The tail |sum_{k>K} mu(k) eta| <= sum_{k>K} 2/(k phi(k)) is reported as 4/K.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if q < 1:
        raise ValueError("q must be positive")
    total = 0.0
    for k in range(1, cutoff + 1):
        mu = moebius(k)
        if mu == 0:
            continue
        val = eta_artin(base, b, k, q)
        if val:
            total += mu * float(val)
    return total, 4.0 / cutoff
