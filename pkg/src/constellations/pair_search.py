"""Pairs (s, t) making |t|, |s| and |(n-1)^(n-1) t - n^n s| simultaneously prime,
with the third prime splitting completely in the splitting field of

    f_k = X^(k-1) + 2 X^(k-2) + ... + (k-1) X + k,   k = n - 1.

This is the computational content behind producing locally cyclic
S_n-extensions with prescribed symbols: build f_{n-1}, bound the conductor
of the abelian part of its splitting field, solve the local congruences,
and search for witness pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import NoSolution, RangeTooLarge, ValidationError
from .ntheory import fundamental_discriminant, squarefree_kernel
from .primes import IntPolynomial, is_prime, poly_discriminant, sieve, splits_completely
from .errors import Ramified


def build_f_k(k: int) -> IntPolynomial:
    """X^(k-1) + 2 X^(k-2) + ... + k; k = 1 gives the constant 1."""
    if k < 1:
        raise ValidationError("k must be positive")
    return IntPolynomial(tuple(range(k, 0, -1)))


@dataclass(frozen=True)
class ConductorCandidate:
    value: int
    flags: tuple[str, ...]


def conductor_candidate(n: int) -> ConductorCandidate:
    """Quadratic-resolvent bound for the conductor of the abelian part of F_{n-1}.

    Computes disc(f_{n-1}) and returns |fundamental discriminant of
    Q(sqrt(disc))|.  PossiblyIncomplete is always flagged: the abelian part
    can exceed the quadratic resolvent when the Galois group is not full
    symmetric.  An underestimate only reorders the search; hits are checked
    by actual polynomial splitting, so it cannot create false positives.
    """
    if n < 2:
        raise ValidationError("n must be >= 2")
    f = build_f_k(n - 1)
    if f.degree < 1:
        return ConductorCandidate(1, ("PossiblyIncomplete",))
    if f.degree == 1:
        return ConductorCandidate(1, ("PossiblyIncomplete",))
    disc = poly_discriminant(f)
    if disc == 0:
        return ConductorCandidate(1, ("SquareDiscriminant", "PossiblyIncomplete"))
    kernel = squarefree_kernel(disc)
    if kernel == 1:
        return ConductorCandidate(1, ("SquareDiscriminant", "PossiblyIncomplete"))
    return ConductorCandidate(abs(fundamental_discriminant(disc)), ("PossiblyIncomplete",))


def appendix_modulus(n: int, conductor: Optional[int] = None) -> int:
    """lcm(n, n-1, conductor of the abelian part of F_{n-1})."""
    phi = conductor if conductor is not None else conductor_candidate(n).value
    return math.lcm(n, n - 1, phi)


@dataclass(frozen=True)
class AppendixInstance:
    n: int
    R: int = 1
    l: int = 0
    k: int = 0
    conductor: Optional[int] = None  # override for the F_{n-1} conductor part
    D: int = field(init=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValidationError("n must be >= 2")
        if self.R < 1:
            raise ValidationError("R must be >= 1")
        object.__setattr__(self, "D", appendix_modulus(self.n, self.conductor))
        if math.gcd(self.R, self.D) != 1:
            raise ValidationError(f"gcd(R, D) = gcd({self.R}, {self.D}) != 1")
        n, R, l, k = self.n, self.R, self.l, self.k
        guard = l * k * ((n - 1) ** (n - 1) * k - n**n * l)
        if math.gcd(guard, R) != 1:
            raise ValidationError("need gcd(l k ((n-1)^(n-1) k - n^n l), R) = 1")


def _prime_power_split(D: int, n: int, n1: int) -> tuple[int, int, int]:
    """D = q1 q2 q3 with q1 the part over primes of n, q2 over primes of n1."""
    q1 = q2 = q3 = 1
    rem = D
    p = 2
    while rem > 1:
        if p * p > rem:
            p = rem
        if rem % p == 0:
            pe = 1
            while rem % p == 0:
                pe *= p
                rem //= p
            if n % p == 0:
                q1 *= pe
            elif n1 % p == 0:
                q2 *= pe
            else:
                q3 *= pe
        p += 1 if p == 2 else 2
    return q1, q2, q3


def local_solution(n: int, D: int) -> tuple[int, int]:
    """Residues (s, t) mod D with gcd(st, D) = 1 and

        (-1)^(n-1) t = 1 mod n,   -s = 1 mod n-1,
        (n-1)^(n-1) t - n^n s = 1 mod D.

    Built constructively over the split D = q1 q2 q3 and verified before
    returning; verification failure raises NoSolution.
    """
    if n < 2:
        raise ValidationError("n must be >= 2")
    if D % n != 0 or (n > 2 and D % (n - 1) != 0):
        raise ValidationError("D must be divisible by n and n-1")
    q1, q2, q3 = _prime_power_split(D, n, n - 1)
    a = (n - 1) ** (n - 1)
    b = n**n
    t_parts, s_parts = [], []
    if q1 > 1:
        t_parts.append((pow(a, -1, q1) * (1 + b) % q1, q1))
        s_parts.append((1, q1))
    if q2 > 1:
        t_parts.append((1, q2))
        s_parts.append((pow(b, -1, q2) * (a - 1) % q2, q2))
    if q3 > 1:
        t_parts.append((pow(a, -1, q3) * 2 % q3, q3))
        s_parts.append((pow(b, -1, q3), q3))
    from .ntheory import crt

    t = crt(t_parts)[0] if t_parts else 0
    s = crt(s_parts)[0] if s_parts else 0
    ok = (
        math.gcd(s * t, D) == 1
        and ((-1) ** (n - 1) * t - 1) % n == 0
        and (-s - 1) % (n - 1) == 0
        and (a * t - b * s - 1) % D == 0
    )
    if not ok:
        raise NoSolution(f"construction failed its own congruence check at n={n}, D={D}")
    return s % D, t % D


@dataclass(frozen=True)
class PairWitness:
    s: int
    t: int
    third: int  # (n-1)^(n-1) t - n^n s
    verified: bool


def _signed_primes(limit: int, residue: int, modulus: int) -> Iterator[int]:
    """+-p for primes p = residue mod modulus, increasing |value|, + first."""
    table = sieve(0, limit + 1)
    for p in table.members():
        p = int(p)
        if p % modulus == residue % modulus:
            yield p
            yield -p


def verify_pair(n: int, s: int, t: int, f: Optional[IntPolynomial] = None) -> bool:
    """Independent re-check of the three conditions for a candidate pair."""
    if f is None:
        f = build_f_k(n - 1)
    if abs(s) == abs(t):
        return False
    if not (is_prime(abs(t)) and abs(t) % n == 1 % n):
        return False
    if not (is_prime(abs(s)) and abs(s) % (n - 1) == 1 % (n - 1)):
        return False
    third = (n - 1) ** (n - 1) * t - n**n * s
    if not is_prime(abs(third)):
        return False
    try:
        return splits_completely(f, abs(third))
    except Ramified:
        return False


def search_pairs(instance: AppendixInstance, bound: int,
                 limit: int = 8) -> list[PairWitness]:
    """Witness pairs with |s|, |t| <= bound, ordered by (|t|, |s|, signs).

    Iterates t over signed primes = 1 mod n, then s over signed primes
    = 1 mod n-1, keeping (s, t) = (l, k) mod R; every hit is independently
    re-verified before being returned.
    """
    if bound > 10**8:
        raise RangeTooLarge("bound <= 10^8")
    n, R = instance.n, instance.R
    f = build_f_k(n - 1)
    try:
        f_disc = poly_discriminant(f) if f.degree >= 1 else 1
    except ValueError:
        f_disc = 1
    hits: list[PairWitness] = []
    s_candidates = [
        s for s in _signed_primes(bound, 1, n - 1)
        if s % R == instance.l % R
    ]
    for t in _signed_primes(bound, 1 % n, n):
        if t % R != instance.k % R:
            continue
        for s in s_candidates:
            if abs(s) == abs(t):
                continue
            third = (n - 1) ** (n - 1) * t - n**n * s
            if abs(third) <= 1 or not is_prime(abs(third)):
                continue
            if f.degree >= 1 and f_disc % abs(third) == 0:
                continue  # ramified in F_{n-1}: condition undefined, reject
            try:
                if not splits_completely(f, abs(third)):
                    continue
            except Ramified:
                continue
            if verify_pair(n, s, t, f):
                hits.append(PairWitness(s, t, third, True))
                if len(hits) >= limit:
                    return hits
    return hits
