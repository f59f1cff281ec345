"""Prime generation and the arithmetic predicates cutting out restricted prime sets.

The heavy lifting is a numpy sieve plus a q-major scan that factors p-1
for every prime p in a range without storing a full smallest-prime-factor
table: for each base prime q, the positions p = 1 mod q are an arithmetic
progression inside the segment, so the factor structure of p-1 is
recovered with O(size * loglog) work and segment-sized memory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidBase, NotPrime, Ramified, RangeTooLarge
from .ntheory import factor, is_prime_u64
from .artin import make_base

_SIEVE_LIMIT = 10**9
_SEGMENT = 1 << 20


@dataclass(frozen=True)
class PrimeTable:
    """Primality (or restricted-primality) bits for the half-open range [lo, hi)."""

    lo: int
    hi: int
    bits: np.ndarray

    def __contains__(self, n: int) -> bool:
        return self.lo <= n < self.hi and bool(self.bits[n - self.lo])

    def count(self) -> int:
        return int(self.bits.sum())

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.bits) + self.lo


def _base_primes(limit: int) -> np.ndarray:
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if mask[i]:
            mask[i * i:: i] = False
    return np.flatnonzero(mask)


def sieve(lo: int, hi: int) -> PrimeTable:
    """Eratosthenes over [lo, hi), exact."""
    if not (0 <= lo <= hi <= _SIEVE_LIMIT):
        raise RangeTooLarge(f"need 0 <= lo <= hi <= 10^9, got [{lo}, {hi})")
    size = hi - lo
    bits = np.ones(size, dtype=bool)
    for n in range(lo, min(hi, 2)):
        bits[n - lo] = False
    if size == 0 or hi <= 2:
        return PrimeTable(lo, hi, bits)
    for p in _base_primes(math.isqrt(hi - 1)):
        p = int(p)
        start = max(p * p, (lo + p - 1) // p * p)
        if start < hi:
            bits[start - lo:: p] = False
    return PrimeTable(lo, hi, bits)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for 0 <= n < 2^63."""
    return is_prime_u64(n)


def multiplicative_order(a: int, p: int) -> int:
    if not is_prime_u64(p):
        raise NotPrime(f"{p} is not prime")
    if a % p == 0:
        raise ValueError(f"{a} is 0 mod {p}")
    order = p - 1
    for q, _ in factor(p - 1).prime_powers:
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def is_primitive_root(a: int, p: int) -> bool:
    """True iff a generates F_p^x."""
    if not is_prime_u64(p):
        raise NotPrime(f"{p} is not prime")
    if a % p == 0:
        return False
    m = p - 1
    return all(pow(a, m // q, p) != 1 for q in factor(m).primes())


def artin_prime_table(a: int, N: int) -> PrimeTable:
    """Bits over [0, N] marking primes with primitive root a."""
    make_base(a)  # InvalidBase for a in {-1,0,1} or a square
    if N < 0 or N > _SIEVE_LIMIT:
        raise RangeTooLarge(f"need 0 <= N <= 10^9, got {N}")
    table = sieve(0, N + 1)
    bits = table.bits.copy()
    if N >= 2:
        bits[2] = a % 2 == 1
    if N >= 3:
        _refine_artin_bits(a, bits, 3, N + 1)
    return PrimeTable(0, N + 1, bits)


def _refine_artin_bits(a: int, bits: np.ndarray, lo: int, hi: int) -> None:
    """Clear bits of primes p in [lo, hi) for which a does not generate F_p^x."""
    base_primes = [int(q) for q in _base_primes(max(2, math.isqrt(hi)))]
    for seg_lo in range(lo, hi, _SEGMENT):
        seg_hi = min(seg_lo + _SEGMENT, hi)
        size = seg_hi - seg_lo
        prime_here = bits[seg_lo:seg_hi]
        rem = np.arange(seg_lo - 1, seg_hi - 1, dtype=np.int64)  # rem[i] divides p-1
        for q in base_primes:
            first = (-(seg_lo - 1)) % q
            idx = np.arange(first, size, q)
            if idx.size == 0:
                continue
            live = idx[prime_here[idx]]
            if live.size:
                sub = rem[live]
                while True:
                    div = sub % q == 0
                    if not div.any():
                        break
                    sub[div] //= q
                rem[live] = sub
                for i in live:
                    p = seg_lo + int(i)
                    if a % p == 0 or pow(a, (p - 1) // q, p) == 1:
                        bits[p] = False
            # composite positions keep stale rem; never read below
        leftover = np.flatnonzero(prime_here & (rem > 1))
        for i in leftover:
            p = seg_lo + int(i)
            q = int(rem[i])
            if a % p == 0 or pow(a, (p - 1) // q, p) == 1:
                bits[p] = False


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients ascending: c0 + c1 X + ... + cd X^d."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            coeffs = (0,)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1]

    def __call__(self, x: int) -> int:
        out = 0
        for c in reversed(self.coefficients):
            out = out * x + c
        return out

    def derivative(self) -> "IntPolynomial":
        if self.degree == 0:
            return IntPolynomial((0,))
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coefficients) if i))


def _poly_mulmod(u: list[int], v: list[int], mod_poly: list[int], p: int) -> list[int]:
    """(u * v) mod (mod_poly, p); mod_poly is monic of degree d."""
    d = len(mod_poly) - 1
    out = [0] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                out[i + j] = (out[i + j] + ui * vj) % p
    for k in range(len(out) - 1, d - 1, -1):
        c = out[k]
        if c:
            out[k] = 0
            for j in range(d):
                out[k - d + j] = (out[k - d + j] - c * mod_poly[j]) % p
    del out[d:]
    return out


def splits_completely(f: IntPolynomial, p: int) -> bool:
    """True iff f mod p factors into deg(f) distinct linear factors.

    Computed as X^p = X (mod f, p) after making f monic; ramified primes
    (p | disc(f)) and primes dividing the leading coefficient are refused.
    """
    if not is_prime_u64(p):
        raise NotPrime(f"{p} is not prime")
    if f.degree == 0:
        if f.leading == 0:
            raise ValueError("zero polynomial has no splitting behaviour")
        return True  # splitting field Q; vacuously split
    if f.leading % p == 0:
        raise Ramified(f"p = {p} divides the leading coefficient")
    if poly_discriminant(f) % p == 0:
        raise Ramified(f"p = {p} ramifies (divides disc f)")
    if f.degree == 1:
        return True
    inv = pow(f.leading, -1, p)
    monic = [c * inv % p for c in f.coefficients]
    xp = [0, 1]  # X
    base = [0, 1]
    e = p
    result = [1]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, monic, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, monic, p)
    xp = result + [0] * (f.degree - len(result))
    want = [0, 1] + [0] * (f.degree - 2)
    return xp == want[: f.degree]


def _integer_determinant(mat: list[list[int]]) -> int:
    """Bareiss fraction-free elimination; exact for integer matrices."""
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    dm, dn = f.degree, g.degree
    if dm == 0:
        return f.leading**dn
    if dn == 0:
        return g.leading**dm
    size = dm + dn
    rows = []
    fc = list(reversed(f.coefficients))
    gc = list(reversed(g.coefficients))
    for i in range(dn):
        rows.append([0] * i + fc + [0] * (size - dm - 1 - i))
    for i in range(dm):
        rows.append([0] * i + gc + [0] * (size - dn - 1 - i))
    return _integer_determinant(rows)


def poly_discriminant(f: IntPolynomial) -> int:
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f), exactly."""
    d = f.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return 1
    res = _resultant(f, f.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    assert res % f.leading == 0
    return sign * (res // f.leading)


@dataclass(frozen=True)
class HooleyReport:
    a: int
    limit: int
    primes_checked: int
    counterexamples: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def _spf_table(limit: int) -> np.ndarray:
    """Smallest prime factor for every n <= limit (0 marks primes and 0,1)."""
    spf = np.zeros(limit + 1, dtype=np.int32)
    for q in range(2, math.isqrt(limit) + 1):
        if spf[q] == 0:
            sl = spf[q * q:: q]
            sl[sl == 0] = q
    return spf


def _distinct_primes_spf(n: int, spf: np.ndarray) -> list[int]:
    out = []
    while n > 1:
        q = int(spf[n]) or n
        out.append(q)
        while n % q == 0:
            n //= q
    return out


def hooley_check(a: int, N: int) -> HooleyReport:
    """Verify, prime by prime, the inclusion-exclusion identity

        1_{a generates F_p^x} = sum over squarefree k | p-1 of
                                mu(k) * 1_{a^((p-1)/k) = 1 mod p}

    for all primes p <= N with p not dividing a.  Reports counterexamples.
    """
    if N > 10**7:
        raise RangeTooLarge("hooley_check supports N <= 10^7")
    table = sieve(0, N + 1)
    spf = _spf_table(max(N, 4))
    bad = []
    checked = 0
    for p in table.members():
        p = int(p)
        if a % p == 0:
            continue
        checked += 1
        qs = _distinct_primes_spf(p - 1, spf)
        rhs = 0
        for mask in range(1 << len(qs)):
            k = 1
            bits = 0
            for j, q in enumerate(qs):
                if mask >> j & 1:
                    k *= q
                    bits += 1
            if pow(a, (p - 1) // k, p) == 1:
                rhs += -1 if bits % 2 else 1
        lhs = 1 if is_primitive_root(a, p) else 0
        if lhs != rhs:
            bad.append(p)
    return HooleyReport(a, N, checked, tuple(bad))
