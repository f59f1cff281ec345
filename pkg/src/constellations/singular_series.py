"""Leading constants of the constellation asymptotics, obstruction scans,
and the reference tables.

The Artin-case constant factors as

    (prod_i delta(a_i,0,1)) * sigma(D) * prod_{p !| D} sigma(p),
    D = lcm |disc Q(sqrt(a_i))|,

kept as an exact symbolic head (rational times a monomial in the formal
constants A_a) times a numerically enclosed Euler product.  The
Chebotarev-case constant is the same shape with eta/beta factors and a
pure-rational head.

Two groupings are exposed: the theorem grouping above, and the table
grouping that additionally folds the local factors at p | 6 into the head
(that is how the reference tables for the four-form system are printed).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .affine import AP3, INTRO4, AffineSystem
from .artin import ArtinBase, SymbolicDensity, delta, make_base
from .chebotarev import ChebotarevSpec
from .errors import InfiniteComplexity
from .local_densities import (
    beta,
    beta_euler_factor,
    sigma,
    sigma_euler_factor,
)
from .primes import sieve

Interval = tuple[float, float]

DEFAULT_EULER_CUTOFF = 10**5
_TAIL_CONSTANT_FLOOR = 10.0  # |sigma(p) - 1| p^2 <= 10 on the tested systems


@dataclass(frozen=True)
class SeriesValue:
    head: SymbolicDensity          # exact local part at D (and folded small primes)
    modulus: int                   # the D the head was computed at
    euler_cutoff: int
    euler_interval: Interval       # encloses prod over remaining primes, all of them
    kind: str                      # "artin" | "chebotarev"
    folded_primes: tuple[int, ...] = ()
    numeric: Optional[Interval] = None

    def with_numeric(self, prime_cutoff: int = 10**6) -> "SeriesValue":
        lo_h, hi_h = self.head.evaluate(prime_cutoff)
        lo = min(lo_h * self.euler_interval[0], lo_h * self.euler_interval[1],
                 hi_h * self.euler_interval[0], hi_h * self.euler_interval[1])
        hi = max(lo_h * self.euler_interval[0], lo_h * self.euler_interval[1],
                 hi_h * self.euler_interval[0], hi_h * self.euler_interval[1])
        return SeriesValue(self.head, self.modulus, self.euler_cutoff,
                           self.euler_interval, self.kind, self.folded_primes, (lo, hi))


def _worker_count(threads: Optional[int]) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("CONSTELLATION_THREADS")
    return max(1, int(env)) if env else 1


def _euler_interval(factor_at: Callable[[int], Fraction], cutoff: int,
                    exclude: int, threads: Optional[int]) -> Interval:
    """Enclose prod over ALL primes p !| exclude of factor_at(p).

    Factors for p <= cutoff are evaluated exactly and multiplied in order;
    the tail is bounded via |factor - 1| <= C / p^2 with
    C = max(10, observed max over the computed range).
    """
    primes = [int(p) for p in sieve(0, cutoff + 1).members() if exclude % int(p) != 0]
    workers = _worker_count(threads)
    if workers > 1 and len(primes) > 64:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            factors = list(pool.map(factor_at, primes, chunksize=64))
    else:
        factors = [factor_at(p) for p in primes]
    prod = 1.0
    observed = 0.0
    for p, f in zip(primes, factors):
        prod *= float(f)
        observed = max(observed, abs(float(f) - 1.0) * p * p)
    c = max(_TAIL_CONSTANT_FLOOR, observed)
    tail = c / cutoff  # sum_{p > cutoff} C/p^2 <= C/cutoff
    slop = 1e-15 * (len(primes) + 2)
    lo = prod * math.exp(-tail) * (1.0 - slop)
    hi = prod * math.exp(tail) * (1.0 + slop)
    if lo > hi:
        lo, hi = hi, lo
    return lo, hi


def artin_modulus(bases: Sequence[ArtinBase]) -> int:
    return math.lcm(*[b.abs_disc for b in bases])


def artin_series(bases: Sequence[ArtinBase], system: AffineSystem,
                 euler_cutoff: int = DEFAULT_EULER_CUTOFF,
                 grouping: str = "theorem",
                 threads: Optional[int] = None) -> SeriesValue:
    """Leading constant for a system of forms with prescribed primitive roots.

    grouping="theorem": head = prod delta(a_i,0,1) * sigma(D).
    grouping="table":   additionally folds sigma(p) for p | 6, p !| D into
    the head (the presentation used for the four-form reference tables).
    """
    if not system.finite_complexity():
        raise InfiniteComplexity("two forms share a direction (or one is constant)")
    if grouping not in ("theorem", "table"):
        raise ValueError(f"unknown grouping {grouping!r}")
    D = artin_modulus(bases)
    head = SymbolicDensity(Fraction(1))
    for base in bases:
        head = head * delta(base, 0, 1)
    head = head * sigma(bases, system, D).value
    folded: tuple[int, ...] = ()
    if grouping == "table":
        folded = tuple(p for p in (2, 3) if D % p != 0)
        for p in folded:
            head = head * sigma(bases, system, p).value
    exclude = D * math.prod(folded) if folded else D
    if head:
        euler = _euler_interval(lambda p: sigma_euler_factor(bases, system, p),
                                euler_cutoff, exclude, threads)
    else:
        euler = (0.0, 0.0)  # obstructed: the constant is exactly zero
    return SeriesValue(head, D, euler_cutoff, euler, "artin", folded)


def cheb_modulus(specs: Sequence[ChebotarevSpec]) -> int:
    return math.lcm(*[s.conductor for s in specs])


def cheb_series(specs: Sequence[ChebotarevSpec], system: AffineSystem,
                euler_cutoff: int = DEFAULT_EULER_CUTOFF,
                threads: Optional[int] = None) -> SeriesValue:
    """Leading constant for prescribed Artin symbols: pure-rational head."""
    if not system.finite_complexity():
        raise InfiniteComplexity("two forms share a direction (or one is constant)")
    from .local_densities import tau

    D = cheb_modulus(specs)
    head_coeff = Fraction(1)
    for spec in specs:
        head_coeff *= Fraction(spec.class_size, spec.degree)
    head_coeff *= tau(specs, system, D).value
    head = SymbolicDensity(head_coeff)
    if head:
        euler = _euler_interval(lambda p: beta_euler_factor(system, p),
                                euler_cutoff, D, threads)
    else:
        euler = (0.0, 0.0)
    return SeriesValue(head, D, euler_cutoff, euler, "chebotarev")


@dataclass(frozen=True)
class ObstructionReport:
    vanishing_moduli: tuple[int, ...]
    witnesses: dict[int, tuple[tuple[tuple[int, ...], int], ...]] = field(default_factory=dict)

    @property
    def obstructed(self) -> bool:
        return bool(self.vanishing_moduli)


def obstruction_scan(bases: Sequence[ArtinBase], system: AffineSystem,
                     prime_bound: int = 100) -> ObstructionReport:
    """Find moduli with sigma(q) = 0 among q = D and primes p !| D up to the bound.

    For each vanishing q the witness lists, per residue class n mod q, one
    form index i with delta(a_i, psi_i(n), q) = 0.
    """
    D = artin_modulus(bases)
    vanishing = []
    witnesses = {}
    if sigma(bases, system, D).value == 0:
        vanishing.append(D)
        witnesses[D] = _vanishing_witness(bases, system, D)
    for p in sieve(0, prime_bound + 1).members():
        p = int(p)
        if D % p == 0:
            continue
        if sigma_euler_factor(bases, system, p) == 0:
            vanishing.append(p)
            witnesses[p] = _vanishing_witness(bases, system, p)
    return ObstructionReport(tuple(vanishing), witnesses)


def _vanishing_witness(bases, system, q):
    ratio = {}
    for base in bases:
        if base.a not in ratio:
            ratio[base.a] = [bool(delta(base, r, q)) for r in range(q)]
    out = []
    import itertools

    for point in itertools.product(range(q), repeat=system.s):
        values = system.evaluate(point)
        i = next(i for i, (b, v) in enumerate(zip(bases, values))
                 if not ratio[b.a][v % q])
        out.append((point, i))
    return tuple(out)


# Reference-table row sets (base tuples exactly as printed).
TABLE1_ROWS = (
    (2, 2, 3), (3, 3, 3), (2, 2, 5), (3, 3, 5), (5, 5, 5), (2, 3, 5),
    (2, 2, 6), (2, 3, 6), (6, 6, 6), (2, 5, 6),
    (7, 7, 7), (2, 2, 7), (2, 3, 7), (2, 5, 7), (3, 3, 7), (10, 10, 10),
    (2, 3, 10), (2, 5, 10), (5, 5, 10), (11, 11, 11),
)
TABLE2A_BASES = (2, 3, 5, 6, 7, 10, 11, 12, 13, 14, 15, 17, 18, 19, 20, 21, 22, 23, 24, 26)
TABLE2B_ROWS = (
    (2, 2, 2, 3), (2, 2, 2, 5), (2, 2, 3, 3), (2, 2, 3, 5), (2, 2, 3, 6),
    (2, 2, 5, 5), (2, 2, 5, 6), (2, 2, 6, 6), (2, 3, 3, 3), (2, 3, 3, 5),
    (2, 3, 3, 6), (2, 3, 6, 6), (2, 5, 5, 5), (2, 5, 5, 6), (2, 6, 6, 6),
    (3, 3, 3, 5), (3, 3, 3, 6), (3, 3, 5, 5), (3, 3, 5, 6), (3, 3, 6, 6),
)


def _head_coefficient(a_tuple: Sequence[int], system: AffineSystem,
                      grouping: str) -> Fraction:
    bases = [make_base(a) for a in a_tuple]
    D = artin_modulus(bases)
    value = SymbolicDensity(Fraction(1))
    for b in bases:
        value = value * delta(b, 0, 1)
    value = value * sigma(bases, system, D).value
    if grouping == "table":
        for p in (2, 3):
            if D % p != 0:
                value = value * sigma(bases, system, p).value
    return value.coefficient


def table1() -> dict[tuple[int, ...], Fraction]:
    """prod delta(a_i,0,1) * sigma(D) for the three-term progression system."""
    return {row: _head_coefficient(row, AP3, "theorem") for row in TABLE1_ROWS}


def table2a() -> dict[tuple[int, ...], Fraction]:
    """The folded constant for the four-form system, equal bases."""
    return {(a, a, a, a): _head_coefficient((a, a, a, a), INTRO4, "table")
            for a in TABLE2A_BASES}


def table2b() -> dict[tuple[int, ...], Fraction]:
    """The folded constant for the four-form system, mixed bases."""
    return {row: _head_coefficient(row, INTRO4, "table") for row in TABLE2B_ROWS}
