"""Enumerate actual prime constellations and compare against predictions.

A run counts lattice points n in a region where every form value
psi_i(n) is a genuine prime passing its restriction predicate (prime
powers are excluded on purpose: witnesses should be real constellations),
accumulates the weight prod_i log psi_i(n), and reports the ratio against
volume * singular series.

Weighted sums are accumulated with math.fsum over the per-solution
products, so the reported float does not depend on enumeration order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .affine import AffineSystem
from .chebotarev import ChebotarevSpec, eta
from .errors import (
    NotRefinable,
    Overflow,
    RangeTooLarge,
    RegionUnbounded,
    ValidationError,
)
from .ntheory import kronecker_symbol
from .primes import IntPolynomial, artin_prime_table, sieve, splits_completely
from .errors import Ramified
from .singular_series import SeriesValue

Interval = tuple[float, float]

_WITNESS_CAP = 1 << 20  # collect-all threshold for exact lexicographic witnesses


@dataclass(frozen=True)
class Region:
    """A bounded box, optionally cut by rational halfspaces sum c.x <= rhs."""

    bounds: tuple[tuple[Fraction, Fraction], ...]
    halfspaces: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()

    def __post_init__(self):
        if not self.bounds:
            raise RegionUnbounded("a region needs finite box bounds")
        bounds = tuple((Fraction(lo), Fraction(hi)) for lo, hi in self.bounds)
        if any(lo > hi for lo, hi in bounds):
            raise ValidationError("empty box: lo > hi")
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "halfspaces", tuple(
            (tuple(Fraction(c) for c in coeffs), Fraction(rhs))
            for coeffs, rhs in self.halfspaces
        ))

    @property
    def kind(self) -> str:
        return "halfspace_polytope" if self.halfspaces else "box"

    @property
    def s(self) -> int:
        return len(self.bounds)

    @classmethod
    def box(cls, *bounds: tuple) -> "Region":
        return cls(tuple(bounds))

    def box_volume(self) -> Fraction:
        vol = Fraction(1)
        for lo, hi in self.bounds:
            vol *= hi - lo
        return vol

    def lattice_ranges(self) -> list[tuple[int, int]]:
        return [(math.ceil(lo), math.floor(hi)) for lo, hi in self.bounds]


@dataclass(frozen=True)
class RestrictionPredicate:
    """Membership condition a prime must satisfy, beyond primality."""

    kind: str
    a: int = 0
    d: int = 0
    split: bool = True
    b: int = 0
    q: int = 1
    poly: Optional[IntPolynomial] = None

    def key(self):
        return (self.kind, self.a, self.d, self.split, self.b, self.q,
                self.poly.coefficients if self.poly else None)

    def table(self, maxval: int) -> np.ndarray:
        """Bool array over [0, maxval]: prime and predicate holds."""
        if self.kind == "primitive_root":
            return artin_prime_table(self.a, maxval).bits
        bits = sieve(0, maxval + 1).bits.copy()
        if self.kind == "unrestricted":
            return bits
        if self.kind == "congruence":
            vals = np.arange(maxval + 1, dtype=np.int64)
            return bits & (vals % self.q == self.b % self.q)
        if self.kind == "quadratic_split":
            from .ntheory import fundamental_discriminant

            disc = fundamental_discriminant(self.d)
            target = 1 if self.split else -1
            char = np.array([kronecker_symbol(disc, r) for r in range(abs(disc))],
                            dtype=np.int64)
            vals = np.arange(maxval + 1, dtype=np.int64)
            return bits & (char[vals % abs(disc)] == target)
        if self.kind == "poly_split":
            for p in np.flatnonzero(bits):
                try:
                    ok = splits_completely(self.poly, int(p))
                except Ramified:
                    ok = False  # Artin symbol undefined at ramified primes
                bits[p] = ok
            return bits
        raise ValidationError(f"unknown predicate kind {self.kind!r}")


def primitive_root(a: int) -> RestrictionPredicate:
    return RestrictionPredicate("primitive_root", a=a)


def quadratic_split(d: int, split: bool = True) -> RestrictionPredicate:
    return RestrictionPredicate("quadratic_split", d=d, split=split)


def poly_split(f: IntPolynomial) -> RestrictionPredicate:
    return RestrictionPredicate("poly_split", poly=f)


def congruence(b: int, q: int) -> RestrictionPredicate:
    return RestrictionPredicate("congruence", b=b, q=q)


def unrestricted() -> RestrictionPredicate:
    return RestrictionPredicate("unrestricted")


@dataclass(frozen=True)
class VerificationReport:
    N: int
    weighted_sum: float
    solution_count: int
    predicted: Optional[Interval]
    ratio: Optional[float]
    witnesses: tuple[tuple[int, ...], ...]
    strategy: str


def _form_extremes(system: AffineSystem, region: Region) -> list[tuple[Fraction, Fraction]]:
    out = []
    for c, row in zip(system.constants, system.coefficients):
        lo = Fraction(c) + sum(min(a * b[0], a * b[1]) for a, b in zip(row, region.bounds))
        hi = Fraction(c) + sum(max(a * b[0], a * b[1]) for a, b in zip(row, region.bounds))
        out.append((lo, hi))
    return out


def _coordinate_form(system: AffineSystem) -> Optional[tuple[int, int, int]]:
    """(form index, variable index, sign) for the first form psi = +-n_j + c."""
    for i, row in enumerate(system.coefficients):
        nonzero = [(j, a) for j, a in enumerate(row) if a]
        if len(nonzero) == 1 and abs(nonzero[0][1]) == 1:
            return i, nonzero[0][0], nonzero[0][1]
    return None


def count_constellations(system: AffineSystem,
                         predicates: Sequence[RestrictionPredicate],
                         region: Region,
                         N: Optional[int] = None,
                         series: Optional[SeriesValue] = None,
                         strategy: str = "auto",
                         max_witnesses: int = 10) -> VerificationReport:
    """Count n in the region with every psi_i(n) a prime passing predicate i."""
    if len(predicates) != system.t:
        raise ValidationError(f"need {system.t} predicates, got {len(predicates)}")
    if region.s != system.s:
        raise ValidationError("region dimension does not match the system")
    extremes = _form_extremes(system, region)
    if any(max(abs(lo), abs(hi)) > 10**9 for lo, hi in extremes):
        raise Overflow("form values exceed 10^9 on this region")
    maxval = max(2, max(int(hi) for _, hi in extremes))

    tables: dict = {}
    form_tables = []
    for pred in predicates:
        key = pred.key()
        if key not in tables:
            tables[key] = pred.table(maxval)
        form_tables.append(tables[key])

    coord = _coordinate_form(system)
    if strategy == "auto":
        strategy = "prime_table" if coord is not None else "lattice"
    if strategy not in ("lattice", "prime_table"):
        raise ValidationError(f"unknown strategy {strategy!r}")
    if strategy == "prime_table" and coord is None:
        raise ValidationError("no form is a coordinate; prime_table strategy unavailable")

    ranges = region.lattice_ranges()
    s = system.s

    inner_values: Optional[np.ndarray] = None
    if strategy == "prime_table":
        i0, j0, sign = coord
        vals = np.flatnonzero(form_tables[i0]).astype(np.int64)
        cand = np.sort(sign * (vals - system.constants[i0]))
        cand = cand[(cand >= ranges[j0][0]) & (cand <= ranges[j0][1])]
        if s == 1:
            inner, outer_dims, outer_iters = 0, [], []
            inner_values = cand
        else:
            inner = s - 1 if j0 != s - 1 else s - 2
            outer_dims = [j0] + [j for j in range(s) if j not in (j0, inner)]
            outer_iters = [cand.tolist()] + [
                range(ranges[j][0], ranges[j][1] + 1) for j in outer_dims[1:]
            ]
    else:
        inner = s - 1
        outer_dims = list(range(s - 1))
        outer_iters = [range(ranges[j][0], ranges[j][1] + 1) for j in outer_dims]
    if inner_values is None:
        inner_values = np.arange(ranges[inner][0], ranges[inner][1] + 1, dtype=np.int64)

    # integer halfspace data for exact lattice membership
    int_halfspaces = []
    for coeffs, rhs in region.halfspaces:
        den = math.lcm(*[c.denominator for c in coeffs], rhs.denominator)
        int_halfspaces.append(
            ([int(c * den) for c in coeffs], int(rhs * den))
        )

    count = 0
    weight_chunks: list[np.ndarray] = []
    solutions: list[tuple[int, ...]] = []
    overflowed = False

    for head in itertools.product(*outer_iters):
        point = [0] * s
        for dim, val in zip(outer_dims, head):
            point[dim] = int(val)
        vecs = []
        mask = np.ones(inner_values.shape, dtype=bool)
        broke = False
        for i, (c, row) in enumerate(zip(system.constants, system.coefficients)):
            v = np.full(inner_values.shape, c, dtype=np.int64)
            for dim in outer_dims:
                v += row[dim] * point[dim]
            v += row[inner] * inner_values
            valid = (v >= 2) & (v <= maxval)
            safe = np.where(valid, v, 2)
            mask &= valid & form_tables[i][safe]
            vecs.append(v)
            if not mask.any():
                broke = True
                break
        if broke:
            continue
        for coeffs, rhs in int_halfspaces:
            lhs = np.full(inner_values.shape,
                          sum(coeffs[dim] * point[dim] for dim in outer_dims),
                          dtype=np.int64)
            lhs += coeffs[inner] * inner_values
            mask &= lhs <= rhs
        idx = np.flatnonzero(mask)
        if idx.size == 0:
            continue
        count += int(idx.size)
        logs = np.ones(idx.size, dtype=np.float64)
        for v in vecs:
            logs *= np.log(v[idx].astype(np.float64))
        weight_chunks.append(logs)
        if len(solutions) < _WITNESS_CAP:
            take = idx if count <= _WITNESS_CAP else idx[: max(0, _WITNESS_CAP - len(solutions))]
            for k in take:
                pt = point[:]
                pt[inner] = int(inner_values[k])
                solutions.append(tuple(pt))

    weighted = math.fsum(float(x) for chunk in weight_chunks for x in chunk)
    if count <= len(solutions):
        witnesses = tuple(sorted(solutions)[:max_witnesses])
    else:
        witnesses = tuple(solutions[:max_witnesses])

    predicted = None
    ratio = None
    if series is not None:
        predicted = predicted_main_term(system, region, series, N or maxval)
        mid = (predicted[0] + predicted[1]) / 2
        if mid != 0:
            ratio = weighted / mid
    return VerificationReport(
        N=N if N is not None else maxval,
        weighted_sum=weighted,
        solution_count=count,
        predicted=predicted,
        ratio=ratio,
        witnesses=witnesses,
        strategy=strategy,
    )


def volume(region: Region, system: AffineSystem,
           samples: int = 1 << 14, replicates: int = 8, seed: int = 0) -> Interval:
    """vol(region intersect {all forms > 0}), exact for clean boxes, else QMC."""
    extremes = _form_extremes(system, region)
    box_vol = float(region.box_volume())
    if not region.halfspaces:
        if all(lo > 0 for lo, _ in extremes):
            return box_vol, box_vol
        if any(hi <= 0 for _, hi in extremes):
            return 0.0, 0.0
    from scipy.stats import qmc

    s = region.s
    lows = np.array([float(lo) for lo, _ in region.bounds])
    spans = np.array([float(hi - lo) for lo, hi in region.bounds])
    estimates = []
    for r in range(replicates):
        sampler = qmc.Sobol(d=s, scramble=True, seed=seed + r)
        pts = lows + sampler.random(samples) * spans
        inside = np.ones(samples, dtype=bool)
        for c, row in zip(system.constants, system.coefficients):
            vals = c + pts @ np.array(row, dtype=np.float64)
            inside &= vals > 0
        for coeffs, rhs in region.halfspaces:
            vals = pts @ np.array([float(x) for x in coeffs])
            inside &= vals <= float(rhs)
        estimates.append(inside.mean() * box_vol)
    mean = float(np.mean(estimates))
    spread = float(np.std(estimates)) / math.sqrt(replicates)
    pad = 3.0 * spread + 1e-12 * abs(mean)
    return mean - pad, mean + pad


def predicted_main_term(system: AffineSystem, region: Region,
                        series: SeriesValue, N: int) -> Interval:
    """volume(region intersect positivity cone) times the series enclosure."""
    if series.numeric is None:
        series = series.with_numeric()
    vlo, vhi = volume(region, system)
    nlo, nhi = series.numeric
    corners = (vlo * nlo, vlo * nhi, vhi * nlo, vhi * nhi)
    return min(corners), max(corners)


@dataclass(frozen=True)
class ProgressionReport:
    label: str
    b: int
    q: int
    N: int
    weighted_sum: float
    predicted: float
    ratio: float


def chebotarev_progression_check(spec: ChebotarevSpec, b: int, q: int, N: int,
                                 ) -> ProgressionReport:
    """Compare sum of log p over p <= N, p = b mod q with the given Artin symbol,
    against eta(b, q) * N."""
    if q % spec.conductor != 0:
        raise NotRefinable(f"conductor {spec.conductor} must divide q = {q}")
    if N > 10**9:
        raise RangeTooLarge("N <= 10^9")
    density = eta(spec, b, q)
    table = sieve(0, N + 1)
    vals = table.members()
    mask = vals % q == b % q
    if spec.conductor > 1:
        allowed = np.zeros(spec.conductor, dtype=bool)
        for r in spec.allowed_residues:
            allowed[r] = True
        mask &= allowed[vals % spec.conductor]
    selected = vals[mask]
    weighted = math.fsum(math.log(int(p)) for p in selected)
    predicted = float(density) * N
    ratio = weighted / predicted if predicted else math.nan
    return ProgressionReport(spec.label, b, q, N, weighted, predicted, ratio)
