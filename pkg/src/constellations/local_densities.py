"""Exact finite sums over (Z/qZ)^s: sigma, beta and tau local densities.

All three have the shape

    q^(t-s) * sum over n in (Z/qZ)^s of prod_i w_i(psi_i(n) mod q)

with per-form weights w_i built from delta ratios (sigma), coprimality
indicators (beta) or eta ratios (tau).  The sum is evaluated exactly:
residues are classified into the handful of distinct weight values per
form, the lattice is counted per class combination with numpy, and the
weighted total is assembled in rational arithmetic.

For prime q there is also a closed route (:func:`sigma_euler_factor`,
:func:`beta_euler_factor`) that replaces the p^s-point scan by
inclusion-exclusion over forced residue classes with exact linear algebra
mod p; it makes Euler products over p <= 10^5 feasible and is
cross-checked against the scan in the tests.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .affine import AffineSystem
from .artin import ArtinBase, delta
from .chebotarev import ChebotarevSpec, eta
from .errors import ZeroBaseline
from .ntheory import euler_phi

_FULL_GRID_LIMIT = 1 << 22


@dataclass(frozen=True)
class DensityValue:
    value: Fraction
    q: int
    kind: str  # "sigma" | "beta" | "tau"

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"negative local density at q={self.q}")


def _lattice_columns(q: int, s: int):
    """Yield coordinate column blocks covering (Z/qZ)^s."""
    if q**s <= _FULL_GRID_LIMIT:
        grid = np.indices((q,) * s, dtype=np.int64).reshape(s, -1)
        yield [grid[j] for j in range(s)]
        return
    last = np.arange(q, dtype=np.int64)
    for head in itertools.product(range(q), repeat=s - 1):
        yield [np.full(q, h, dtype=np.int64) for h in head] + [last]


def _weighted_lattice_sum(system: AffineSystem, q: int,
                          weights: Sequence[Sequence[Fraction]]) -> Fraction:
    """sum over n of prod_i weights[i][psi_i(n) mod q], exactly."""
    uniques: list[list[Fraction]] = []
    codes: list[np.ndarray] = []
    for table in weights:
        uniq = sorted(set(table), key=lambda v: (v.numerator, v.denominator))
        index = {v: i for i, v in enumerate(uniq)}
        uniques.append(uniq)
        codes.append(np.array([index[v] for v in table], dtype=np.int64))
    strides = []
    total_classes = 1
    for uniq in uniques:
        strides.append(total_classes)
        total_classes *= len(uniq)
    counts = np.zeros(total_classes, dtype=np.int64)
    for columns in _lattice_columns(q, system.s):
        residues = system.evaluate_mod_arrays(q, columns)
        combo = np.zeros(columns[0].shape, dtype=np.int64)
        for code, vals, stride in zip(codes, residues, strides):
            combo += code[vals] * stride
        counts += np.bincount(combo, minlength=total_classes)
    total = Fraction(0)
    for flat_idx in np.flatnonzero(counts):
        prod = Fraction(int(counts[flat_idx]))
        rem = int(flat_idx)
        for uniq in uniques:
            prod *= uniq[rem % len(uniq)]
            if not prod:
                break
            rem //= len(uniq)
        total += prod
    return total


def sigma(bases: Sequence[ArtinBase], system: AffineSystem, q: int) -> DensityValue:
    """q^(t-s) sum_n prod_i delta(a_i, psi_i(n), q) / delta(a_i, 0, 1)."""
    if len(bases) != system.t:
        raise ValueError(f"need {system.t} bases, got {len(bases)}")
    if q < 1:
        raise ValueError("q must be positive")
    ratio_tables: dict[int, list[Fraction]] = {}
    for base in bases:
        if base.a in ratio_tables:
            continue
        baseline = delta(base, 0, 1)
        if not baseline:
            raise ZeroBaseline(f"delta({base.a},0,1) vanished")
        ratio_tables[base.a] = [
            (delta(base, r, q) / baseline).as_fraction() for r in range(q)
        ]
    weights = [ratio_tables[base.a] for base in bases]
    total = _weighted_lattice_sum(system, q, weights)
    return DensityValue(total * Fraction(q) ** (system.t - system.s), q, "sigma")


def beta(system: AffineSystem, q: int) -> DensityValue:
    """q^(t-s) sum_n prod_i 1_{gcd(psi_i(n), q) = 1} / phi(q)."""
    if q < 1:
        raise ValueError("q must be positive")
    if q == 1:
        return DensityValue(Fraction(1), 1, "beta")
    coprime = [Fraction(int(math.gcd(r, q) == 1)) for r in range(q)]
    count = _weighted_lattice_sum(system, q, [coprime] * system.t)
    value = count * Fraction(q) ** (system.t - system.s) / euler_phi(q) ** system.t
    return DensityValue(value, q, "beta")


def tau(specs: Sequence[ChebotarevSpec], system: AffineSystem, q: int) -> DensityValue:
    """q^(t-s) sum_n prod_i eta_i(psi_i(n), q) / eta_i(0, 1).

    Needs each eta_i computable at q (conductor divides q, or is coprime
    to it); NotRefinable propagates otherwise.
    """
    if len(specs) != system.t:
        raise ValueError(f"need {system.t} specs, got {len(specs)}")
    if q < 1:
        raise ValueError("q must be positive")
    weights = []
    for spec in specs:
        baseline = Fraction(spec.class_size, spec.degree)
        weights.append([eta(spec, r, q) / baseline for r in range(q)])
    total = _weighted_lattice_sum(system, q, weights)
    return DensityValue(total * Fraction(q) ** (system.t - system.s), q, "tau")


def _solution_count(rows: list[tuple[int, ...]], rhs: list[int], p: int, s: int) -> int:
    """#solutions in F_p^s of the affine system rows*n = rhs, by elimination."""
    mat = [[c % p for c in row] + [r % p] for row, r in zip(rows, rhs)]
    rank = 0
    for col in range(s):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [x * inv % p for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], mat[rank])]
        rank += 1
    for r in range(rank, len(mat)):
        if mat[r][s]:
            return 0
    return p ** (s - rank)


def _forced_class_sum(system: AffineSystem, p: int,
                      v0: list[Fraction], v1: list[Fraction],
                      vg: list[Fraction]) -> Fraction:
    """sum_n prod_i f_i(psi_i(n)) where f_i is v0/v1/vg on psi = 0/1/other."""
    t, s = system.t, system.s
    total = Fraction(0)
    for assignment in itertools.product((None, 0, 1), repeat=t):
        coeff = Fraction(1)
        rows, rhs = [], []
        for i, forced in enumerate(assignment):
            if forced is None:
                coeff *= vg[i]
            else:
                coeff *= (v0[i] if forced == 0 else v1[i]) - vg[i]
                rows.append(system.coefficients[i])
                rhs.append(forced - system.constants[i])
            if not coeff:
                break
        if not coeff:
            continue
        total += coeff * _solution_count(rows, rhs, p, s)
    return total


def sigma_euler_factor(bases: Sequence[ArtinBase], system: AffineSystem, p: int) -> Fraction:
    """sigma at a prime p not dividing any disc, without the p^s scan.

    delta(a, b, p)/delta(a, 0, 1) then depends on b only through the classes
    b = 0, b = 1, other, so the scan collapses to inclusion-exclusion over
    forced classes, with each count an exact F_p linear-algebra solution.
    """
    for base in bases:
        if base.abs_disc % p == 0:
            raise ValueError(f"p = {p} divides disc of base {base.a}; use sigma()")
    v0, v1, vg = [], [], []
    for base in bases:
        baseline = delta(base, 0, 1)
        v0.append(Fraction(0))
        v1.append((delta(base, 1, p) / baseline).as_fraction())
        if p == 2:
            vg.append(Fraction(0))  # no residue outside {0,1}; any value cancels
        else:
            vg.append((delta(base, 2, p) / baseline).as_fraction())
    total = _forced_class_sum(system, p, v0, v1, vg)
    return total * Fraction(p) ** (system.t - system.s)


def beta_euler_factor(system: AffineSystem, p: int) -> Fraction:
    """beta at a prime: p^(t-s) |A(p)| / (p-1)^t via inclusion-exclusion."""
    one = Fraction(p, p - 1)
    v0 = [Fraction(0)] * system.t
    v1 = [one] * system.t
    vg = [one] * system.t
    total = _forced_class_sum(system, p, v0, v1, vg)
    return total * Fraction(p) ** (-system.s)
