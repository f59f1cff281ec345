"""Chebotarev densities eta_{K,C}(b, q) from abelian-restriction data.

A :class:`ChebotarevSpec` stores only what the density depends on: the
conductor Phi of the maximal abelian subextension K^ab, the degree [K:Q],
the class size |C|, and the residues b mod Phi whose cyclotomic
automorphism restricts to K^ab the way C does.  That data determines
eta_{K,C}(b, q) exactly when Phi | q (and also when gcd(Phi, q) = 1, where
K meets Q(mu_q) trivially); other moduli raise NotRefinable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .artin import ArtinBase
from .errors import InvalidField, NotRefinable, NotSquarefree, ValidationError
from .ntheory import (
    euler_phi,
    fundamental_discriminant,
    is_squarefree,
    kronecker_symbol,
    squarefree_kernel,
)


@dataclass(frozen=True)
class ChebotarevSpec:
    conductor: int
    degree: int
    class_size: int
    allowed_residues: frozenset[int]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "allowed_residues", frozenset(self.allowed_residues))
        if self.conductor < 1 or self.degree < 1 or self.class_size < 1:
            raise ValidationError("conductor, degree and class size must be positive")
        if self.class_size > self.degree:
            raise ValidationError("|C| cannot exceed [K:Q]")
        units = {b % self.conductor for b in self.allowed_residues}
        if units != self.allowed_residues:
            raise ValidationError("allowed residues must be reduced mod the conductor")
        if any(math.gcd(b, self.conductor) != 1 for b in self.allowed_residues):
            raise ValidationError("allowed residues must be units mod the conductor")
        if not self.allowed_residues:
            raise ValidationError("the class restricts to some residue: set cannot be empty")
        phi = euler_phi(self.conductor)
        if phi % len(self.allowed_residues) != 0:
            raise ValidationError("residue set size must divide phi(conductor)")
        if self.degree % self.abelian_degree != 0:
            raise ValidationError("[K^ab:Q] must divide [K:Q]")

    @property
    def abelian_degree(self) -> int:
        """[K^ab:Q] = phi(conductor) / #allowed_residues (one coset of the fixing group)."""
        return euler_phi(self.conductor) // len(self.allowed_residues)

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "degree": self.degree,
            "class_size": self.class_size,
            "allowed_residues": sorted(self.allowed_residues),
            "label": self.label,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ChebotarevSpec":
        try:
            return cls(
                obj["conductor"], obj["degree"], obj["class_size"],
                frozenset(obj["allowed_residues"]), obj.get("label", ""),
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed spec JSON: {exc}") from exc


def eta(spec: ChebotarevSpec, b: int, q: int) -> Fraction:
    """Density of primes p = b mod q with Artin symbol C.

    For Phi | q:   |C| [K^ab:Q] / ([K:Q] phi(q)) on allowed residues, else 0.
    For gcd(Phi, q) = 1:   K and Q(mu_q) are linearly disjoint, so
    |C| / ([K:Q] phi(q)) whenever gcd(b, q) = 1.
    """
    if q < 1:
        raise ValueError("q must be positive")
    if math.gcd(b, q) != 1:
        return Fraction(0)
    if q % spec.conductor == 0:
        if b % spec.conductor not in spec.allowed_residues:
            return Fraction(0)
        return Fraction(spec.class_size * spec.abelian_degree, spec.degree * euler_phi(q))
    if math.gcd(spec.conductor, q) == 1:
        return Fraction(spec.class_size, spec.degree * euler_phi(q))
    raise NotRefinable(
        f"conductor {spec.conductor} neither divides nor is coprime to q = {q}"
    )


def trivial_spec() -> ChebotarevSpec:
    """K = Q: every prime qualifies."""
    return ChebotarevSpec(1, 1, 1, frozenset({0}), label="Q")


def quadratic_spec(d: int, split: bool) -> ChebotarevSpec:
    """Q(sqrt(d)) with C = {identity} (split) or {conjugation} (inert)."""
    if d == 0 or (d > 0 and math.isqrt(d) ** 2 == d):
        raise InvalidField(f"d = {d} does not define a quadratic field")
    disc = fundamental_discriminant(d)
    target = 1 if split else -1
    cond = abs(disc)
    allowed = frozenset(
        b for b in range(cond)
        if math.gcd(b, cond) == 1 and kronecker_symbol(disc, b) == target
    )
    name = f"Q(sqrt({squarefree_kernel(d)}))" + (" split" if split else " inert")
    return ChebotarevSpec(cond, 2, 1, allowed, label=name)


def build_gka_spec(base: ArtinBase, k: int) -> ChebotarevSpec:
    """Spec of (Q(mu_k, a^(1/k)), {identity}) for squarefree k.

    The maximal abelian subextension is Q(mu_k) for odd k and
    Q(mu_k, sqrt(a)) for even k; the degree comes from
    [G(k,a):Q] = k' phi(k) / eps with k' = k/gcd(k, h) and eps = 2 exactly
    when 2 | k and disc(Q(sqrt(a))) | k.
    """
    if k < 1 or not is_squarefree(k):
        raise NotSquarefree(f"k = {k} is not squarefree")
    k_prime = k // math.gcd(k, base.h)
    eps = 2 if (k % 2 == 0 and k % base.abs_disc == 0) else 1
    degree = k_prime * euler_phi(k) // eps
    if k % 2:
        cond = k if k > 1 else 1
        allowed = frozenset(b for b in range(cond) if math.gcd(b, cond) == 1 and b % k == 1 % k)
    else:
        k_odd = k // 2  # squarefree even k is 2 mod 4, so Q(mu_k) = Q(mu_{k/2})
        cond = math.lcm(k_odd, base.abs_disc)
        allowed = frozenset(
            b for b in range(cond)
            if math.gcd(b, cond) == 1 and b % k_odd == 1 % k_odd
            and kronecker_symbol(base.disc, b) == 1
        )
    return ChebotarevSpec(cond, degree, 1, allowed, label=f"G({k},{base.a})")


def eta_gka(base: ArtinBase, b: int, k: int, q: int) -> Fraction:
    """eta through the spec route; must agree with artin.eta_artin.

    Only defined when the spec's eta is (conductor | q or coprime); the
    closed route in :mod:`constellations.artin` has no such restriction.
    """
    return eta(build_gka_spec(base, k), b, q)


__all__ = [
    "ChebotarevSpec",
    "eta",
    "trivial_spec",
    "quadratic_spec",
    "build_gka_spec",
    "eta_gka",
]
