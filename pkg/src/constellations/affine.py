"""Systems of affine-linear forms psi_i: Z^s -> Z, psi_i(n) = c_i + <row_i, n>.

The canonical JSON shape is
    {"s": 2, "t": 3, "constants": [0,0,0], "coefficients": [[1,0],[1,1],[1,2]]}
and the built-in named systems live in :func:`named_system`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidSystem

_COEFF_BOUND = 2**31  # keeps q-modular evaluation inside 64-bit intermediates
_CONST_BOUND = 2**62


@dataclass(frozen=True)
class AffineSystem:
    constants: tuple[int, ...]
    coefficients: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        t = len(self.constants)
        if t < 1 or len(self.coefficients) != t:
            raise InvalidSystem("need one constant per form, at least one form")
        s = len(self.coefficients[0])
        if s < 1 or any(len(row) != s for row in self.coefficients):
            raise InvalidSystem("coefficient rows must share one positive length")
        if any(abs(c) >= _COEFF_BOUND for row in self.coefficients for c in row):
            raise InvalidSystem("linear coefficients must fit in 32 bits")
        if any(abs(c) >= _CONST_BOUND for c in self.constants):
            raise InvalidSystem("constants must fit in 63 bits")

    @property
    def s(self) -> int:
        return len(self.coefficients[0])

    @property
    def t(self) -> int:
        return len(self.constants)

    def evaluate(self, point: Sequence[int]) -> tuple[int, ...]:
        if len(point) != self.s:
            raise DimensionMismatch(f"point has length {len(point)}, system domain is Z^{self.s}")
        return tuple(
            c + sum(a * x for a, x in zip(row, point))
            for c, row in zip(self.constants, self.coefficients)
        )

    def finite_complexity(self) -> bool:
        """True iff no linear part vanishes and no two are Q-proportional."""
        rows = self.coefficients
        if any(all(a == 0 for a in row) for row in rows):
            return False
        for u, v in itertools.combinations(rows, 2):
            # all 2x2 minors vanish <=> proportional over Q
            if _proportional(u, v):
                return False
        return True

    def size_norm(self, N: int) -> Fraction:
        """sum |coefficients| + sum |constant_i| / N, exactly."""
        if N < 1:
            raise ValueError("N must be positive")
        lin = sum(abs(a) for row in self.coefficients for a in row)
        return lin + Fraction(sum(abs(c) for c in self.constants), N)

    def reduce_mod(self, q: int) -> "ResidueSystem":
        if q < 1:
            raise ValueError("q must be positive")
        return ResidueSystem(self, q)

    def evaluate_mod_arrays(self, q: int, columns: Sequence[np.ndarray]) -> list[np.ndarray]:
        """Vectorized psi_i mod q for lattice columns (internal bulk path)."""
        out = []
        for c, row in zip(self.constants, self.coefficients):
            acc = np.full(columns[0].shape, c % q, dtype=np.int64)
            for a, col in zip(row, columns):
                if a:
                    acc += (a % q) * col
            out.append(acc % q)
        return out

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "constants": list(self.constants),
            "coefficients": [list(r) for r in self.coefficients],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AffineSystem":
        try:
            sys = cls(tuple(obj["constants"]), tuple(tuple(r) for r in obj["coefficients"]))
        except (KeyError, TypeError) as exc:
            raise InvalidSystem(f"malformed system JSON: {exc}") from exc
        if "s" in obj and obj["s"] != sys.s:
            raise InvalidSystem(f"declared s={obj['s']} but coefficients have s={sys.s}")
        if "t" in obj and obj["t"] != sys.t:
            raise InvalidSystem(f"declared t={obj['t']} but system has t={sys.t}")
        return sys


def _proportional(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(
        u[i] * v[j] == u[j] * v[i]
        for i in range(len(u))
        for j in range(i + 1, len(u))
    )


class ResidueSystem:
    """Iterates the residue tuples (psi_1(n),...,psi_t(n)) mod q over n in (Z/q)^s."""

    def __init__(self, system: AffineSystem, q: int):
        self.system = system
        self.q = q

    def __len__(self) -> int:
        return self.q**self.system.s

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        q = self.q
        for n in itertools.product(range(q), repeat=self.system.s):
            yield tuple(v % q for v in self.system.evaluate(n))


AP3 = AffineSystem((0, 0, 0), ((1, 0), (1, 1), (1, 2)))
INTRO4 = AffineSystem((0, 0, -1, -2), ((1, 0), (0, 1), (1, 1), (1, 2)))


def three_primes_system(N: int) -> AffineSystem:
    """(n1, n2, N - n1 - n2): Vinogradov's equation as a 2-parameter system."""
    return AffineSystem((0, 0, N), ((1, 0), (0, 1), (-1, -1)))


def named_system(name: str, N: int | None = None) -> AffineSystem:
    """Built-in systems: 'ap3', 'intro4', 'threeprimes' (needs N)."""
    if name == "ap3":
        return AP3
    if name == "intro4":
        return INTRO4
    if name == "threeprimes":
        if N is None:
            raise InvalidSystem("the threeprimes system needs a concrete N")
        return three_primes_system(N)
    raise InvalidSystem(f"unknown named system {name!r}")
