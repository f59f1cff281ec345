"""Exception hierarchy shared by all modules.

ValidationError subclasses map to CLI exit code 2 (bad input),
ComputationError subclasses to exit code 3 (the computation itself
refused or failed).
"""


class ConstellationError(Exception):
    exit_code = 3


class ValidationError(ConstellationError):
    exit_code = 2


class ComputationError(ConstellationError):
    exit_code = 3


class Incompatible(ComputationError):
    """CRT moduli conflict."""


class DimensionMismatch(ValidationError):
    """Point length does not match the system's domain dimension."""


class InvalidSystem(ValidationError):
    """Affine system violates shape or coefficient-size constraints."""


class InvalidBase(ValidationError):
    """Base a is -1, 0, 1 or a perfect square."""


class PoleAtTwo(ComputationError):
    """1/(p-2) factor hit at p=2; cannot occur for valid bases but guarded."""


class NotSquarefree(ValidationError):
    """Index k must be squarefree."""


class NotRefinable(ComputationError):
    """Chebotarev spec carries too little data for this modulus."""


class InvalidField(ValidationError):
    """d defines no quadratic field (square or zero)."""


class ZeroBaseline(ComputationError):
    """delta(a,0,1) = 0; impossible for valid bases but guarded."""


class InfiniteComplexity(ValidationError):
    """Two forms have linearly dependent linear parts."""


class RangeTooLarge(ValidationError):
    """Sieve range outside the supported window."""


class NotPrime(ValidationError):
    """Argument required to be prime is not."""


class Ramified(ComputationError):
    """Prime divides the discriminant; the splitting predicate is undefined."""


class Overflow(ValidationError):
    """Form values exceed the 10^9 enumeration window."""


class RegionUnbounded(ValidationError):
    """Region has no finite bounding box."""


class NoSolution(ComputationError):
    """Constructive congruence solution failed its own verification."""
