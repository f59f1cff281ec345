"""Exact local densities and singular series for prime constellations with
primitive-root and Artin-symbol restrictions, plus the machinery to verify
the predictions against actual primes."""

from .affine import AP3, INTRO4, AffineSystem, named_system, three_primes_system
from .artin import (
    ArtinBase,
    SymbolicDensity,
    artin_constant,
    beta_of_q,
    cA,
    delta,
    delta_series,
    eta_artin,
    f_dagger,
    f_ddagger,
    make_base,
)
from .chebotarev import (
    ChebotarevSpec,
    build_gka_spec,
    eta,
    quadratic_spec,
    trivial_spec,
)
from .local_densities import (
    DensityValue,
    beta,
    beta_euler_factor,
    sigma,
    sigma_euler_factor,
    tau,
)
from .ntheory import (
    Factorization,
    Rational,
    crt,
    euler_phi,
    factor,
    fundamental_discriminant,
    kronecker_symbol,
    moebius,
    radical,
)
from .pair_search import (
    AppendixInstance,
    ConductorCandidate,
    build_f_k,
    conductor_candidate,
    local_solution,
    search_pairs,
    verify_pair,
)
from .primes import (
    HooleyReport,
    IntPolynomial,
    PrimeTable,
    artin_prime_table,
    hooley_check,
    is_prime,
    is_primitive_root,
    multiplicative_order,
    poly_discriminant,
    sieve,
    splits_completely,
)
from .singular_series import (
    ObstructionReport,
    SeriesValue,
    artin_series,
    cheb_series,
    obstruction_scan,
    table1,
    table2a,
    table2b,
)
from .verifier import (
    Region,
    RestrictionPredicate,
    VerificationReport,
    chebotarev_progression_check,
    congruence,
    count_constellations,
    poly_split,
    predicted_main_term,
    primitive_root,
    quadratic_split,
    unrestricted,
    volume,
)

__version__ = "0.1.0"
