"""Asymptotic bounds for the Euler-Kronecker constant of global fields."""

from .coefficients import (
    EULER_GAMMA,
    CoefficientFamily,
    DomainError,
    FamilyKind,
    Objective,
    ObjectiveKind,
    arch_coeffs,
    coeff_a,
    coeff_b,
)
from .optimizer import (
    BoundResult,
    Solver,
    SweepMode,
    ff_closed_form,
    ff_witness,
    greedy_bound,
    lp_bound,
    sweep_unconditional,
)
from .phi import PhiVector, ValidationReport, limit_value, validate
from .primes import CapacityError, PrimePower, prime_powers
from .search import SearchHit, SearchSpec, search_quadratic
from .towers import (
    QuadraticSeed,
    TowerSeed,
    discriminant_alpha,
    evaluate_seed,
    split_ok,
    tower_feasible,
    tower_phi,
)

__version__ = "0.1.0"
