"""Maximise sum phi_q b(q) (+ archimedean terms) over the feasible phi-region.

Two independent routes:

* ``greedy_bound`` exploits the structure of the optimum: one archimedean
  carrier, every included prime at full budget, primes taken in ascending
  order while their ratio b/a beats the running value.
* ``lp_bound`` hands the truncated problem, prime powers included, to the
  dense simplex in ``simplex.py``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import simplex
from .coefficients import (
    CoefficientFamily,
    DomainError,
    Objective,
    ObjectiveKind,
    arch_coeffs,
    coeff_a,
    coeff_a_array,
    coeff_b,
    coeff_b_array,
)
from .phi import PhiVector
from .primes import PrimePower, prime_powers, primes_up_to

TIE_TOL = 1e-14
MAX_LP_VARIABLES = 10**4


class Solver(enum.Enum):
    GREEDY = "greedy"
    LP = "lp"


class SweepMode(enum.Enum):
    FULL = "full"
    FIRST_TERM = "first-term"


@dataclass
class BoundResult:
    """Maximum of the objective; the liminf bound itself is ``-value``."""

    value: float
    phi: PhiVector
    carrier: Optional[str]
    included_primes: list[int]
    solver: Solver
    family: CoefficientFamily
    objective: Objective
    cutoffs: dict = field(default_factory=dict)
    first_rejected: Optional[tuple[int, float]] = None
    pivots: Optional[int] = None

    @property
    def bound(self) -> float:
        return -self.value

    def to_json(self) -> dict:
        return {
            "solver": self.solver.value,
            "family": str(self.family),
            "objective": str(self.objective),
            "value": self.value,
            "bound": self.bound,
            "carrier": self.carrier,
            "included_primes": list(self.included_primes),
            "first_rejected": (
                None
                if self.first_rejected is None
                else {"prime": self.first_rejected[0], "ratio": self.first_rejected[1]}
            ),
            "cutoffs": dict(self.cutoffs),
            "pivots": self.pivots,
            "phi": self.phi.to_json(),
        }


@dataclass
class _Scan:
    value: float
    count: int  # number of leading primes included
    numerator: float
    denominator: float
    rejected: Optional[int]  # index of first rejected prime


def _scan(ratio, b, a, weight, b_carrier, a_carrier) -> _Scan:
    """Ratio test over primes in ascending order, vectorised via prefix sums.

    Prime k joins while ratio[k] >= V(first k primes) - TIE_TOL; the first
    failure ends the scan since ratios decrease and V only grows.
    """
    num = b_carrier + weight * np.cumsum(b)
    den = a_carrier + weight * np.cumsum(a)
    before = np.concatenate(([b_carrier / a_carrier], (num / den)[:-1]))
    fails = np.flatnonzero(ratio < before - TIE_TOL)
    if fails.size:
        k = int(fails[0])
        rejected = k
    else:
        k = len(ratio)
        rejected = None
    if k == 0:
        n, d = b_carrier, a_carrier
    else:
        n, d = float(num[k - 1]), float(den[k - 1])
    return _Scan(n / d, k, n, d, rejected)


def greedy_bound(
    family: CoefficientFamily, objective: Objective, prime_cutoff: int = 100
) -> BoundResult:
    """Structured optimum over exponent-1 primes up to ``prime_cutoff``.

    Both archimedean carriers are scanned and the better one kept (ties go to C).
    With carrier C each included prime gets phi_p = 2 phi_C, with carrier R it
    gets phi_p = phi_R, and the Basic Inequality is made binding.
    """
    if not family.is_number_field:
        raise DomainError("greedy_bound handles number fields; use lp_bound or ff_closed_form")
    if prime_cutoff < 2:
        raise ValueError("prime_cutoff must be >= 2")
    primes = primes_up_to(prime_cutoff)
    a = coeff_a_array(family, primes)
    b = coeff_b_array(primes)
    ratio = b / a
    a_R, a_C = arch_coeffs(family)

    scans = {
        "C": _scan(ratio, b, a, 2.0, objective.b_C, a_C),
        "R": _scan(ratio, b, a, 1.0, objective.b_R, a_R),
    }
    carrier = "C" if scans["C"].value >= scans["R"].value else "R"
    scan = scans[carrier]

    t = 1.0 / scan.denominator
    weight = 2.0 if carrier == "C" else 1.0
    included = [int(p) for p in primes[: scan.count]]
    phi = PhiVector(
        tuple((PrimePower.of(p), weight * t) for p in included),
        phi_R=t if carrier == "R" else 0.0,
        phi_C=t if carrier == "C" else 0.0,
    )
    rejected = None
    if scan.rejected is not None:
        rejected = (int(primes[scan.rejected]), float(ratio[scan.rejected]))
    return BoundResult(
        value=scan.value,
        phi=phi,
        carrier=carrier,
        included_primes=included,
        solver=Solver.GREEDY,
        family=family,
        objective=objective,
        cutoffs={"prime_cutoff": prime_cutoff},
        first_rejected=rejected,
    )


@dataclass
class LPProblem:
    """max c.x subject to A x <= rhs, x >= 0.

    Row 0 is the Basic Inequality; for number fields the remaining rows are
    one per-prime budget row each. The last two variables are phi_R, phi_C
    (number fields only).
    """

    variables: list[PrimePower]
    has_arch: bool
    c: np.ndarray
    A: np.ndarray
    rhs: np.ndarray
    budget_primes: list[int]

    @property
    def n_variables(self) -> int:
        return self.A.shape[1]


def build_lp(
    family: CoefficientFamily, objective: Objective, P_max: int, M_max: int
) -> LPProblem:
    if M_max < 1:
        raise ValueError("M_max must be >= 1")
    if family.is_number_field:
        if P_max < 2:
            raise ValueError("P_max must be >= 2")
        variables = prime_powers(P_max, M_max)
    else:
        if objective.kind is ObjectiveKind.GAMMA_TILDE:
            raise DomainError("gamma-tilde needs archimedean places; function fields have none")
        q0 = family.q0
        variables = [PrimePower.of(q0.p, q0.m * k) for k in range(1, M_max + 1)]
    has_arch = family.is_number_field
    n = len(variables) + (2 if has_arch else 0)
    if n > MAX_LP_VARIABLES:
        raise ValueError(f"{n} LP variables exceeds the limit of {MAX_LP_VARIABLES}")

    c = np.array([coeff_b(q.q) for q in variables] + ([objective.b_R, objective.b_C] if has_arch else []))
    basic = [coeff_a(family, q) for q in variables]
    budget_primes: list[int] = []
    rows = []
    if has_arch:
        basic += list(arch_coeffs(family))
        budget_primes = sorted({q.p for q in variables})
        col_of_prime = {p: i for i, p in enumerate(budget_primes)}
        budget = np.zeros((len(budget_primes), n))
        for j, q in enumerate(variables):
            budget[col_of_prime[q.p], j] = q.m
        budget[:, -2] = -1.0
        budget[:, -1] = -2.0
        rows = [budget]
    A = np.vstack([np.array([basic])] + rows)
    rhs = np.zeros(A.shape[0])
    rhs[0] = 1.0
    return LPProblem(variables, has_arch, c, A, rhs, budget_primes)


def lp_bound(
    family: CoefficientFamily, objective: Objective, P_max: int = 100, M_max: int = 3
) -> BoundResult:
    """Optimum of the truncated LP by dense simplex (Bland's rule).

    For number fields the variables are all prime powers q <= P_max with
    exponent <= M_max plus phi_R, phi_C. For function fields they are the
    place norms q0**k, k = 1..M_max, and ``P_max`` is ignored.
    """
    lp = build_lp(family, objective, P_max, M_max)
    sol = simplex.solve(lp.c, lp.A, lp.rhs)
    x = sol.x
    k = len(lp.variables)
    phi = PhiVector(
        tuple((q, float(v)) for q, v in zip(lp.variables, x[:k]) if v > 0.0),
        phi_R=float(x[k]) if lp.has_arch else 0.0,
        phi_C=float(x[k + 1]) if lp.has_arch else 0.0,
    )
    carrier = None
    if lp.has_arch and (phi.phi_R > 0 or phi.phi_C > 0):
        carrier = "C" if phi.phi_C >= phi.phi_R else "R"
    included = [q.p for q, v in phi.finite_masses if q.m == 1 and v > 0]
    cutoffs = {"M_max": M_max}
    if family.is_number_field:
        cutoffs["P_max"] = P_max
    return BoundResult(
        value=sol.value,
        phi=phi,
        carrier=carrier,
        included_primes=included,
        solver=Solver.LP,
        family=family,
        objective=objective,
        cutoffs=cutoffs,
        pivots=sol.pivots,
    )


def sweep_unconditional(
    objective: Objective,
    cutoffs: Sequence[int],
    mode: SweepMode = SweepMode.FULL,
    arch_override: Optional[float] = None,
) -> list[tuple[int, float]]:
    """Greedy value of the unconditional problem at each prime cutoff."""
    cutoffs = list(cutoffs)
    if cutoffs != sorted(cutoffs):
        raise ValueError("cutoffs must be ascending")
    if mode is SweepMode.FULL:
        family = CoefficientFamily.uncond_full(arch_override)
    else:
        family = CoefficientFamily.uncond_first_term(arch_override)
    return [(c, greedy_bound(family, objective, c).value) for c in cutoffs]


def ff_closed_form(q0) -> float:
    """Optimum 1/(sqrt(q0) + 1) of the function-field problem over F_q0."""
    family = CoefficientFamily.ff(q0)
    return 1.0 / (math.sqrt(family.q0.q) + 1.0)


def ff_witness(q0) -> PhiVector:
    """phi_{q0} = (sqrt(q0) - 1)/log q0: the Basic Inequality is tight and the
    objective equals ``ff_closed_form(q0)``."""
    family = CoefficientFamily.ff(q0)
    q = family.q0
    return PhiVector(((q, (math.sqrt(q.q) - 1.0) / math.log(q.q)),))


def stopping_certificate(result: BoundResult) -> bool:
    """Check the greedy certificate: every included prime beats the value of
    the set without it, and the first rejected prime does not beat V(S)."""
    family, objective = result.family, result.objective
    a_R, a_C = arch_coeffs(family)
    if result.carrier == "C":
        w, n0, d0 = 2.0, objective.b_C, a_C
    else:
        w, n0, d0 = 1.0, objective.b_R, a_R
    S = result.included_primes
    bs = {p: coeff_b(p) for p in S}
    as_ = {p: coeff_a(family, PrimePower.of(p)) for p in S}
    N = n0 + w * sum(bs.values())
    D = d0 + w * sum(as_.values())
    for p in S:
        without = (N - w * bs[p]) / (D - w * as_[p])
        if not bs[p] / as_[p] > without - TIE_TOL:
            return False
    if result.first_rejected is not None:
        if not result.first_rejected[1] <= N / D:
            return False
    return math.isclose(N / D, result.value, rel_tol=1e-12)

