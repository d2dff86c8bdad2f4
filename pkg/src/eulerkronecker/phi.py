"""Invariants of asymptotically exact families and the limit of gamma_K / alpha_K."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping

from .coefficients import CoefficientFamily, Objective, arch_coeffs, coeff_a, coeff_b
from .primes import PrimePower

FEASIBILITY_TOL = 1e-12


@dataclass(frozen=True)
class PhiVector:
    """Finitely supported phi-data: masses on prime powers plus phi_R, phi_C.

    Masses are stored sorted by q so every sum runs in ascending order.
    Zero masses are dropped.
    """

    finite_masses: tuple[tuple[PrimePower, float], ...] = ()
    phi_R: float = 0.0
    phi_C: float = 0.0

    def __post_init__(self):
        masses = self.finite_masses
        if isinstance(masses, Mapping):
            masses = masses.items()
        pairs = sorted(
            (q if isinstance(q, PrimePower) else PrimePower.from_int(int(q)), float(v))
            for q, v in masses
        )
        merged: dict[PrimePower, float] = defaultdict(float)
        for q, v in pairs:
            merged[q] += v
        items = tuple(sorted((q, v) for q, v in merged.items() if v != 0.0))
        object.__setattr__(self, "finite_masses", items)
        object.__setattr__(self, "phi_R", float(self.phi_R))
        object.__setattr__(self, "phi_C", float(self.phi_C))

    @classmethod
    def from_ints(cls, masses: Mapping[int, float], phi_R=0.0, phi_C=0.0) -> "PhiVector":
        return cls(tuple(masses.items()), phi_R, phi_C)

    def mass(self, q) -> float:
        q = int(q)
        for k, v in self.finite_masses:
            if k.q == q:
                return v
        return 0.0

    def as_dict(self) -> dict[int, float]:
        return {q.q: v for q, v in self.finite_masses}

    def scaled(self, s: float) -> "PhiVector":
        return PhiVector(
            tuple((q, s * v) for q, v in self.finite_masses), s * self.phi_R, s * self.phi_C
        )

    def __add__(self, other: "PhiVector") -> "PhiVector":
        return PhiVector(
            self.finite_masses + other.finite_masses,
            self.phi_R + other.phi_R,
            self.phi_C + other.phi_C,
        )

    def to_json(self) -> dict:
        return {
            "finite_masses": {str(q.q): v for q, v in self.finite_masses},
            "phi_R": self.phi_R,
            "phi_C": self.phi_C,
        }


@dataclass
class ValidationReport:
    basic_inequality_lhs: float
    budget_violations: list[tuple[int, float]] = field(default_factory=list)
    negative_mass_violations: list[tuple[str, float]] = field(default_factory=list)

    @property
    def basic_inequality_slack(self) -> float:
        return 1.0 - self.basic_inequality_lhs

    @property
    def feasible(self) -> bool:
        return (
            not self.budget_violations
            and not self.negative_mass_violations
            and self.basic_inequality_slack >= -FEASIBILITY_TOL
        )


def limit_value(phi: PhiVector, objective: Objective) -> float:
    """-(sum_q phi_q b(q) + phi_R b_R + phi_C b_C), summed in ascending q."""
    total = 0.0
    for q, v in phi.finite_masses:
        total += v * coeff_b(q.q)
    total += phi.phi_R * objective.b_R
    total += phi.phi_C * objective.b_C
    return -total


def objective_value(phi: PhiVector, objective: Objective) -> float:
    """The maximised quantity, i.e. ``-limit_value``."""
    return -limit_value(phi, objective)


def basic_inequality_lhs(phi: PhiVector, family: CoefficientFamily) -> float:
    total = 0.0
    for q, v in phi.finite_masses:
        total += v * coeff_a(family, q)
    if family.is_number_field:
        a_R, a_C = arch_coeffs(family)
        total += phi.phi_R * a_R
        total += phi.phi_C * a_C
    return total


def validate(phi: PhiVector, family: CoefficientFamily) -> ValidationReport:
    """Check nonnegativity, the per-prime budget and the Basic Inequality.

    Function-field families only get the Basic-Inequality row.
    """
    report = ValidationReport(basic_inequality_lhs(phi, family))
    for q, v in phi.finite_masses:
        if v < 0:
            report.negative_mass_violations.append((str(q), v))
    if not family.is_number_field:
        return report
    for name, v in (("R", phi.phi_R), ("C", phi.phi_C)):
        if v < 0:
            report.negative_mass_violations.append((name, v))
    used: dict[int, float] = defaultdict(float)
    for q, v in phi.finite_masses:
        used[q.p] += q.m * v
    cap = phi.phi_R + 2 * phi.phi_C
    for p in sorted(used):
        excess = used[p] - cap
        if excess > FEASIBILITY_TOL:
            report.budget_violations.append((p, excess))
    return report

