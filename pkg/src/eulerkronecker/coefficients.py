"""Constants and coefficient tables for the linear bound problems.

The constraint side ("Basic Inequality") is

    sum_q a(q) phi_q + a_R phi_R + a_C phi_C <= 1

and the objective side is

    sum_q b(q) phi_q + b_R phi_R + b_C phi_C,

with b(q) = log q / (q - 1) for every variant.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .primes import PrimePower

EULER_GAMMA = 0.57721566490153286060651209
PI = 3.14159265358979323846264338
LOG_2PI = math.log(2 * PI)
LOG_4PI = math.log(4 * PI)
LOG_8PI = math.log(8 * PI)

# series cutoffs for the unconditional full coefficient
_SERIES_MAX_POWER = 1e18
_SERIES_REL_TOL = 1e-18


class DomainError(ValueError):
    """Argument outside the domain of the requested coefficient family."""


class FamilyKind(enum.Enum):
    NF_GRH = "grh"
    NF_UNCOND_FULL = "uncond-full"
    NF_UNCOND_FIRST_TERM = "uncond-first-term"
    FF = "ff"


class ObjectiveKind(enum.Enum):
    GAMMA = "gamma"
    GAMMA_TILDE = "gamma-tilde"


@dataclass(frozen=True)
class CoefficientFamily:
    kind: FamilyKind
    q0: Optional[PrimePower] = None
    arch_override: Optional[float] = None

    def __post_init__(self):
        if self.kind is FamilyKind.FF:
            if self.q0 is None:
                raise DomainError("function-field family needs the constant field size q0")
            if self.arch_override is not None:
                raise DomainError("function fields have no archimedean places")
        elif self.q0 is not None:
            raise DomainError("q0 is only meaningful for function fields")

    @classmethod
    def grh(cls) -> "CoefficientFamily":
        return cls(FamilyKind.NF_GRH)

    @classmethod
    def uncond_full(cls, arch_override=None) -> "CoefficientFamily":
        return cls(FamilyKind.NF_UNCOND_FULL, arch_override=arch_override)

    @classmethod
    def uncond_first_term(cls, arch_override=None) -> "CoefficientFamily":
        return cls(FamilyKind.NF_UNCOND_FIRST_TERM, arch_override=arch_override)

    @classmethod
    def ff(cls, q0) -> "CoefficientFamily":
        if not isinstance(q0, PrimePower):
            try:
                q0 = PrimePower.from_int(int(q0))
            except ValueError as exc:
                raise DomainError(str(exc)) from None
        return cls(FamilyKind.FF, q0=q0)

    @property
    def is_number_field(self) -> bool:
        return self.kind is not FamilyKind.FF

    @property
    def a_R(self) -> Optional[float]:
        return arch_coeffs(self)[0] if self.is_number_field else None

    @property
    def a_C(self) -> Optional[float]:
        return arch_coeffs(self)[1] if self.is_number_field else None

    def ff_degree(self, q: PrimePower) -> int:
        """Degree m of a place of norm q = q0**m; DomainError otherwise."""
        q0 = self.q0
        if q.p != q0.p or q.m % q0.m:
            raise DomainError(f"{q.q} is not a power of q0 = {q0.q}")
        return q.m // q0.m

    def __str__(self):
        if self.kind is FamilyKind.FF:
            return f"ff(q={self.q0.q})"
        s = self.kind.value
        if self.arch_override is not None:
            s += f"[a_C={self.arch_override:.7g}]"
        return s


@dataclass(frozen=True)
class Objective:
    kind: ObjectiveKind

    @classmethod
    def gamma(cls) -> "Objective":
        return cls(ObjectiveKind.GAMMA)

    @classmethod
    def gamma_tilde(cls) -> "Objective":
        return cls(ObjectiveKind.GAMMA_TILDE)

    @property
    def b_R(self) -> float:
        if self.kind is ObjectiveKind.GAMMA:
            return 0.0
        return (EULER_GAMMA + LOG_4PI) / 2

    @property
    def b_C(self) -> float:
        if self.kind is ObjectiveKind.GAMMA:
            return 0.0
        return EULER_GAMMA + LOG_2PI

    def __str__(self):
        return self.kind.value


def _series_sum(q: int) -> float:
    """sum_{m>=1} 1/(q^m + 1), summed until q^m > 1e18 or the term is negligible."""
    total = 0.0
    qm = float(q)
    while qm <= _SERIES_MAX_POWER:
        term = 1.0 / (qm + 1.0)
        total += term
        if term < _SERIES_REL_TOL * total:
            break
        qm *= q
    return total


def coeff_a(family: CoefficientFamily, q: PrimePower) -> float:
    """Basic-Inequality coefficient of phi_q."""
    kind = family.kind
    log_q = math.log(q.q)
    if kind is FamilyKind.NF_GRH:
        return log_q / (math.sqrt(q.q) - 1)
    if kind is FamilyKind.NF_UNCOND_FULL:
        return 2 * log_q * _series_sum(q.q)
    if kind is FamilyKind.NF_UNCOND_FIRST_TERM:
        return 2 * log_q / (q.q + 1)
    # a degree-m place: m log q0 / (q0^{m/2} - 1)
    m = family.ff_degree(q)
    log_q0 = math.log(family.q0.q)
    return m * log_q0 / (family.q0.q ** (m / 2) - 1)


def coeff_b(q) -> float:
    """Objective coefficient log q / (q - 1)."""
    q = int(q)
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    return math.log(q) / (q - 1)


def arch_coeffs(family: CoefficientFamily) -> tuple[float, float]:
    """(a_R, a_C) for a number-field family, honouring ``arch_override`` for a_C."""
    kind = family.kind
    if kind is FamilyKind.FF:
        raise DomainError("function fields have no archimedean places")
    if kind is FamilyKind.NF_GRH:
        a_R = math.log(math.sqrt(8 * PI)) + PI / 4 + EULER_GAMMA / 2
        a_C = LOG_8PI + EULER_GAMMA
    else:
        a_R = EULER_GAMMA / 2 + 0.5 + math.log(2 * math.sqrt(PI))
        a_C = EULER_GAMMA + LOG_4PI
    if family.arch_override is not None:
        a_C = float(family.arch_override)
    return a_R, a_C


def coeff_a_array(family: CoefficientFamily, primes: np.ndarray) -> np.ndarray:
    """Vectorised coeff_a over an array of rational primes (exponent 1).

    Number-field families only; used by the large-cutoff sweeps.
    """
    q = primes.astype(np.float64)
    log_q = np.log(q)
    kind = family.kind
    if kind is FamilyKind.NF_GRH:
        return log_q / (np.sqrt(q) - 1)
    if kind is FamilyKind.NF_UNCOND_FIRST_TERM:
        return 2 * log_q / (q + 1)
    if kind is FamilyKind.NF_UNCOND_FULL:
        total = np.zeros_like(q)
        qm = q.copy()
        active = qm <= _SERIES_MAX_POWER
        while active.any():
            term = np.where(active, 1.0 / (qm + 1.0), 0.0)
            total += term
            active &= term >= _SERIES_REL_TOL * total
            with np.errstate(over="ignore"):
                qm = qm * q
            active &= qm <= _SERIES_MAX_POWER
        return 2 * log_q * total
    raise DomainError("vectorised coefficients are for number-field families")


def coeff_b_array(primes: np.ndarray) -> np.ndarray:
    q = primes.astype(np.float64)
    return np.log(q) / (q - 1)
