"""Class field tower examples: base-field data to limiting phi-vectors.

In an unramified tower both the place counts and alpha grow with the degree,
so the limit phi-data of the tower is read off the base field:
phi_q = (number of places of norm q) / alpha.  Only the prescribed split
places are counted; any further places can only push the value down.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Optional, Union

from .coefficients import Objective
from .phi import PhiVector, limit_value
from .primes import PrimePower, is_prime


class SeedError(ValueError):
    """A seed that is well-formed but mathematically unusable."""


class CongruenceError(SeedError):
    pass


class UnsupportedSeedError(SeedError):
    pass


class SeedFileError(ValueError):
    """Malformed seed file."""


class Provenance(enum.Enum):
    QUADRATIC_DERIVED = "quadratic"
    EXTERNAL = "external"


@dataclass(frozen=True)
class QuadraticSeed:
    """Q(sqrt(d)) with d = sign * prod(ramified_primes), d odd and squarefree."""

    sign: int
    ramified_primes: tuple[int, ...]
    split_primes: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ramified_primes", tuple(sorted(self.ramified_primes)))
        object.__setattr__(self, "split_primes", tuple(sorted(self.split_primes)))
        if self.sign not in (1, -1):
            raise SeedError(f"sign must be +1 or -1, got {self.sign}")
        rp = self.ramified_primes
        if not rp:
            raise SeedError("need at least one ramified prime")
        if len(set(rp)) != len(rp):
            raise SeedError("ramified primes must be distinct")
        for p in rp:
            if p == 2:
                raise SeedError("2 in the radicand is not supported (odd radicands only)")
            if not is_prime(p):
                raise SeedError(f"{p} is not prime")
        for p in self.split_primes:
            if not is_prime(p):
                raise SeedError(f"{p} is not prime")
        common = set(rp) & set(self.split_primes)
        if common:
            raise SeedError(f"primes {sorted(common)} cannot be both ramified and split")

    @property
    def radicand(self) -> int:
        return self.sign * math.prod(self.ramified_primes)

    def describe(self) -> str:
        body = ".".join(str(p) for p in self.ramified_primes)
        return f"Q(sqrt({'-' if self.sign < 0 else ''}{body}))"


@dataclass(frozen=True)
class TowerSeed:
    label: str
    alpha: float
    r1: int
    r2: int
    split_places: tuple[tuple[int, int], ...]
    provenance: Provenance
    source: str = ""

    def __post_init__(self):
        if not self.alpha > 0:
            raise SeedError(f"alpha must be positive, got {self.alpha}")
        if self.r1 < 0 or self.r2 < 0:
            raise SeedError("r1 and r2 must be nonnegative")
        places = []
        for q, count in self.split_places:
            try:
                PrimePower.from_int(int(q))
            except ValueError:
                raise SeedError(f"split place norm {q} is not a prime power") from None
            if count < 1:
                raise SeedError(f"place count for q={q} must be positive")
            places.append((int(q), int(count)))
        object.__setattr__(self, "split_places", tuple(places))
        if self.provenance is Provenance.QUADRATIC_DERIVED and self.r1 + 2 * self.r2 != 2:
            raise SeedError("a quadratic seed has r1 + 2 r2 = 2")


def discriminant_alpha(seed: QuadraticSeed) -> tuple[str, float]:
    """Discriminant description and alpha = log sqrt|d| = (1/2) sum log p.

    Only d = 1 (mod 4) is handled, where the discriminant equals the radicand.
    """
    d = seed.radicand
    if d % 4 != 1:
        if 2 in seed.split_primes:
            raise CongruenceError(
                f"radicand {d} = 3 (mod 4): 2 ramifies, so it cannot split"
            )
        raise UnsupportedSeedError(
            f"radicand {d} = 3 (mod 4) gives discriminant 4d; only d = 1 (mod 4) is supported"
        )
    alpha = 0.5 * math.fsum(math.log(p) for p in seed.ramified_primes)
    return f"d = {d}", alpha


def split_ok(seed: QuadraticSeed, p: int) -> bool:
    """Whether p splits in Q(sqrt(d)), d the signed radicand (d = 1 mod 4)."""
    if p in seed.ramified_primes:
        raise SeedError(f"{p} is ramified in {seed.describe()}")
    d = seed.radicand
    if p == 2:
        return d % 8 == 1
    # Euler's criterion
    return pow(d % p, (p - 1) // 2, p) == 1


def check_quadratic(seed: QuadraticSeed) -> None:
    """Raise CongruenceError unless every prescribed split prime splits."""
    discriminant_alpha(seed)
    for p in seed.split_primes:
        if not split_ok(seed, p):
            raise CongruenceError(f"{p} does not split in {seed.describe()}")


def quadratic_tower_seed(seed: QuadraticSeed, label: str = "", source: str = "") -> TowerSeed:
    check_quadratic(seed)
    _, alpha = discriminant_alpha(seed)
    r1, r2 = (2, 0) if seed.sign > 0 else (0, 1)
    return TowerSeed(
        label=label or seed.describe(),
        alpha=alpha,
        r1=r1,
        r2=r2,
        split_places=tuple((p, 2) for p in seed.split_primes),
        provenance=Provenance.QUADRATIC_DERIVED,
        source=source,
    )


def alpha_from_root_discriminant(rd: float, degree: int) -> float:
    """alpha = log sqrt|d| = (degree / 2) log rd."""
    return 0.5 * degree * math.log(rd)


def tower_phi(seed: TowerSeed) -> PhiVector:
    return PhiVector(
        tuple((q, count / seed.alpha) for q, count in seed.split_places),
        phi_R=seed.r1 / seed.alpha,
        phi_C=seed.r2 / seed.alpha,
    )


def evaluate_seed(seed: TowerSeed, objective: Objective) -> float:
    """Upper bound on liminf gamma_K/alpha_K (or its completed variant) from this tower."""
    return limit_value(tower_phi(seed), objective)


# -- infinite-tower predicate -------------------------------------------------

Predicate = Callable[[int, int], bool]


def default_threshold(s: int) -> float:
    return 2 + 2 * math.sqrt(s + 2)


@dataclass(frozen=True)
class FeasibilityConfig:
    """Sufficient condition for an infinite 2-class tower with s split primes.

    The 2-rank from genus theory is t - 1; requiring s splittings costs s more
    relations, and the remainder must clear a Golod-Shafarevich type threshold.
    ``threshold`` may be replaced to use a different criterion.
    """

    threshold: Callable[[int], float] = default_threshold

    def __call__(self, t: int, s: int) -> bool:
        return t - 1 - s >= self.threshold(s)


DEFAULT_FEASIBILITY = FeasibilityConfig()


def tower_feasible(t: int, s: int, config: Optional[Predicate] = None) -> bool:
    if t < 1 or s < 0:
        raise ValueError("need t >= 1 and s >= 0")
    return (config or DEFAULT_FEASIBILITY)(t, s)


# -- seed files ---------------------------------------------------------------


@dataclass
class SeedRecord:
    """One parsed record of a seed file plus any reference value it carries."""

    index: int
    label: str
    kind: str
    raw: dict
    reference_objective: Optional[str] = None
    reference_value: Optional[float] = None
    tolerance: Optional[float] = None
    quadratic: Optional[QuadraticSeed] = field(default=None, repr=False)

    def to_tower_seed(self) -> TowerSeed:
        """Build the TowerSeed; raises SeedError for unusable records."""
        rec = self.raw
        source = rec.get("source", "")
        if self.kind == "quadratic":
            self.quadratic = QuadraticSeed(
                int(rec["sign"]), tuple(rec["ramified_primes"]), tuple(rec.get("split_primes", ()))
            )
            return quadratic_tower_seed(self.quadratic, self.label, source)
        return TowerSeed(
            label=self.label,
            alpha=float(rec["alpha"]),
            r1=int(rec.get("r1", 0)),
            r2=int(rec.get("r2", 0)),
            split_places=tuple((int(q), int(c)) for q, c in rec.get("split_places", ())),
            provenance=Provenance.EXTERNAL,
            source=source,
        )


def _require(cond: bool, index: int, msg: str) -> None:
    if not cond:
        raise SeedFileError(f"record {index}: {msg}")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_seed_records(text: str) -> list[SeedRecord]:
    """Parse seed-file JSON; structural problems raise SeedFileError with context."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeedFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, list):
        raise SeedFileError("top level must be a JSON array of seed records")
    out = []
    for i, rec in enumerate(data):
        _require(isinstance(rec, dict), i, "not a JSON object")
        _require(isinstance(rec.get("label"), str), i, "missing string 'label'")
        kind = rec.get("kind")
        _require(kind in ("quadratic", "external"), i, f"unknown kind {kind!r}")
        if kind == "quadratic":
            _require(rec.get("sign") in (1, -1), i, "'sign' must be 1 or -1")
            for key in ("ramified_primes", "split_primes"):
                vals = rec.get(key, [])
                _require(
                    isinstance(vals, list) and all(_is_int(v) for v in vals),
                    i,
                    f"'{key}' must be a list of integers",
                )
        else:
            alpha = rec.get("alpha")
            _require(
                isinstance(alpha, (int, float)) and not isinstance(alpha, bool),
                i,
                "external record needs numeric 'alpha'",
            )
            for key in ("r1", "r2"):
                _require(_is_int(rec.get(key, 0)), i, f"'{key}' must be an integer")
            places = rec.get("split_places", [])
            _require(
                isinstance(places, list)
                and all(isinstance(p, list) and len(p) == 2 and all(map(_is_int, p)) for p in places),
                i,
                "'split_places' must be a list of [q, count] integer pairs",
            )
        ref = rec.get("reference")
        ref_obj = ref_val = tol = None
        if ref is not None:
            _require(isinstance(ref, dict), i, "'reference' must be an object")
            ref_obj = ref.get("objective")
            _require(ref_obj in ("gamma", "gamma-tilde"), i, "bad reference objective")
            ref_val, tol = ref.get("value"), ref.get("tolerance")
            _require(isinstance(ref_val, (int, float)), i, "reference needs numeric 'value'")
            _require(isinstance(tol, (int, float)), i, "reference needs numeric 'tolerance'")
        out.append(SeedRecord(i, rec["label"], kind, rec, ref_obj, ref_val, tol))
    return out


def load_seed_file(path: Union[str, Path]) -> list[SeedRecord]:
    return parse_seed_records(Path(path).read_text())


def bundled_seed_text() -> str:
    return resources.files("eulerkronecker").joinpath("data/tower_examples.json").read_text()


def bundled_records() -> list[SeedRecord]:
    return parse_seed_records(bundled_seed_text())


def bundled_seeds() -> dict[str, TowerSeed]:
    return {r.label: r.to_tower_seed() for r in bundled_records()}

