"""Search for quadratic fields with prescribed split primes and a small radicand.

With the split set fixed, the gamma limit of the tower is
-(const) / ((1/2) log|d|), so ranking by value is ranking by |d|.  The
congruence and Legendre conditions are multiplicative in the ramified primes,
which lets each candidate subset be screened with precomputed characters.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

from .coefficients import Objective
from .primes import primes_up_to
from .towers import (
    DEFAULT_FEASIBILITY,
    Predicate,
    QuadraticSeed,
    evaluate_seed,
    quadratic_tower_seed,
    split_ok,
)

log = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 10**7
DEFAULT_MAX_EXPANSIONS = 2 * 10**6


class InfeasibleSearchError(ValueError):
    pass


@dataclass
class SearchSpec:
    split_primes: tuple[int, ...]
    t: int
    pool: int
    sign: int = -1
    predicate: Predicate = DEFAULT_FEASIBILITY
    top_k: int = 10
    max_expansions: int = DEFAULT_MAX_EXPANSIONS


@dataclass
class SearchHit:
    seed: QuadraticSeed
    value: float
    feasible: bool
    congruences_ok: bool

    def to_json(self) -> dict:
        return {
            "radicand": self.seed.radicand,
            "ramified_primes": list(self.seed.ramified_primes),
            "split_primes": list(self.seed.split_primes),
            "value": self.value,
            "feasible": self.feasible,
            "congruences_ok": self.congruences_ok,
        }


@dataclass
class SearchDiagnostics:
    method: str = ""
    candidates: int = 0
    subsets_examined: int = 0
    congruence_rejections: int = 0
    skipped_small_primes: Optional[int] = None
    exhausted: bool = True
    notes: list[str] = field(default_factory=list)


def _characters(spec: SearchSpec, pool: list[int]):
    """Per-candidate data: residue mod 8 and Legendre symbols at odd split primes."""
    odd_split = [p for p in spec.split_primes if p != 2]

    def legendre(a, p):
        return 1 if pow(a % p, (p - 1) // 2, p) == 1 else -1

    chars = {r: (r % 8, tuple(legendre(r, p) for p in odd_split)) for r in pool}
    sign_chars = (spec.sign % 8, tuple(legendre(spec.sign, p) for p in odd_split))
    need_mod8 = 2 in spec.split_primes
    return chars, sign_chars, need_mod8, len(odd_split)


def _admissible(subset, chars, sign_chars, need_mod8, n_odd) -> bool:
    res8 = sign_chars[0]
    symbols = list(sign_chars[1])
    for r in subset:
        c8, leg = chars[r]
        res8 = (res8 * c8) % 8
        for i in range(n_odd):
            symbols[i] *= leg[i]
    if need_mod8:
        if res8 != 1:
            return False
    elif res8 % 4 != 1:
        return False
    return all(s == 1 for s in symbols)


def _best_first(pool: list[int], t: int, max_expansions: int):
    """Yield t-subsets of ``pool`` (ascending) in increasing order of product."""
    n = len(pool)
    start = tuple(range(t))
    heap = [(math.prod(pool[i] for i in start), start)]
    seen = {start}
    expansions = 0
    while heap:
        prod, idx = heapq.heappop(heap)
        yield prod, idx
        expansions += 1
        if expansions >= max_expansions:
            return
        for k in range(t):
            nxt = idx[k] + 1
            limit = idx[k + 1] if k + 1 < t else n
            if nxt < limit:
                child = idx[:k] + (nxt,) + idx[k + 1 :]
                if child not in seen:
                    seen.add(child)
                    heapq.heappush(heap, (prod // pool[idx[k]] * pool[nxt], child))


def run_search(spec: SearchSpec) -> tuple[list[SearchHit], SearchDiagnostics]:
    split = tuple(sorted(set(spec.split_primes)))
    spec = SearchSpec(split, spec.t, spec.pool, spec.sign, spec.predicate, spec.top_k, spec.max_expansions)
    diag = SearchDiagnostics()
    if spec.t < 1:
        raise InfeasibleSearchError("need at least one ramified prime")
    if spec.sign not in (1, -1):
        raise InfeasibleSearchError("sign must be +1 or -1")
    if not spec.predicate(spec.t, len(split)):
        raise InfeasibleSearchError(
            f"tower predicate fails for t={spec.t} ramified and s={len(split)} split primes; "
            "no seed of this shape can qualify"
        )
    pool = [int(p) for p in primes_up_to(spec.pool) if p != 2 and p not in split]
    diag.candidates = len(pool)
    if len(pool) < spec.t:
        raise InfeasibleSearchError(
            f"only {len(pool)} admissible primes <= {spec.pool}, need t = {spec.t}"
        )
    chars, sign_chars, need_mod8, n_odd = _characters(spec, pool)

    found: list[tuple[int, tuple[int, ...]]] = []
    if math.comb(len(pool), spec.t) <= EXHAUSTIVE_LIMIT:
        diag.method = "exhaustive"
        for subset in itertools.combinations(pool, spec.t):
            diag.subsets_examined += 1
            if _admissible(subset, chars, sign_chars, need_mod8, n_odd):
                found.append((math.prod(subset), subset))
            else:
                diag.congruence_rejections += 1
        found.sort()
        found = found[: spec.top_k]
    else:
        diag.method = "best-first"
        for prod, idx in _best_first(pool, spec.t, spec.max_expansions):
            diag.subsets_examined += 1
            subset = tuple(pool[i] for i in idx)
            if _admissible(subset, chars, sign_chars, need_mod8, n_odd):
                found.append((prod, subset))
                if len(found) >= spec.top_k:
                    break
            else:
                diag.congruence_rejections += 1
        if len(found) < spec.top_k and diag.subsets_examined >= spec.max_expansions:
            diag.exhausted = False
            diag.notes.append(f"stopped after {spec.max_expansions} expansions")

    hits = []
    gamma = Objective.gamma()
    for _, subset in found:
        seed = QuadraticSeed(spec.sign, subset, split)
        congruences_ok = all(split_ok(seed, p) for p in split)
        tower = quadratic_tower_seed(seed)
        hits.append(
            SearchHit(
                seed=seed,
                value=evaluate_seed(tower, gamma),
                feasible=spec.predicate(spec.t, len(split)),
                congruences_ok=congruences_ok,
            )
        )
    hits.sort(key=lambda h: (h.value, abs(h.seed.radicand), h.seed.ramified_primes))
    if hits:
        smallest = set(pool[: spec.t])
        diag.skipped_small_primes = len(smallest - set(hits[0].seed.ramified_primes))
    log.debug("search %s: %s", spec, diag)
    return hits, diag


def search_quadratic(spec: SearchSpec) -> list[SearchHit]:
    """Ranked admissible seeds, most negative value first."""
    return run_search(spec)[0]
