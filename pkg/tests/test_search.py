import itertools
import math

import pytest

from eulerkronecker import search
from eulerkronecker.coefficients import Objective
from eulerkronecker.search import InfeasibleSearchError, SearchSpec, run_search, search_quadratic
from eulerkronecker.towers import evaluate_seed, quadratic_tower_seed, split_ok, tower_feasible

from oracles import brute_splits, brute_splits_2, primes_below, quadratic_tower_value

ZYKIN_RADICAND = -(5 * 7 * 11 * 13 * 17 * 19 * 23 * 29 * 31 * 37)


def test_zykin_is_top_hit():
    hits, diag = run_search(SearchSpec((2, 3), t=10, pool=50, sign=-1))
    assert diag.method == "exhaustive"
    assert hits[0].seed.radicand == ZYKIN_RADICAND
    assert hits[0].value == pytest.approx(-0.17849, abs=2e-5)


def _brute_best(split, t, pool, sign):
    """Independent exhaustive search using plain quadratic-residue checks."""
    cands = [p for p in primes_below(pool) if p != 2 and p not in split]
    best = None
    for subset in itertools.combinations(cands, t):
        d = sign * math.prod(subset)
        if d % 4 != 1:
            continue
        if 2 in split and not brute_splits_2(d):
            continue
        if all(brute_splits(d, p) for p in split if p != 2):
            v = quadratic_tower_value(split, subset)
            if best is None or v < best[0]:
                best = (v, d)
    return best


@pytest.mark.parametrize(
    "split,t,pool",
    [((2, 3), 10, 50), ((2, 3, 5), 12, 60), ((2, 3, 5, 7, 11), 15, 80), ((2,), 8, 40)],
)
def test_top_hit_matches_brute_force(split, t, pool):
    hits = search_quadratic(SearchSpec(split, t, pool, -1, top_k=1))
    best = _brute_best(split, t, pool, -1)
    assert hits[0].seed.radicand == best[1]
    assert hits[0].value == pytest.approx(best[0], rel=1e-12)


def test_published_examples_reached():
    hits = search_quadratic(SearchSpec((2, 3, 5), t=12, pool=80, sign=-1))
    assert hits[0].value <= -0.1737
    radicands = {h.seed.radicand for h in hits}
    assert -(7 * 11 * 13 * 17 * 19 * 23 * 29 * 31 * 37 * 41 * 47 * 59) in radicands
    hits = search_quadratic(SearchSpec((2, 3, 5, 7, 11), t=15, pool=80, sign=-1))
    assert hits[0].value <= -0.1635


def test_hits_revalidate():
    spec = SearchSpec((2, 3, 5), t=12, pool=70, sign=-1, top_k=25)
    hits = search_quadratic(spec)
    assert len(hits) == 25
    gamma = Objective.gamma()
    for h in hits:
        assert h.congruences_ok and h.feasible
        assert all(split_ok(h.seed, p) for p in spec.split_primes)
        assert tower_feasible(spec.t, len(spec.split_primes))
        assert h.value == pytest.approx(evaluate_seed(quadratic_tower_seed(h.seed), gamma), rel=1e-12)
    keys = [(h.value, abs(h.seed.radicand)) for h in hits]
    assert keys == sorted(keys)


def test_pool_enlargement_never_worsens():
    for split, t, pools in [((2, 3), 10, (43, 50, 70)), ((2, 3, 5), 12, (60, 80))]:
        best = [search_quadratic(SearchSpec(split, t, p, top_k=1))[0].value for p in pools]
        assert all(b2 <= b1 for b1, b2 in zip(best, best[1:]))


def test_best_first_agrees_with_exhaustive(monkeypatch):
    spec = SearchSpec((2, 3, 5), t=12, pool=80, sign=-1, top_k=8)
    exhaustive = search_quadratic(spec)
    monkeypatch.setattr(search, "EXHAUSTIVE_LIMIT", 0)
    hits, diag = run_search(spec)
    assert diag.method == "best-first"
    assert [h.seed.radicand for h in hits] == [h.seed.radicand for h in exhaustive]


def test_best_first_on_a_large_pool():
    # C(166, 10) is far beyond the exhaustive limit
    hits, diag = run_search(SearchSpec((2, 3), t=10, pool=1000, sign=-1, top_k=3))
    assert diag.method == "best-first" and diag.exhausted
    assert hits[0].seed.radicand == ZYKIN_RADICAND


def test_real_quadratic_search():
    hits = search_quadratic(SearchSpec((2, 3, 5, 7), t=15, pool=70, sign=1, top_k=1))
    assert hits[0].seed.radicand > 0
    assert hits[0].value <= -0.1515


def test_infeasible_specs():
    with pytest.raises(InfeasibleSearchError, match="predicate"):
        run_search(SearchSpec((2, 3), t=5, pool=50))
    with pytest.raises(InfeasibleSearchError, match="admissible"):
        run_search(SearchSpec((2, 3), t=10, pool=30))


def test_custom_predicate():
    hits = search_quadratic(SearchSpec((2,), t=3, pool=40, predicate=lambda t, s: True, top_k=2))
    assert hits and all(h.seed.radicand % 8 == 1 for h in hits)


def test_deterministic():
    spec = SearchSpec((2, 3, 5), t=12, pool=70, top_k=10)
    a = [h.to_json() for h in search_quadratic(spec)]
    b = [h.to_json() for h in search_quadratic(spec)]
    assert a == b
