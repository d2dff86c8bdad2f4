import numpy as np
import pytest

from eulerkronecker.primes import (
    CapacityError,
    PrimePower,
    is_prime,
    prime_powers,
    primes_up_to,
    segmented_sieve,
)

from oracles import brute_prime_powers, trial_division_is_prime


def qs(pps):
    return [(pp.p, pp.m) for pp in pps]


def test_prime_powers_examples():
    assert qs(prime_powers(10, 2)) == [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)]
    assert [pp.q for pp in prime_powers(10, 1)] == [2, 3, 5, 7]
    assert [pp.q for pp in prime_powers(2, 1)] == [2]


@pytest.mark.parametrize("limit,m_max", [(100, 1), (500, 3), (1024, 10), (97, 2)])
def test_prime_powers_match_brute_force(limit, m_max):
    assert qs(prime_powers(limit, m_max)) == brute_prime_powers(limit, m_max)


def test_prime_powers_rejects_bad_input():
    with pytest.raises(CapacityError):
        prime_powers(2**62 + 1, 1)
    with pytest.raises(ValueError):
        prime_powers(1, 1)
    with pytest.raises(ValueError):
        prime_powers(10, 0)


@pytest.mark.parametrize("segment", [7, 64, 1000, 1 << 20])
def test_segmented_sieve_against_trial_division(segment):
    limit = 5000
    got = segmented_sieve(limit, segment_size=segment).tolist()
    assert got == [n for n in range(limit + 1) if trial_division_is_prime(n)]


def test_sieve_counts():
    # pi(10^k) for k = 1..6
    for k, count in enumerate([4, 25, 168, 1229, 9592, 78498], start=1):
        assert len(primes_up_to(10**k)) == count
    assert primes_up_to(1).size == 0


def test_sieve_capacity():
    with pytest.raises(CapacityError):
        segmented_sieve(10**8 + 1)


def test_primes_up_to_is_prefix_of_cache():
    big = primes_up_to(10**5)
    small = primes_up_to(1000)
    assert np.array_equal(big[: len(small)], small)


def test_prime_power_type():
    pp = PrimePower.from_int(243)
    assert (pp.p, pp.m, pp.q) == (3, 5, 243)
    assert PrimePower.from_int(2**61).m == 61
    assert str(PrimePower.of(2, 3)) == "2^3"
    for bad in (1, 6, 12, 100):
        with pytest.raises(ValueError):
            PrimePower.from_int(bad)
    with pytest.raises(ValueError):
        PrimePower(4, 4, 1)
    with pytest.raises(CapacityError):
        PrimePower.of(2, 63)
    assert sorted([PrimePower.of(3), PrimePower.of(2, 2), PrimePower.of(2)]) == [
        PrimePower.of(2),
        PrimePower.of(3),
        PrimePower.of(2, 2),
    ]


def test_is_prime_large():
    assert is_prime(1_000_000_007)
    assert not is_prime(1_000_000_007 * 3)
