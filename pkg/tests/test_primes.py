import pytest
from fractions import Fraction

from subsetcert.errors import EmptyIntervalError, PreconditionError
from subsetcert.primes import Surd, is_prime, pick_p, pick_q, smallest_prime_in

from conftest import sieve

PRIMES = sieve(200_000)
PRIME_SET = set(PRIMES)


def test_is_prime_examples():
    assert is_prime(17)
    assert not is_prime(1)
    assert not is_prime(273)


def test_is_prime_matches_sieve():
    assert all(is_prime(x) == (x in PRIME_SET) for x in range(200_001))


@pytest.mark.parametrize("x, expected", [
    (2**61 - 1, True), (2**89 - 1, True), (2**127 - 1, True), (2**521 - 1, True),
    (3_317_044_064_679_887_385_961_981, False),  # strong pseudoprime to bases 2..37
    ((2**61 - 1) * (2**31 - 1), False), (2**127 + 1, False),
])
def test_is_prime_large(x, expected):
    assert is_prime(x) is expected


def test_smallest_prime_in_examples():
    assert smallest_prime_in(Surd(2, 68), Surd(4, 68)) == 17
    assert smallest_prime_in(272, 544) == 277
    with pytest.raises(EmptyIntervalError):
        smallest_prime_in(24, 28)
    with pytest.raises(PreconditionError):
        smallest_prime_in(10, 10)


def test_smallest_prime_in_exact_surd_boundary():
    # sqrt(289) == 17 and sqrt(529) == 23 exactly; both ends stay excluded
    assert smallest_prime_in(Surd(1, 289), Surd(1, 529)) == 19
    assert smallest_prime_in(Surd(Fraction(1, 2), 4 * 289), 40) == 19
    with pytest.raises(EmptyIntervalError):
        smallest_prime_in(Surd(1, 361), Surd(1, 529))


@pytest.mark.parametrize("n, t, expected", [(4, 17, 17), (1, 1, 3), (2, 5, 7)])
def test_pick_p_examples(n, t, expected):
    pick = pick_p(n, t)
    assert pick.prime == expected
    assert 4 * n * t < pick.prime ** 2 < 16 * n * t


@pytest.mark.parametrize("n, t, expected", [(4, 17, 277), (1, 1, 3), (2, 5, 23)])
def test_pick_q_smallest_examples(n, t, expected):
    assert pick_q(n, t).prime == expected


def test_picks_match_sieve_oracle():
    for n in range(1, 11):
        for t in range(1, 51):
            nt = n * t
            p_oracle = min(x for x in PRIMES if 4 * nt < x * x < 16 * nt)
            q_oracle = min(x for x in PRIMES if 2**n * t < x < 2**(n + 1) * t)
            assert pick_p(n, t).prime == p_oracle
            assert pick_q(n, t).prime == q_oracle


def test_pick_q_random_is_seeded_and_in_range():
    a = pick_q(20, 30, "random", seed=11)
    b = pick_q(20, 30, "random", seed=11)
    assert a == b
    assert 2**20 * 30 < a.prime < 2**21 * 30 and is_prime(a.prime)
    draws = {pick_q(10, 7, "random", seed=s).prime for s in range(40)}
    assert len(draws) > 5
    with pytest.raises(PreconditionError):
        pick_q(3, 3, "random")
    with pytest.raises(PreconditionError):
        pick_q(0, 3)
