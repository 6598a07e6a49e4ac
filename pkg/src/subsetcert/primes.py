"""Primality testing and the two interval prime picks used by the protocol.

Interval endpoints of the form ``c * sqrt(m)`` are compared exactly by
squaring; no floating point enters any decision here.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from .errors import EmptyIntervalError, PreconditionError

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# The first twelve prime bases are a proven-deterministic witness set
# below this bound (Sorenson & Webster 2015).
_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_RANDOM_ROUNDS = 64  # 4**-64 == 2**-128


@dataclass(frozen=True)
class Surd:
    """The exact real number ``coef * sqrt(radicand)`` with ``coef >= 0``."""

    coef: Fraction
    radicand: int

    def __post_init__(self):
        object.__setattr__(self, "coef", Fraction(self.coef))
        if self.coef < 0 or self.radicand < 0:
            raise ValueError("Surd needs nonnegative coefficient and radicand")

    @property
    def square(self) -> Fraction:
        return self.coef * self.coef * self.radicand

    def floor(self) -> int:
        return isqrt(int(self.square))

    def __float__(self) -> float:
        return float(self.coef) * self.radicand ** 0.5

    def __str__(self) -> str:
        return f"{self.coef}*sqrt({self.radicand})"


Bound = Union[int, Fraction, Surd]


def _floor(b: Bound) -> int:
    if isinstance(b, Surd):
        return b.floor()
    return int(b // 1)


def _lt(x: int, b: Bound) -> bool:
    """Exact ``x < b`` for an integer ``x``."""
    if isinstance(b, Surd):
        return x < 0 or x * x < b.square
    return x < b


def _as_json_bound(b: Bound):
    if isinstance(b, Surd):
        return {"coef": str(b.coef), "sqrt_of": b.radicand}
    return str(b)


def _miller_rabin_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _derived_witness(n: int, k: int) -> int:
    digest = hashlib.sha256(f"{n}:{k}".encode()).digest()
    return 2 + int.from_bytes(digest, "big") % (n - 3)


def is_prime(x: int) -> bool:
    """Miller-Rabin primality test.

    Exact for ``x`` below about 3.3e24 (fixed base set 2..37).  Above that,
    64 rounds run with bases derived from SHA-256 of ``"x:k"``, so results are
    reproducible and a composite slips through with probability at most
    ``2**-128``.
    """
    if x < 2:
        return False
    for sp in _SMALL_PRIMES:
        if x % sp == 0:
            return x == sp
    d, s = x - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if x < _DETERMINISTIC_LIMIT:
        bases = _SMALL_PRIMES
    else:
        bases = [_derived_witness(x, k) for k in range(_RANDOM_ROUNDS)]
    return all(_miller_rabin_round(x, d, s, a) for a in bases)


def _square(b: Bound) -> Fraction:
    if isinstance(b, Surd):
        return b.square
    if b < 0:
        raise PreconditionError(f"interval bounds must be nonnegative, got {b}")
    return Fraction(b) ** 2


def smallest_prime_in(lo_exclusive: Bound, hi_exclusive: Bound) -> int:
    """Least prime strictly between the two bounds."""
    if not _square(lo_exclusive) < _square(hi_exclusive):
        raise PreconditionError(f"empty interval ({lo_exclusive}, {hi_exclusive})")
    x = max(_floor(lo_exclusive) + 1, 2)
    while _lt(x, hi_exclusive):
        if is_prime(x):
            return x
        x += 1
    raise EmptyIntervalError(f"no prime in ({lo_exclusive}, {hi_exclusive})")


@dataclass(frozen=True)
class PrimePick:
    prime: int
    interval_lo: Bound
    interval_hi: Bound
    mode: str = "smallest"
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "prime": str(self.prime),
            "interval_lo": _as_json_bound(self.interval_lo),
            "interval_hi": _as_json_bound(self.interval_hi),
            "mode": self.mode,
            "seed": self.seed,
        }


def _check_nt(n: int, t: int) -> None:
    if n < 1 or t < 1:
        raise PreconditionError(f"need n >= 1 and t >= 1, got n={n}, t={t}")


def pick_p(n: int, t: int) -> PrimePick:
    """Smallest prime ``p`` with ``2*sqrt(nt) < p < 4*sqrt(nt)``."""
    _check_nt(n, t)
    lo, hi = Surd(2, n * t), Surd(4, n * t)
    return PrimePick(smallest_prime_in(lo, hi), lo, hi)


def pick_q(n: int, t: int, mode: str = "smallest", seed: Optional[int] = None,
           rng: Optional[random.Random] = None) -> PrimePick:
    """A prime ``q`` with ``2**n * t < q < 2**(n+1) * t``.

    ``mode="smallest"`` is deterministic.  ``mode="random"`` draws integers
    uniformly from the open interval until one is prime, using ``rng`` or a
    ``random.Random(seed)``; a seed is then required.
    """
    _check_nt(n, t)
    lo, hi = (1 << n) * t, (1 << (n + 1)) * t
    if mode == "smallest":
        return PrimePick(smallest_prime_in(lo, hi), lo, hi)
    if mode != "random":
        raise PreconditionError(f"unknown q mode {mode!r}")
    if rng is None:
        if seed is None:
            raise PreconditionError("random q mode needs an explicit seed")
        rng = random.Random(seed)
    # Fails loudly before looping forever on a prime-free interval.
    smallest_prime_in(lo, hi)
    while True:
        x = rng.randrange(lo + 1, hi)
        if is_prime(x):
            return PrimePick(x, lo, hi, "random", seed)
