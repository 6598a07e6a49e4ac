"""Exact modular arithmetic on Python integers.

Naturals and residues are plain ``int`` values; the modulus travels with the
call rather than with the value.  Serialization uses canonical decimal
strings so counts beyond 64 bits survive JSON round trips.
"""
from __future__ import annotations

import re
from typing import Iterable, Tuple

from .errors import InputError, ModulusError

_DECIMAL = re.compile(r"0|[1-9][0-9]*")


def _check_modulus(m: int) -> None:
    if m < 1:
        raise ModulusError(f"modulus must be >= 1, got {m}")


def nonneg_mod(x: int, m: int) -> int:
    """Return the representative of ``x`` in ``[0, m)``, also for negative ``x``."""
    _check_modulus(m)
    # Python's % already floors toward -inf for a positive modulus.
    return x % m


def modpow(base: int, exponent: int, m: int) -> int:
    """``base ** exponent mod m`` by square-and-multiply.

    ``0 ** 0`` is taken to be 1, so the result for a zero exponent is ``1 % m``.
    """
    _check_modulus(m)
    if base < 0 or exponent < 0:
        raise InputError("modpow takes nonnegative base and exponent")
    return pow(base, exponent, m)


def eval_sparse_poly(entries: Iterable[Tuple[int, int]], r: int, q: int) -> int:
    """Evaluate ``sum(coeff * r**exponent)`` modulo ``q``.

    Parameters
    ----------
    entries : iterable of (exponent, coeff)
        Exponents must be pairwise distinct.
    r : int
        Evaluation point.
    q : int
        Modulus.
    """
    _check_modulus(q)
    seen = set()
    acc = 0
    for exponent, coeff in entries:
        if exponent in seen:
            raise InputError(f"duplicate exponent {exponent}")
        seen.add(exponent)
        acc += coeff * pow(r, exponent, q)
    return acc % q


def format_natural(x: int) -> str:
    if x < 0:
        raise InputError(f"naturals are nonnegative, got {x}")
    return str(int(x))


def parse_natural(s) -> int:
    """Parse a canonical decimal string (no sign, no leading zeros)."""
    if isinstance(s, bool):
        raise InputError(f"not a natural: {s!r}")
    if isinstance(s, int):
        if s < 0:
            raise InputError(f"naturals are nonnegative, got {s}")
        return s
    if not isinstance(s, str) or not _DECIMAL.fullmatch(s):
        raise InputError(f"not a canonical decimal natural: {s!r}")
    return int(s)
