"""Prover, verifier and tamper tools for the subset-count certificate.

The prover publishes a prime ``p`` and the exact counts ``c_i`` for every
sum ``i <= nt`` with ``i = t (mod p)``.  The verifier folds the instance
into ``p`` residue classes, weighting every subset by ``r**w(X) mod q``, and
checks that the certificate's polynomial ``sum c_i r**i`` agrees with the
residue class of ``t``.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from . import _kernels
from .arith import eval_sparse_poly, format_natural, nonneg_mod, parse_natural
from .counting import (CORRECTED, Boundary, Instance, PolicyProfile, ResidueRange,
                       RSampling, subset_count_table)
from .errors import CertificateFormatError, InputError, PreconditionError
from .primes import is_prime, pick_p, pick_q


@dataclass(frozen=True)
class Certificate:
    p: int
    t: int
    entries: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        entries = tuple(sorted((int(i), int(c)) for i, c in self.entries))
        object.__setattr__(self, "entries", entries)

    def count_at(self, i: int) -> int:
        for j, c in self.entries:
            if j == i:
                return c
        raise KeyError(i)

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    def to_dict(self) -> dict:
        return {"p": self.p, "t": self.t,
                "entries": [{"i": i, "c": format_natural(c)} for i, c in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data) -> "Certificate":
        try:
            if set(data) != {"p", "t", "entries"}:
                raise KeyError(sorted(data))
            entries = []
            for e in data["entries"]:
                if set(e) != {"i", "c"} or not isinstance(e["i"], int):
                    raise KeyError(e)
                entries.append((e["i"], parse_natural(e["c"])))
            p, t = data["p"], data["t"]
            if not isinstance(p, int) or not isinstance(t, int):
                raise TypeError("p and t must be integers")
        except (KeyError, TypeError, InputError, AttributeError) as exc:
            raise CertificateFormatError(f"bad certificate JSON: {exc}") from None
        if len({i for i, _ in entries}) != len(entries):
            raise CertificateFormatError("duplicate certificate index")
        return cls(p, t, tuple(entries))


@dataclass(frozen=True)
class VerifierParams:
    q: int
    r: int
    q_mode: str = "smallest"
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        return {"q": format_natural(self.q), "r": format_natural(self.r),
                "q_mode": "random" if self.q_mode == "random" else "smallest",
                "seed": self.seed}

    @classmethod
    def from_dict(cls, data) -> "VerifierParams":
        if not isinstance(data, dict) or not {"q", "r"} <= set(data):
            raise InputError('verifier params JSON needs "q" and "r"')
        mode = data.get("q_mode", "smallest")
        if mode not in ("smallest", "random"):
            raise InputError(f"unknown q_mode {mode!r}")
        return cls(parse_natural(data["q"]), parse_natural(data["r"]), mode, data.get("seed"))

    def check(self, n: int, t: int, policy: PolicyProfile) -> None:
        lo, hi = (1 << n) * t, (1 << (n + 1)) * t
        if not (lo < self.q < hi and is_prime(self.q)):
            raise PreconditionError(f"q={self.q} is not a prime in ({lo}, {hi})")
        if not 0 <= self.r < self.q:
            raise PreconditionError(f"r={self.r} not in [0, q)")
        if policy.r_sampling is RSampling.EXCLUDE_ZERO and self.r == 0:
            raise PreconditionError("r = 0 is excluded by the policy")


def draw_params(n: int, t: int, policy: PolicyProfile = CORRECTED, q_mode: str = "smallest",
                seed: int = 0) -> VerifierParams:
    """Pick ``q`` and a random ``r`` in ``Z_q`` from one seeded stream."""
    rng = random.Random(seed)
    q = pick_q(n, t, q_mode, seed=seed, rng=rng).prime
    low = 1 if policy.r_sampling is RSampling.EXCLUDE_ZERO else 0
    return VerifierParams(q, rng.randrange(low, q), q_mode, seed)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    c_t: Optional[int]
    lhs: int
    rhs: int

    @property
    def outcome(self) -> str:
        return f"Accept({self.c_t})" if self.accepted else "Reject"

    def to_dict(self) -> dict:
        return {"outcome": "accept" if self.accepted else "reject",
                "c_t": None if self.c_t is None else format_natural(self.c_t),
                "lhs": format_natural(self.lhs), "rhs": format_natural(self.rhs)}


def certificate_indices(nt: int, t: int, p: int) -> range:
    """Every ``i`` in ``[0, nt]`` with ``i = t (mod p)``, increasing."""
    return range(t % p, nt + 1, p)


def prove(inst: Instance, policy: PolicyProfile = CORRECTED, backend=None) -> Certificate:
    inst.require_weights_at_most_t()
    table = subset_count_table(inst, policy, backend=backend)
    p = pick_p(inst.n, inst.t).prime
    entries = tuple((i, table[i]) for i in certificate_indices(inst.nt, inst.t, p))
    return Certificate(p, inst.t, entries)


def compressed_row(inst: Instance, p: int, r: int, q: int,
                   policy: PolicyProfile = CORRECTED, backend=None) -> np.ndarray:
    """Verifier row ``T'[n, 0..p-1]``.

    Under the full residue range, ``row[s]`` is the sum of ``r**w(X)`` over
    all subsets with ``w(X) = s (mod p)``, reduced mod ``q``.  The literal
    ``i = 1..p`` loop stores index ``p`` in slot 0; with the zero boundary its
    first round reads ``T'[0, p]`` as unassigned, dropping the empty subset.
    """
    if p < 2 or q < 2 or not 0 <= r < q:
        raise PreconditionError(f"need p >= 2, q >= 2, 0 <= r < q (got {p}, {q}, {r})")
    literal = (policy.verifier_residue_range is ResidueRange.PAPER_ONE_TO_P
               and policy.boundary is Boundary.AS_WRITTEN_ZERO)
    return _kernels.fingerprint_row(inst.weights, p, r, q, literal, backend)


def check_certificate(inst: Instance, cert: Certificate) -> None:
    """Raise :class:`CertificateFormatError` unless ``cert`` fits ``inst``."""
    if cert.t != inst.t:
        raise CertificateFormatError(f"certificate target {cert.t} != instance target {inst.t}")
    nt = inst.nt
    if not (4 * nt < cert.p * cert.p < 16 * nt and is_prime(cert.p)):
        raise CertificateFormatError(f"p={cert.p} is not a prime in (2*sqrt(nt), 4*sqrt(nt))")
    expected = tuple(certificate_indices(nt, inst.t, cert.p))
    if cert.indices != expected:
        raise CertificateFormatError(
            f"certificate indices {list(cert.indices)} != required {list(expected)}")


def verify(inst: Instance, cert: Certificate, params: VerifierParams,
           policy: PolicyProfile = CORRECTED, backend=None) -> Verdict:
    inst.require_weights_at_most_t()
    check_certificate(inst, cert)
    params.check(inst.n, inst.t, policy)
    lhs = eval_sparse_poly(cert.entries, params.r, params.q)
    row = compressed_row(inst, cert.p, params.r, params.q, policy, backend)
    rhs = int(row[nonneg_mod(inst.t, cert.p)])
    if lhs == rhs:
        return Verdict(True, cert.count_at(inst.t), lhs, rhs)
    return Verdict(False, None, lhs, rhs)


def tamper(cert: Certificate, index: int, delta: int) -> Certificate:
    """Copy of ``cert`` with the count at ``index`` shifted by ``delta``."""
    if index not in cert.indices:
        raise InputError(f"index {index} is not in the certificate")
    entries = []
    for i, c in cert.entries:
        if i == index:
            c += delta
            if c < 0:
                raise InputError(f"count at {index} would become {c}")
        entries.append((i, c))
    return replace(cert, entries=tuple(entries))
