"""Exact subset and partition counting, plus the partition-theory checks."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import comb, gcd, prod
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .arith import format_natural, parse_natural
from .errors import InputError, PreconditionError, PropertyViolation, ResourceLimitError

MAX_TABLE_CELLS = 10**8
MAX_BRUTE_FORCE_ITEMS = 24


# --------------------------------------------------------------------------
# instances and policies

@dataclass(frozen=True)
class Instance:
    """Weights ``w_1..w_n`` (order matters, repeats allowed) and a target ``t``."""

    weights: Tuple[int, ...]
    t: int

    def __post_init__(self):
        weights = tuple(int(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if not weights:
            raise InputError("an instance needs at least one weight")
        if any(w < 1 for w in weights):
            raise InputError(f"weights must be positive: {weights}")
        if int(self.t) < 1:
            raise InputError(f"target must be positive, got {self.t}")
        object.__setattr__(self, "t", int(self.t))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def nt(self) -> int:
        return self.n * self.t

    def require_weights_at_most_t(self) -> None:
        big = [w for w in self.weights if w > self.t]
        if big:
            raise PreconditionError(
                f"weights {big} exceed t={self.t}; sums would escape the table [0, nt]")

    def to_dict(self) -> dict:
        return {"weights": list(self.weights), "t": self.t}

    @classmethod
    def from_dict(cls, data) -> "Instance":
        if not isinstance(data, dict) or set(data) != {"weights", "t"}:
            raise InputError('instance JSON must be {"weights": [...], "t": int}')
        weights, t = data["weights"], data["t"]
        if not isinstance(weights, list) or not all(_is_int(w) for w in weights):
            raise InputError("weights must be a list of integers")
        if not _is_int(t):
            raise InputError("t must be an integer")
        return cls(tuple(weights), t)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


class Boundary(enum.Enum):
    AS_WRITTEN_ZERO = "aswritten_zero"
    CORRECTED_ONE = "corrected_one"


class RowRange(enum.Enum):
    PAPER_ONE_BASED = "one_based"
    FULL_ZERO_BASED = "zero_based"


class ResidueRange(enum.Enum):
    PAPER_ONE_TO_P = "one_to_p"
    FULL_ZERO_TO_P_MINUS_1 = "zero_to_p_minus_1"


class RSampling(enum.Enum):
    INCLUDE_ZERO = "include_zero"
    EXCLUDE_ZERO = "exclude_zero"


@dataclass(frozen=True)
class PolicyProfile:
    """Every choice the pseudocode leaves open.

    ``boundary`` is the value read from a cell the loops never assign.  It
    only matters when a loop range skips column 0: the prover's
    ``PAPER_ONE_BASED`` rows, and the verifier's first ``i = 1..p`` round
    reading ``T'[0, p]``.
    """

    boundary: Boundary
    row_range: RowRange
    verifier_residue_range: ResidueRange
    r_sampling: RSampling
    name: str = field(default="custom", compare=False)

    @classmethod
    def corrected(cls) -> "PolicyProfile":
        return cls(Boundary.CORRECTED_ONE, RowRange.FULL_ZERO_BASED,
                   ResidueRange.FULL_ZERO_TO_P_MINUS_1, RSampling.EXCLUDE_ZERO, "corrected")

    @classmethod
    def as_written(cls) -> "PolicyProfile":
        return cls(Boundary.AS_WRITTEN_ZERO, RowRange.PAPER_ONE_BASED,
                   ResidueRange.PAPER_ONE_TO_P, RSampling.INCLUDE_ZERO, "aswritten")

    @classmethod
    def named(cls, name: str) -> "PolicyProfile":
        try:
            return {"corrected": cls.corrected, "aswritten": cls.as_written}[name]()
        except KeyError:
            raise InputError(f"unknown policy {name!r}; use 'corrected' or 'aswritten'") from None

    @property
    def unassigned_value(self) -> int:
        return 0 if self.boundary is Boundary.AS_WRITTEN_ZERO else 1


CORRECTED = PolicyProfile.corrected()
AS_WRITTEN = PolicyProfile.as_written()


# --------------------------------------------------------------------------
# count tables

@dataclass(frozen=True, eq=False)
class CountTable:
    """Counts indexed by sum ``0..upper``; the array is read-only."""

    upper: int
    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts)
        if counts.ndim != 1 or len(counts) != self.upper + 1:
            raise InputError(f"table needs {self.upper + 1} entries, got shape {counts.shape}")
        counts = counts.copy()
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    def __getitem__(self, i):
        return int(self.counts[i])

    def __len__(self):
        return self.upper + 1

    def tolist(self) -> List[int]:
        return [int(c) for c in self.counts]

    def __eq__(self, other):
        if not isinstance(other, CountTable):
            return NotImplemented
        return self.upper == other.upper and self.tolist() == other.tolist()

    def first_difference(self, other: "CountTable") -> Optional[int]:
        for i, (a, b) in enumerate(zip(self.tolist(), other.tolist())):
            if a != b:
                return i
        return None if self.upper == other.upper else min(self.upper, other.upper) + 1

    def total(self) -> int:
        return sum(self.tolist())

    def to_dict(self) -> dict:
        return {"upper": self.upper, "counts": [format_natural(c) for c in self.tolist()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data) -> "CountTable":
        if not isinstance(data, dict) or set(data) != {"upper", "counts"}:
            raise InputError('count table JSON must be {"upper": int, "counts": [...]}')
        counts = [parse_natural(c) for c in data["counts"]]
        return cls(int(data["upper"]), np.array(counts, dtype=object))


def _guard_cells(upper: int) -> None:
    if upper + 1 > MAX_TABLE_CELLS:
        raise ResourceLimitError(f"table of {upper + 1} cells exceeds the {MAX_TABLE_CELLS} guard")


def subset_count_table(inst: Instance, policy: PolicyProfile = CORRECTED,
                       upper: Optional[int] = None, backend=None) -> CountTable:
    """Final row of the prover's table, over sums ``0..nt``.

    Under the corrected profile ``counts[i]`` is the number of index subsets
    with weight sum ``i``, the empty set included.  With a one-based row loop
    and the zero boundary, column 0 of every row after the first reads 0,
    which in effect counts only subsets containing the first item.
    """
    upper = inst.nt if upper is None else upper
    _guard_cells(upper)
    col0 = None
    if policy.row_range is RowRange.PAPER_ONE_BASED:
        col0 = policy.unassigned_value
    row = _kernels.subset_row(inst.weights, upper, col0, backend)
    return CountTable(upper, row)


def brute_force_counts(inst: Instance, upper: Optional[int] = None) -> CountTable:
    """Tally the weight sum of every one of the ``2**n`` index subsets."""
    if inst.n > MAX_BRUTE_FORCE_ITEMS:
        raise ResourceLimitError(f"brute force limited to n <= {MAX_BRUTE_FORCE_ITEMS}")
    upper = inst.nt if upper is None else upper
    sums = np.zeros(1, dtype=np.int64)
    for w in inst.weights:
        sums = np.concatenate([sums, sums + w])
    sums = sums[sums <= upper]
    return CountTable(upper, np.bincount(sums, minlength=upper + 1))


def set_recurrence_table(weights: Sequence[int], upper: int) -> CountTable:
    """Count table from the recurrence over prefix sets ``A_j = {w_1..w_j}``.

    Evaluated top-down and memoized, independently of the bottom-up kernel:
    ``T(A_0, i) = [i == 0]`` and ``T(A_j, i) = T(A_{j-1}, i) + T(A_{j-1}, i - w_j)``
    when ``i >= w_j``.  The weights must be distinct, as sets.
    """
    weights = tuple(int(w) for w in weights)
    if len(set(weights)) != len(weights):
        raise InputError("the set recurrence needs distinct weights")

    @lru_cache(maxsize=None)
    def T(j: int, i: int) -> int:
        if j == 0:
            return 1 if i == 0 else 0
        w = weights[j - 1]
        if i < w:
            return T(j - 1, i)
        return T(j - 1, i) + T(j - 1, i - w)

    counts = [T(len(weights), i) for i in range(upper + 1)]
    return CountTable(upper, np.array(counts, dtype=object))


def _distinct_positive(members, what="members") -> Tuple[int, ...]:
    members = [int(a) for a in members]
    if not members:
        raise PreconditionError(f"{what} must be non-empty")
    if len(set(members)) != len(members):
        raise PreconditionError(f"{what} must be distinct: {members}")
    if any(a < 1 for a in members):
        raise PreconditionError(f"{what} must be positive: {members}")
    return tuple(sorted(members))


def multiset_partition_counts(members, limit: int) -> CountTable:
    """Number of ways to write each ``i <= limit`` as a sum of members with repetition."""
    members = _distinct_positive(members)
    if limit < 0:
        raise PreconditionError("limit must be nonnegative")
    counts = [1] + [0] * limit
    for a in members:
        for i in range(a, limit + 1):
            counts[i] += counts[i - a]
    return CountTable(limit, np.array(counts, dtype=object))


# --------------------------------------------------------------------------
# partition theorems

@dataclass(frozen=True)
class GuptaBounds:
    lower: int
    product: int
    upper: int

    @property
    def holds(self) -> bool:
        return self.lower <= self.product <= self.upper


def gupta_bounds(A, t: int) -> GuptaBounds:
    """Check ``C(t+n, n) <= P(A, t) * prod(a) <= C(t + sum(a), n)``.

    ``A`` must contain 1; the product and sum run over the other ``n``
    elements.  Raises :class:`PropertyViolation` if the inequality fails.
    """
    A = _distinct_positive(A, "A")
    if 1 not in A:
        raise PreconditionError("A must contain 1")
    if t < 1:
        raise PreconditionError("t must be positive")
    rest = [a for a in A if a != 1]
    n = len(rest)
    partitions = multiset_partition_counts(A, t)[t]
    bounds = GuptaBounds(comb(t + n, n), partitions * prod(rest), comb(t + sum(rest), n))
    if not bounds.holds:
        raise PropertyViolation(f"bounds fail for A={A}, t={t}: {bounds}")
    return bounds


def bateman_erdos_condition(A) -> Tuple[bool, Optional[int]]:
    """Whether partition counts over ``A`` are eventually non-decreasing.

    True iff ``1 in A``, or ``|A| > 1`` and removing any single element
    leaves gcd 1.  When false, also returns an offending element, trying
    the largest first.
    """
    A = _distinct_positive(A, "A")
    if 1 in A:
        return True, None
    if len(A) == 1:
        return False, A[0]
    for a in reversed(A):
        if reduce(gcd, (b for b in A if b != a)) > 1:
            return False, a
    return True, None


def monotonicity_violations(A, N: int) -> List[int]:
    """All ``n`` in ``[0, N-1]`` where ``P(A, n) > P(A, n+1)``."""
    if N < 1:
        raise PreconditionError("N must be positive")
    P = multiset_partition_counts(A, N).tolist()
    return [n for n in range(N) if P[n] > P[n + 1]]
