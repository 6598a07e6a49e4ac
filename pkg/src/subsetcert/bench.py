"""Prover-table vs verifier-table cost, as exact cell counts and wall time."""
from __future__ import annotations

import random
import timeit
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence

import numpy as np

from . import _kernels
from .primes import pick_p, pick_q


@dataclass
class BackendTiming:
    prover_seconds: float
    verifier_seconds: float

    @property
    def wall_ratio(self) -> float:
        return self.verifier_seconds / self.prover_seconds


@dataclass
class BenchResult:
    n: int
    t: int
    p: int
    q: int
    r: int
    seed: int
    timings: Dict[str, BackendTiming] = field(default_factory=dict)

    @property
    def nt(self) -> int:
        return self.n * self.t

    @property
    def prover_cells(self) -> int:
        # rows j = 1..n, columns i = 1..nt
        return self.n * self.nt

    @property
    def verifier_cells(self) -> int:
        # rows j = 1..n, residues i = 1..p
        return self.n * self.p

    @property
    def cell_ratio(self) -> Fraction:
        """Verifier-to-prover cell updates, exactly ``p / nt``."""
        return Fraction(self.verifier_cells, self.prover_cells)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "t": self.t, "nt": self.nt, "p": self.p, "q": str(self.q),
            "r": str(self.r), "seed": self.seed,
            "prover_cells": self.prover_cells,
            "verifier_cells": self.verifier_cells,
            "verifier_to_prover_cell_ratio": str(self.cell_ratio),
            "prover_to_verifier_cell_ratio": str(1 / self.cell_ratio),
            "backends": {
                name: {"prover_seconds": tm.prover_seconds,
                       "verifier_seconds": tm.verifier_seconds,
                       "wall_ratio": tm.wall_ratio}
                for name, tm in self.timings.items()
            },
        }

    def render_text(self) -> str:
        lines = [
            f"n={self.n} t={self.t} nt={self.nt} p={self.p} q={self.q}",
            f"prover cells {self.prover_cells}  verifier cells {self.verifier_cells}",
            f"cell ratio verifier/prover = {self.cell_ratio} = {float(self.cell_ratio):.6g}",
        ]
        for name, tm in self.timings.items():
            lines.append(f"{name:6s} prover {tm.prover_seconds:.3e}s  verifier "
                         f"{tm.verifier_seconds:.3e}s  wall ratio {tm.wall_ratio:.6g}")
        return "\n".join(lines)


def _best_time(fn, repeat: int) -> float:
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def run_bench(n: int, t: int, seed: int = 0, repeat: int = 5,
              backends: Optional[Sequence[str]] = None) -> BenchResult:
    """Time both tables on a seeded instance with weights in ``[1, t]``."""
    rng = random.Random(seed)
    weights = np.array([rng.randint(1, t) for _ in range(n)], dtype=np.int64)
    p = pick_p(n, t).prime
    q = pick_q(n, t).prime
    r = rng.randrange(1, q)
    result = BenchResult(n, t, p, q, r, seed)
    reference = None
    for backend in backends or _kernels.available_backends():
        _kernels.warm_up(backend)
        row = _kernels.fingerprint_row(weights, p, r, q, False, backend)
        if reference is None:
            reference = row
        elif not np.array_equal(np.asarray(row, dtype=object), np.asarray(reference, dtype=object)):
            raise AssertionError(f"backend {backend} disagrees with {backends[0]}")
        result.timings[backend] = BackendTiming(
            _best_time(lambda: _kernels.subset_row(weights, n * t, None, backend), repeat),
            _best_time(lambda: _kernels.fingerprint_row(weights, p, r, q, False, backend), repeat),
        )
    return result
