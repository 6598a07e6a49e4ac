"""Subset-sum counting certificates: prover, fingerprint verifier, and audit tools."""

__version__ = "0.1.0"

from ._kernels import ACTIVE_BACKEND
from .arith import eval_sparse_poly, modpow, nonneg_mod
from .audit import audit_example1, audit_recurrence_identity
from .counting import (AS_WRITTEN, CORRECTED, CountTable, Instance, PolicyProfile,
                       bateman_erdos_condition, brute_force_counts, gupta_bounds,
                       monotonicity_violations, multiset_partition_counts,
                       set_recurrence_table, subset_count_table)
from .primes import is_prime, pick_p, pick_q, smallest_prime_in
from .protocol import (Certificate, Verdict, VerifierParams, compressed_row, draw_params,
                       prove, tamper, verify)
