"""Hot DP kernels with a numba path and a pure-numpy fallback.

The backend is chosen by the ``SUBSETCERT_BACKEND`` environment variable
(``numba`` or ``numpy``) at import time; when unset, numba is used if it
imports.  Every public function also takes an explicit ``backend`` argument
so the benchmark can time both in one process.

Fixed-width paths are used only when they are exact:

* subset counts never exceed ``2**n``, so int64 is exact for ``n <= 62``;
* fingerprint cells are below ``q``, so ``a + f*b`` fits int64 for ``q < 2**31``;
  uint64 Shoup/Montgomery multiplication covers ``q < 2**63``.

Outside those limits both backends fall back to numpy object arrays of
Python ints.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

BACKEND_ENV = "SUBSETCERT_BACKEND"
BACKENDS = ("numba", "numpy")
MAX_INT64_ITEMS = 62
MAX_INT64_MODULUS = 1 << 31
MAX_UINT64_MODULUS = 1 << 63


def _default_backend() -> str:
    choice = os.environ.get(BACKEND_ENV, "").strip().lower()
    if choice and choice not in BACKENDS:
        raise RuntimeError(f"{BACKEND_ENV} must be one of {BACKENDS}, got {choice!r}")
    if numba is None:
        return "numpy"
    return choice or "numba"


ACTIVE_BACKEND = _default_backend()


def available_backends():
    return BACKENDS if numba is not None else ("numpy",)


def _resolve(backend):
    if backend is None:
        return ACTIVE_BACKEND
    if backend not in available_backends():
        raise RuntimeError(f"backend {backend!r} is not available")
    return backend


def _jit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


def _as_int64(weights) -> np.ndarray:
    if isinstance(weights, np.ndarray) and weights.dtype == np.int64:
        return weights
    return np.array([int(x) for x in weights], dtype=np.int64)


# --------------------------------------------------------------------------
# subset-count row

def _add_into(dst, a, b):
    for i in range(dst.size):
        dst[i] = a[i] + b[i]


_add_into_nb = _jit(_add_into)


def _subset_row_loop(weights, upper, fix_col0, col0_value):
    row = np.zeros(upper + 1, dtype=np.int64)
    row[0] = 1
    new = np.empty_like(row)
    for j in range(weights.size):
        w = weights[j]
        if w <= upper:
            # two buffers so the inner add has no aliasing and vectorizes
            new[:w] = row[:w]
            _add_into_nb(new[w:], row[w:], row[: upper + 1 - w])
            row, new = new, row
        if fix_col0:
            row[0] = col0_value
    return row


_subset_row_nb = _jit(_subset_row_loop)


def _subset_row_np(weights, upper, fix_col0, col0_value, dtype):
    row = np.zeros(upper + 1, dtype=dtype)
    row[0] = 1
    for w in weights:
        w = int(w)
        if w <= upper:
            row[w:] = row[w:] + row[: upper + 1 - w]
        if fix_col0:
            row[0] = col0_value
    return row


def subset_row(weights, upper: int, col0=None, backend=None) -> np.ndarray:
    """Final row of the 0/1 subset-count table over sums ``0..upper``.

    Parameters
    ----------
    weights : sequence of int
        Positive weights, processed in order.
    upper : int
        Largest sum tracked; larger sums are dropped.
    col0 : int or None
        ``None`` computes column 0 by the recurrence.  Otherwise every
        round ``j >= 1`` leaves ``T[j, 0]`` unassigned and it reads as
        ``col0``.
    """
    backend = _resolve(backend)
    w = _as_int64(weights)
    fix = col0 is not None
    value = int(col0) if fix else 0
    if len(w) > MAX_INT64_ITEMS:
        return _subset_row_np(w, upper, fix, value, object)
    if backend == "numba":
        return _subset_row_nb(w, upper, fix, value)
    return _subset_row_np(w, upper, fix, value, np.int64)


# --------------------------------------------------------------------------
# verifier fingerprint row

def _mulmod_small(a, b, q, inv_q):
    # a, b < q < 2**31: the float quotient is off by at most one
    x = a * b
    y = x - np.int64(x * inv_q) * q
    if y < 0:
        y += q
    if y >= q:
        y -= q
    return y


_mulmod_small_nb = _jit(_mulmod_small)


def _powmod_small(b, e, q, inv_q):
    acc = 1 % q
    b %= q
    while e > 0:
        if e & 1:
            acc = _mulmod_small_nb(acc, b, q, inv_q)
        b = _mulmod_small_nb(b, b, q, inv_q)
        e >>= 1
    return acc


_powmod_small_nb = _jit(_powmod_small)


def _axpy_small(dst, a, b, f, q, inv_q):
    # q < 2**31 so a + f*b < 2**62; the float quotient is off by at most one
    for i in range(dst.size):
        x = a[i] + f * b[i]
        y = x - np.int64(x * inv_q) * q
        if y < 0:
            y += q
        if y >= q:
            y -= q
        dst[i] = y


_axpy_small_nb = _jit(_axpy_small)


def _fingerprint_small(weights, p, r, q, drop_first_wrap):
    row = np.zeros(p, dtype=np.int64)
    row[0] = 1 % q
    new = np.empty(p, dtype=np.int64)
    inv_q = 1.0 / q
    for j in range(weights.size):
        s = weights[j] % p
        f = _powmod_small_nb(r, weights[j], q, inv_q)
        # new[i] = row[i] + f * row[i - s (mod p)], split at the wrap point
        _axpy_small_nb(new[s:], row[s:], row[: p - s], f, q, inv_q)
        _axpy_small_nb(new[:s], row[:s], row[p - s:], f, q, inv_q)
        if j == 0 and drop_first_wrap:
            new[0] = f * row[(p - s) % p] % q
        row, new = new, row
    return row


_fingerprint_small_nb = _jit(_fingerprint_small)

_LO32 = np.uint64(0xFFFFFFFF)
_S32 = np.uint64(32)


def _mulhi_u64(a, b):
    """High 64 bits of the 128-bit product; works on scalars and arrays."""
    a0 = a & _LO32
    a1 = a >> _S32
    b0 = b & _LO32
    b1 = b >> _S32
    p01 = a0 * b1
    p10 = a1 * b0
    mid = ((a0 * b0) >> _S32) + (p01 & _LO32) + (p10 & _LO32)
    return a1 * b1 + (p01 >> _S32) + (p10 >> _S32) + (mid >> _S32)


_mulhi_u64_nb = _jit(_mulhi_u64)


def _axpy_shoup(dst, a, b, f, f_shoup, q):
    # Shoup multiplication: f_shoup = floor(f * 2**64 / q), valid for q < 2**63
    for i in range(dst.size):
        y = f * b[i] - _mulhi_u64_nb(f_shoup, b[i]) * q
        if y >= q:
            y -= q
        y += a[i]
        if y >= q:
            y -= q
        dst[i] = y


_axpy_shoup_nb = _jit(_axpy_shoup)


def _montmul(a, b, q, q_neg_inv):
    """``a * b / 2**64 mod q`` for ``a, b < q < 2**63``."""
    hi = _mulhi_u64_nb(a, b)
    lo = a * b
    m = lo * q_neg_inv
    t = hi + _mulhi_u64_nb(m, q)
    if lo != 0:
        t += np.uint64(1)
    if t >= q:
        t -= q
    return t


_montmul_nb = _jit(_montmul)


def _fingerprint_mont(weights, p, q, r_mont, one_mont, q_neg_inv, drop_first_wrap):
    row = np.zeros(p, dtype=np.uint64)
    row[0] = 1
    new = np.empty(p, dtype=np.uint64)
    one = np.uint64(1)
    for j in range(weights.size):
        w = weights[j]
        s = w % p
        # r**w in Montgomery form, i.e. r**w * 2**64 mod q
        f_mont = one_mont
        base = r_mont
        e = w
        while e > 0:
            if e & 1:
                f_mont = _montmul_nb(f_mont, base, q, q_neg_inv)
            base = _montmul_nb(base, base, q, q_neg_inv)
            e >>= 1
        f = _montmul_nb(f_mont, one, q, q_neg_inv)
        # f * 2**64 = f_mont (mod q) exactly, so floor(f * 2**64 / q) is an
        # exact division, done as a multiplication by q**-1 mod 2**64
        fs = f_mont * q_neg_inv
        _axpy_shoup_nb(new[s:], row[s:], row[: p - s], f, fs, q)
        _axpy_shoup_nb(new[:s], row[:s], row[p - s:], f, fs, q)
        if j == 0 and drop_first_wrap:
            k = (p - s) % p
            _axpy_shoup_nb(new[:1], np.zeros(1, dtype=np.uint64), row[k:k + 1], f, fs, q)
        row, new = new, row
    return row


_fingerprint_mont_nb = _jit(_fingerprint_mont)


def _fingerprint_shoup_np(shifts, factors, factors_shoup, p, q, drop_first_wrap):
    row = np.zeros(p, dtype=np.uint64)
    row[0] = 1
    for j in range(shifts.size):
        f, fs = factors[j], factors_shoup[j]
        shifted = np.roll(row, int(shifts[j]))
        y = f * shifted - _mulhi_u64(fs, shifted) * q
        y = np.where(y >= q, y - q, y)
        if j == 0 and drop_first_wrap:
            first = row.copy()
            first[0] = 0
        else:
            first = row
        y = y + first
        row = np.where(y >= q, y - q, y)
    return row


def _fingerprint_np(weights, p, r, q, drop_first_wrap, dtype):
    row = np.zeros(p, dtype=dtype)
    row[0] = 1 % q
    for j, w in enumerate(weights):
        w = int(w)
        f = pow(r, w, q)
        shifted = np.roll(row, w % p)
        first = row
        if j == 0 and drop_first_wrap:
            first = row.copy()
            first[0] = 0
        row = (first + f * shifted) % q
    return row


def fingerprint_row(weights, p: int, r: int, q: int, drop_first_wrap: bool = False,
                    backend=None) -> np.ndarray:
    """Compressed verifier row ``T'[n, 0..p-1]`` modulo ``q``.

    Each round maps ``row[s] -> row[s] + r**w * row[(s - w) mod p]``.  With
    ``drop_first_wrap`` the very first round reads the unassigned cell
    ``T'[0, p]`` as 0 instead of folding it onto ``T'[0, 0]``; this is the
    literal ``i = 1..p`` loop reading.

    Three exact paths by modulus size: int64 with a float quotient below
    ``2**31``, uint64 Shoup multiplication below ``2**63`` (with the
    numba backend computing ``r**w`` in Montgomery form), Python ints above.
    """
    backend = _resolve(backend)
    w = _as_int64(weights)
    r, q = int(r), int(q)
    if q < MAX_INT64_MODULUS:
        if backend == "numba":
            return _fingerprint_small_nb(w, p, r, q, drop_first_wrap)
        return _fingerprint_np(w, p, r, q, drop_first_wrap, np.int64)
    if q < MAX_UINT64_MODULUS:
        if backend == "numba":
            row = _fingerprint_mont_nb(w, p, np.uint64(q), np.uint64((r << 64) % q),
                                       np.uint64((1 << 64) % q),
                                       np.uint64(-pow(q, -1, 1 << 64) % (1 << 64)),
                                       drop_first_wrap)
        else:
            factors = [pow(r, int(x), q) for x in w]
            row = _fingerprint_shoup_np((w % p).astype(np.int64),
                                        np.array(factors, dtype=np.uint64),
                                        np.array([(f << 64) // q for f in factors], dtype=np.uint64),
                                        p, np.uint64(q), drop_first_wrap)
        return row.astype(np.int64)
    return _fingerprint_np(w, p, r, q, drop_first_wrap, object)


def warm_up(backend=None) -> None:
    """Trigger JIT compilation so later timings exclude it."""
    w = [1, 2]
    subset_row(w, 4, None, backend)
    subset_row(w, 4, 0, backend)
    for q in (5, (1 << 31) + 11):
        fingerprint_row(w, 3, 2, q, False, backend)
        fingerprint_row(w, 3, 2, q, True, backend)
