"""Numeric inner loops over F_p, each with a numba and a pure-numpy version.

Set ``FSIGNATURE_DISABLE_NUMBA=1`` to force the numpy path (it is also used
when numba is not importable).  Both paths take and return the same types
and are exact; ``tests/test_kernels.py`` checks them against each other.

All arrays are int64 holding canonical residues, and ``p < 2**31`` so one
product of two residues fits in 63 bits.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("FSIGNATURE_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    import numba
except ImportError:  # pragma: no cover - depends on environment
    numba = None

JIT_ENABLED = numba is not None


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _rank_numpy(mat: np.ndarray, p: int) -> int:
    M = np.array(mat, dtype=np.int64) % p
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r, c:] = M[r, c:] * inv % p
        below = r + 1 + np.flatnonzero(M[r + 1:, c])
        if below.size:
            factors = (p - M[below, c])[:, None]
            M[np.ix_(below, np.arange(c, cols))] = (
                M[below, c:] + factors * M[r, c:]
            ) % p
        r += 1
    return r


def _euclid_numpy(P: np.ndarray, alpha: int, beta: int, n: int, p: int) -> int:
    a = np.zeros(alpha + 1, dtype=np.int64)
    a[alpha] = 1
    b = np.zeros(alpha + 1, dtype=np.int64)
    b[: min(alpha, len(P))] = np.asarray(P[:alpha], dtype=np.int64) % p
    nzb = np.flatnonzero(b)
    db = int(nzb[-1]) if nzb.size else -1
    best = alpha + beta
    best = min(best, n if db < 0 else max(n, db + beta))
    da = alpha
    while db >= 0:
        inv = pow(int(b[db]), -1, p)
        bb = b[: db + 1]
        for k in range(da - db, -1, -1):
            c = a[k + db] * inv % p
            if c:
                a[k: k + db + 1] = (a[k: k + db + 1] + (p - c) * bb) % p
        nza = np.flatnonzero(a[:db])
        da_new = int(nza[-1]) if nza.size else -1
        dt = alpha - db
        cand = dt + n if da_new < 0 else max(dt + n, da_new + beta)
        best = min(best, cand)
        a, b = b, a
        da, db = db, da_new
    return best


def _mul_trunc_numpy(a: np.ndarray, b: np.ndarray, n: int, p: int) -> np.ndarray:
    a = np.asarray(a[:n], dtype=np.int64)
    b = np.asarray(b[:n], dtype=np.int64)
    out = np.zeros(n, dtype=np.int64)
    if a.size == 0 or b.size == 0:
        return out
    if (p - 1) ** 2 * min(a.size, b.size) < 2**62:
        full = np.convolve(a, b)[:n] % p
    else:
        # 16-bit limbs keep every partial sum inside int64
        a_lo, a_hi = a & 0xFFFF, a >> 16
        b_lo, b_hi = b & 0xFFFF, b >> 16
        ll = np.convolve(a_lo, b_lo)[:n] % p
        mid = (np.convolve(a_lo, b_hi)[:n] + np.convolve(a_hi, b_lo)[:n]) % p
        hh = np.convolve(a_hi, b_hi)[:n] % p
        s16 = (1 << 16) % p
        full = (hh * s16 % p * s16 + mid * s16 + ll) % p
    out[: full.size] = full
    return out


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

def _inv_loop(x, p):
    a, b = x % p, p
    s0, s1 = 1, 0
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
    return s0 % p


def _rank_loops(mat, p):
    M = mat.copy()
    rows, cols = M.shape
    for i in range(rows):
        for j in range(cols):
            M[i, j] = M[i, j] % p
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                tmp = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = tmp
        inv = _inv_jit(M[r, c], p)
        for j in range(c, cols):
            M[r, j] = M[r, j] * inv % p
        for i in range(r + 1, rows):
            f = M[i, c]
            if f != 0:
                g = p - f
                for j in range(c, cols):
                    M[i, j] = (M[i, j] + g * M[r, j]) % p
        r += 1
    return r


def _euclid_loops(P, alpha, beta, n, p):
    a = np.zeros(alpha + 1, dtype=np.int64)
    a[alpha] = 1
    b = np.zeros(alpha + 1, dtype=np.int64)
    m = min(alpha, P.shape[0])
    for i in range(m):
        b[i] = P[i] % p
    db = -1
    for i in range(alpha, -1, -1):
        if b[i] != 0:
            db = i
            break
    best = alpha + beta
    cand = n if db < 0 else max(n, db + beta)
    if cand < best:
        best = cand
    da = alpha
    sq = (p - 1) * (p - 1)
    room = (9223372036854775807 - (p - 1)) // sq if sq > 0 else alpha + 2
    while db >= 0:
        inv = _inv_jit(b[db], p)
        head = b[: db + 1]
        pending = 0
        for k in range(da - db, -1, -1):
            # entries of a hold unreduced sums; only the one read here must be exact
            c = (a[k + db] % p) * inv % p
            if c != 0:
                if pending == room:
                    for j in range(da + 1):
                        a[j] %= p
                    pending = 0
                g = p - c
                seg = a[k: k + db + 1]
                for j in range(db + 1):
                    seg[j] += g * head[j]
                pending += 1
        for j in range(db + 1):
            a[j] %= p
        da_new = -1
        for i in range(db - 1, -1, -1):
            if a[i] != 0:
                da_new = i
                break
        dt = alpha - db
        cand = dt + n if da_new < 0 else max(dt + n, da_new + beta)
        if cand < best:
            best = cand
        a, b = b, a
        da, db = db, da_new
    return best


def _mul_trunc_loops(a, b, n, p):
    out = np.zeros(n, dtype=np.int64)
    la = min(a.shape[0], n)
    lb = min(b.shape[0], n)
    bb = np.empty(lb, dtype=np.int64)
    for j in range(lb):
        bb[j] = b[j] % p
    # rows of unreduced products that fit below 2^63 before a reduction pass
    sq = (p - 1) * (p - 1)
    room = (9223372036854775807 - (p - 1)) // sq if sq > 0 else la + 1
    pending = 0
    for i in range(la):
        ai = a[i] % p
        if ai == 0:
            continue
        if pending == room:
            for k in range(n):
                out[k] %= p
            pending = 0
        row = out[i: i + min(lb, n - i)]
        for j in range(row.shape[0]):
            row[j] += ai * bb[j]
        pending += 1
    for k in range(n):
        out[k] %= p
    return out


if JIT_ENABLED:
    _inv_jit = numba.njit(cache=True)(_inv_loop)
    _rank_jit = numba.njit(cache=True)(_rank_loops)
    _euclid_jit = numba.njit(cache=True)(_euclid_loops)
    _mul_trunc_jit = numba.njit(cache=True)(_mul_trunc_loops)
else:
    _inv_jit = _inv_loop
    _rank_jit = _euclid_jit = _mul_trunc_jit = None


def _as_i64(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=np.int64)


IMPLEMENTATIONS = {"numpy": (_rank_numpy, _euclid_numpy, _mul_trunc_numpy)}
if JIT_ENABLED:
    IMPLEMENTATIONS["numba"] = (
        lambda M, p: int(_rank_jit(_as_i64(M), p)),
        lambda P, al, be, n, p: int(_euclid_jit(_as_i64(P), al, be, n, p)),
        lambda a, b, n, p: _mul_trunc_jit(_as_i64(a), _as_i64(b), n, p),
    )

ACTIVE = "numba" if JIT_ENABLED else "numpy"
_rank_impl, _euclid_impl, _mul_impl = IMPLEMENTATIONS[ACTIVE]


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    """Rank over F_p of an integer matrix."""
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    return _rank_impl(mat, p)


def min_syzygy_degree(P: np.ndarray, alpha: int, beta: int, n: int, p: int) -> int:
    """Least degree of a syzygy of ``(X^alpha, Y^beta, H)``.

    ``H`` is a form of degree ``n`` in ``X, Y`` and ``P`` holds the
    coefficients of ``H(X, 1)`` modulo ``X^alpha``.  The syzygy module is the
    lattice of pairs ``(c, c*P mod X^alpha)`` weighted by
    ``max(deg c + n, deg(c*P mod X^alpha) + beta)``, and its minimum is
    attained on the Euclidean remainder sequence of ``(X^alpha, P)``.
    """
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    return _euclid_impl(P, alpha, beta, n, p)


def mul_trunc(a: np.ndarray, b: np.ndarray, n: int, p: int) -> np.ndarray:
    """Product of two coefficient vectors modulo ``X^n`` and ``p``."""
    return _mul_impl(a, b, n, p)
