"""The colength ``l(R / (m^[q] + (f^a)))`` behind every F-signature value.

Three interchangeable backends compute it:

``rank``
    ``q^d`` minus the F_p-rank of multiplication by ``f^a`` on the monomial
    basis of ``R/m^[q]``.  When ``f`` is homogeneous for some positive weight
    vector the matrix is block diagonal by weighted degree and each block is
    eliminated separately.
``groebner``
    Count of standard monomials of a reduced grevlex basis of
    ``(x_1^q, ..., x_d^q, f^a)``.
``euclid``
    Two variables only, ``f = h(x^v, y^u)`` with ``h`` a binary form.  The
    quotient splits into ``u*v`` pieces ``k[X,Y]/(X^A, Y^B, h^a)``; each has a
    rank-two graded syzygy module whose generator degrees ``m1 + m2 = A+B+n``
    give the length ``(m1^2 + m2^2 - A^2 - B^2 - n^2) / 2``.  The smaller
    degree comes from a Euclidean remainder sequence (see
    :func:`fsignature.kernels.min_syzygy_degree`), so the cost is
    ``O(q^2 / v)`` instead of a ``q^2``-dimensional elimination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ResourceLimit, UnitElement
from .ideal import IdealBasis, colength
from .poly import Polynomial, power

BACKENDS = ("auto", "rank", "groebner", "euclid")
RANK_CUTOFF = 2**14
DEFAULT_LIMIT = 2**24
MAX_DENSE_ENTRIES = 2**25


@dataclass(frozen=True)
class BinaryFormShape:
    """``f = h(x^v, y^u)`` with ``h`` a form of degree ``r`` in ``X, Y``.

    ``h_coeffs[i]`` is the coefficient of ``X^i Y^(r-i)``.  The weights of
    ``x`` and ``y`` are ``u`` and ``v``.
    """

    u: int
    v: int
    r: int
    h_coeffs: tuple[int, ...]


def grading_weights(f: Polynomial) -> tuple[int, ...] | None:
    """Positive integer weights making ``f`` weighted homogeneous, if easily found."""
    exps = list(f.terms)
    d = f.ring.d
    if len(exps) <= 1 or len({sum(e) for e in exps}) == 1:
        return (1,) * d
    if d != 2:
        return None
    (i0, j0) = exps[0]
    di, dj = next((i - i0, j - j0) for i, j in exps[1:])
    if di * dj >= 0:
        return None
    g = math.gcd(di, dj)
    v, u = abs(di) // g, abs(dj) // g
    deg = u * i0 + v * j0
    if any(u * i + v * j != deg for i, j in exps):
        return None
    return (u, v)


def binary_form_shape(f: Polynomial) -> BinaryFormShape | None:
    """Detect ``f = h(x^v, y^u)``; ``None`` when the euclid backend cannot be used."""
    if f.ring.d != 2 or f.is_zero():
        return None
    w = grading_weights(f)
    if w is None:
        return None
    u, v = w
    exps = list(f.terms)
    if len(exps) == 1:
        u = v = 1
    if any(i % v or j % u for i, j in exps):
        return None
    r = exps[0][0] // v + exps[0][1] // u
    coeffs = [0] * (r + 1)
    for (i, j), c in f.terms.items():
        coeffs[i // v] = c
    return BinaryFormShape(u, v, r, tuple(coeffs))


# ---------------------------------------------------------------------------
# rank backend
# ---------------------------------------------------------------------------

def _colength_rank(g: Polynomial, q: int, weights: tuple[int, ...] | None) -> int:
    d, p = g.ring.d, g.ring.p
    N = q**d
    mons = np.indices((q,) * d).reshape(d, -1).T.astype(np.int64)
    lin_mult = np.array([q ** (d - 1 - k) for k in range(d)], dtype=np.int64)
    w = np.array(weights if weights is not None else (0,) * d, dtype=np.int64)
    wt = mons @ w
    deg_g = int(np.dot(next(iter(g.terms)), w))

    # position of each monomial inside its weight class
    order = np.argsort(wt, kind="stable")
    classes, starts, sizes = np.unique(wt[order], return_index=True, return_counts=True)
    pos = np.empty(N, dtype=np.int64)
    pos[order] = np.arange(N) - np.repeat(starts, sizes)
    size_of = dict(zip(classes.tolist(), sizes.tolist()))

    # block for source weight W: rows = weight W + deg_g, cols = weight W
    blocks = []
    offset = {}
    total = 0
    for W, ncols in size_of.items():
        nrows = size_of.get(W + deg_g, 0)
        if nrows == 0:
            continue
        offset[W] = (total, nrows, ncols)
        blocks.append(W)
        total += nrows * ncols
    if total > MAX_DENSE_ENTRIES:
        raise ResourceLimit(f"rank backend would need {total} dense matrix entries")
    buf = np.zeros(total, dtype=np.int64)
    off_arr = np.full(N, -1, dtype=np.int64)
    ncols_arr = np.zeros(N, dtype=np.int64)
    for W in blocks:
        o, _, nc = offset[W]
        sel = wt == W
        off_arr[sel] = o
        ncols_arr[sel] = nc

    has_block = off_arr >= 0
    for e, c in g.terms.items():
        tgt = mons + np.array(e, dtype=np.int64)
        ok = has_block & np.all(tgt < q, axis=1)
        src = np.flatnonzero(ok)
        if src.size == 0:
            continue
        tgt_lin = tgt[src] @ lin_mult
        flat = off_arr[src] + pos[tgt_lin] * ncols_arr[src] + pos[src]
        buf[flat] = c

    rank = 0
    for W in blocks:
        o, nr, nc = offset[W]
        rank += kernels.rank_mod_p(buf[o: o + nr * nc].reshape(nr, nc), p)
    return N - rank


# ---------------------------------------------------------------------------
# euclid backend
# ---------------------------------------------------------------------------

def _series_power(h: np.ndarray, a: int, n: int, p: int) -> np.ndarray:
    """``h(X)^a mod X^n``, splitting ``a`` into base-p digits."""
    result = np.zeros(n, dtype=np.int64)
    result[0] = 1
    k = 0
    while a:
        a, digit = divmod(a, p)
        stride = p**k
        k += 1
        if digit == 0:
            continue
        m = -(-n // stride)  # coefficients that survive the stretch
        piece = np.zeros(m, dtype=np.int64)
        piece[0] = 1
        base = np.zeros(m, dtype=np.int64)
        base[: min(m, h.size)] = h[:m]
        while digit:
            if digit & 1:
                piece = kernels.mul_trunc(piece, base, m, p)
            digit >>= 1
            if digit:
                base = kernels.mul_trunc(base, base, m, p)
        stretched = np.zeros(n, dtype=np.int64)
        stretched[::stride] = piece[: stretched[::stride].size]
        result = kernels.mul_trunc(result, stretched, n, p)
    return result


def _binary_colength(G: np.ndarray, n: int, A: int, B: int, p: int) -> int:
    """``l(k[X,Y]/(X^A, Y^B, H))`` for a form ``H`` of degree ``n`` with ``H(X,1) = G``."""
    if A <= 0 or B <= 0:
        return 0
    m2 = kernels.min_syzygy_degree(G[:A], A, B, n, p)
    m1 = A + B + n - m2
    twice = m1 * m1 + m2 * m2 - A * A - B * B - n * n
    return twice // 2


def _colength_euclid(shape: BinaryFormShape, a: int, q: int, p: int) -> int:
    u, v = shape.u, shape.v
    n = shape.r * a
    A_max = -(-q // v)
    h = np.array(shape.h_coeffs, dtype=np.int64)
    G = _series_power(h, a, A_max, p)
    cache: dict[tuple[int, int], int] = {}
    total = 0
    for rho in range(v):
        A = -(-(q - rho) // v)
        for sigma in range(u):
            B = -(-(q - sigma) // u)
            key = (A, B)
            if key not in cache:
                cache[key] = _binary_colength(G, n, A, B, p)
            total += cache[key]
    return total


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _check(f: Polynomial, a: int, e: int) -> None:
    if f.is_zero():
        raise ValueError("f must be nonzero")
    if a < 0 or e < 0:
        raise ValueError("a and e must be nonnegative")
    if a >= 1 and f.constant_term():
        raise UnitElement(f"{f} is a unit at the origin")


def resolve_backend(f: Polynomial, e: int, backend: str = "auto",
                    rank_cutoff: int | None = None) -> str:
    """Backend that will serve ``(f, e)``; ``rank_cutoff`` defaults to :data:`RANK_CUTOFF`."""
    if rank_cutoff is None:
        rank_cutoff = RANK_CUTOFF
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; choose from {BACKENDS}")
    if backend != "auto":
        if backend == "euclid" and binary_form_shape(f) is None:
            raise ValueError("euclid backend needs f(x, y) = h(x^v, y^u) with h a binary form")
        return backend
    N = f.ring.p ** (e * f.ring.d)
    if N <= rank_cutoff and _rank_fits(f, e):
        return "rank"
    if binary_form_shape(f) is not None:
        return "euclid"
    return "groebner"


def _rank_fits(f: Polynomial, e: int) -> bool:
    q, d = f.ring.p**e, f.ring.d
    if grading_weights(f) is not None:
        return True
    return q ** (2 * d) <= MAX_DENSE_ENTRIES


def pair_colength_with_backend(f: Polynomial, a: int, e: int, *, backend: str = "auto",
                               limit: int | None = DEFAULT_LIMIT,
                               rank_cutoff: int | None = None) -> tuple[int, str]:
    """Like :func:`pair_colength` but also report which backend produced the value."""
    _check(f, a, e)
    ring = f.ring
    p, d = ring.p, ring.d
    q = p**e
    N = q**d
    if limit is not None and N > limit:
        raise ResourceLimit(f"q^d = {N} standard monomials exceeds the limit {limit}")
    name = resolve_backend(f, e, backend, rank_cutoff)
    if a == 0:
        return 0, name
    if name == "euclid":
        return _colength_euclid(binary_form_shape(f), a, q, p), name
    g = power(f, a, truncate=q)
    if g.is_zero():
        return N, name
    if name == "rank":
        return _colength_rank(g, q, grading_weights(f)), name
    gens = [ring.monomial(tuple(q if k == i else 0 for k in range(d))) for i in range(d)]
    value = colength(IdealBasis(ring, (*gens, g)))
    return int(value), name


def pair_colength(f: Polynomial, a: int, e: int, *, backend: str = "auto",
                  limit: int | None = DEFAULT_LIMIT, rank_cutoff: int | None = None) -> int:
    """``l(R / (m^[p^e] + (f^a)))`` for ``R = F_p[x_1..x_d]``."""
    return pair_colength_with_backend(f, a, e, backend=backend, limit=limit,
                                      rank_cutoff=rank_cutoff)[0]


def colon_colength(f: Polynomial, a: int, e: int, **kwargs) -> int:
    """``l(R / (m^[p^e] : f^a)) = p^(ed) - l(R / (m^[p^e] + (f^a)))``."""
    N = f.ring.p ** (e * f.ring.d)
    return N - pair_colength(f, a, e, **kwargs)


def in_frobenius_power_of_max(f: Polynomial, a: int, e: int) -> bool:
    """True iff ``f^a`` lies in ``m^[p^e]``."""
    return power(f, a, truncate=f.ring.p**e).is_zero()
