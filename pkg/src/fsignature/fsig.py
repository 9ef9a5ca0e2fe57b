"""F-signature of pairs ``s(R, f^t)`` at p-adic rationals, and derived sequences.

At ``t = a/p^e`` the value is exact:
``s(R, f^(a/p^e)) = 1 - l(R/(m^[p^e] + (f^a))) / p^(ed)``.
Values at other ``t`` are only approached through the sequences
``t_e = a*K_e / p^(e*sigma)`` with ``K_e = 1 + p^sigma + ... + p^((e-1)sigma)``.
"""

from __future__ import annotations

import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .colength import (DEFAULT_LIMIT, colon_colength, in_frobenius_power_of_max,
                       pair_colength_with_backend)
from .errors import DuplicateAbscissa, MissingSample, UnitElement
from .poly import Polynomial

log = logging.getLogger(__name__)


class Sample(NamedTuple):
    a: int
    t: Fraction
    s: Fraction


@dataclass
class SignatureSeries:
    p: int
    e: int
    source: str
    samples: list[Sample] = field(default_factory=list)
    backends: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def sample(self, a: int) -> Sample:
        for smp in self.samples:
            if smp.a == a:
                return smp
        raise MissingSample(f"no sample at a = {a}")

    def check_invariants(self) -> None:
        q = self.p**self.e
        prev = None
        for smp in self.samples:
            if smp.t != Fraction(smp.a, q):
                raise AssertionError(f"t != a/q at a = {smp.a}")
            if not 0 <= smp.s <= 1:
                raise AssertionError(f"s out of range at a = {smp.a}")
            if prev is not None:
                if smp.a <= prev.a:
                    raise AssertionError("samples not strictly increasing in a")
                if smp.s > prev.s:
                    raise AssertionError(f"s increases at a = {smp.a}")
            elif smp.a == 0 and smp.s != 1:
                raise AssertionError("s(0) != 1")
            prev = smp


@dataclass(frozen=True)
class ThresholdBracket:
    """``FPT(f)`` lies in ``(lower, upper]``; ``nu`` is the largest ``a`` with ``f^a`` outside ``m^[p^e]``."""

    e: int
    nu: int
    lower: Fraction
    upper: Fraction

    def __str__(self) -> str:
        return f"e={self.e} nu={self.nu} FPT in ({self.lower}, {self.upper}]"


def _value(f: Polynomial, a: int, e: int, backend: str, limit) -> tuple[Fraction, str]:
    length, used = pair_colength_with_backend(f, a, e, backend=backend, limit=limit)
    N = f.ring.p ** (e * f.ring.d)
    return 1 - Fraction(length, N), used


def fsig_value(f: Polynomial, a: int, e: int, *, backend: str = "auto",
               limit: int | None = DEFAULT_LIMIT) -> Fraction:
    """Exact ``s(R, f^(a/p^e))``."""
    return _value(f, a, e, backend, limit)[0]


def _require_in_max(f: Polynomial) -> None:
    if f.is_zero():
        raise ValueError("f must be nonzero")
    if f.constant_term():
        raise UnitElement(f"{f} is a unit at the origin; its F-pure threshold is +infinity")


def fpt_bracket(f: Polynomial, e: int) -> ThresholdBracket:
    """Bracket ``FPT(f)`` at level ``e`` by binary search on ``f^a in m^[p^e]``."""
    _require_in_max(f)
    if e < 0:
        raise ValueError("e must be nonnegative")
    q = f.ring.p**e
    lo, hi = 0, f.ring.d * (q - 1) + 1  # f^lo not in m^[q], f^hi in m^[q]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if in_frobenius_power_of_max(f, mid, e):
            hi = mid
        else:
            lo = mid
    return ThresholdBracket(e, lo, Fraction(lo, q), Fraction(lo + 1, q))


def _sweep_worker(args) -> tuple[Fraction, str]:
    f, a, e, backend, limit = args
    return _value(f, a, e, backend, limit)


def fsig_sweep(f: Polynomial, e: int, stop_at_zero: bool = True, *, backend: str = "auto",
               limit: int | None = DEFAULT_LIMIT, jobs: int = 1) -> SignatureSeries:
    """Sample ``s(R, f^(a/p^e))`` for ``a = 0, 1, ...``.

    With ``stop_at_zero`` the series ends at the first zero value, which sits at
    ``nu + 1`` for the level-``e`` threshold bracket; otherwise it runs to
    ``a = d * p^e``.  ``jobs > 1`` evaluates samples in worker processes; the
    result does not depend on ``jobs``.
    """
    _require_in_max(f)
    q = f.ring.p**e
    last = fpt_bracket(f, e).nu + 1 if stop_at_zero else f.ring.d * q
    tasks = [(f, a, e, backend, limit) for a in range(last + 1)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_worker, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_sweep_worker(t) for t in tasks]
    series = SignatureSeries(f.ring.p, e, str(f))
    for a, (s, used) in enumerate(results):
        series.samples.append(Sample(a, Fraction(a, q), s))
        series.backends.append(used)
    log.debug("swept %d samples of %s at e=%d", len(series), f, e)
    return series


def frobenius_fraction(c: Fraction, p: int) -> tuple[int, int]:
    """Write ``c = a / (p^sigma - 1)`` with the least ``sigma >= 1``."""
    c = Fraction(c)
    den = c.denominator
    if den % p == 0:
        raise ValueError(f"denominator of {c} is divisible by p = {p}")
    sigma = 1
    while (p**sigma - 1) % den:
        sigma += 1
    return c.numerator * (p**sigma - 1) // den, sigma


def _K(p: int, sigma: int, e: int) -> int:
    return sum(p ** (i * sigma) for i in range(e))


def splitting_ratio_terms(f: Polynomial, a: int, sigma: int, m: int, E: int, *,
                          backend: str = "auto", limit: int | None = DEFAULT_LIMIT) -> list[Fraction]:
    """Terms ``l(R/(m^[p^(e sigma)] : f^(a K_e))) / p^(e sigma m)`` for ``e = 1..E``.

    These approximate the F-splitting ratio of ``(R, f^c)`` with
    ``c = a/(p^sigma - 1)`` when ``m`` is the splitting dimension.  Their values
    depend on the chosen ``(a, sigma)`` representation of ``c``.
    """
    if sigma < 1 or E < 1 or a < 0:
        raise ValueError("need sigma >= 1, E >= 1, a >= 0")
    if not 0 <= m <= f.ring.d:
        raise ValueError(f"m must lie in [0, {f.ring.d}]")
    p = f.ring.p
    out = []
    for e in range(1, E + 1):
        level = e * sigma
        L = colon_colength(f, a * _K(p, sigma, e), level, backend=backend, limit=limit)
        out.append(Fraction(L, p ** (level * m)))
    return out


@dataclass
class SplittingScan:
    """Heuristic scan over candidate splitting dimensions."""

    terms: dict[int, list[Fraction]]
    candidate: int | None


def splitting_dimension_scan(f: Polynomial, a: int, sigma: int, E: int, **kwargs) -> SplittingScan:
    """Report the ratio sequence for every ``m = d, ..., 0``.

    ``candidate`` is the largest ``m`` whose terms never shrink by a factor of
    ``p`` or more from one ``e`` to the next.  This is a heuristic: a limsup
    cannot be decided from finitely many terms.
    """
    d, p = f.ring.d, f.ring.p
    base = splitting_ratio_terms(f, a, sigma, 0, E, **kwargs)
    terms = {}
    candidate = None
    for m in range(d, -1, -1):
        seq = [L / p ** ((i + 1) * sigma * m) for i, L in enumerate(base)]
        terms[m] = seq
        decays = any(nxt * p <= cur for cur, nxt in zip(seq, seq[1:])) or all(t == 0 for t in seq)
        if candidate is None and not decays:
            candidate = m
    return SplittingScan(terms, candidate)


def approx_nth_derivative_terms(f: Polynomial, a: int, sigma: int, n: int, E: int, *,
                                backend: str = "auto",
                                limit: int | None = DEFAULT_LIMIT) -> list[Fraction]:
    """Terms ``s(R, f^(t_e)) / (t_e - c)^n`` with ``t_e = a K_e / p^(e sigma)``, ``c = a/(p^sigma - 1)``.

    When ``n = d - sdim(R, f^c)`` and ``c = FPT(f)`` the limsup of these terms is
    ``(-c)^(-n) r_F(R, f^c)``.
    """
    if a < 1 or sigma < 1 or n < 1 or E < 1:
        raise ValueError("need a, sigma, n, E >= 1")
    p = f.ring.p
    c = Fraction(a, p**sigma - 1)
    upper = fpt_bracket(f, sigma).upper
    if c > upper:
        warnings.warn(f"c = {c} exceeds the FPT bracket upper bound {upper}; terms will vanish",
                      stacklevel=2)
    out = []
    for e in range(1, E + 1):
        level = e * sigma
        A = a * _K(p, sigma, e)
        t_e = Fraction(A, p**level)
        s = fsig_value(f, A, level, backend=backend, limit=limit)
        out.append(s / (t_e - c) ** n)
    return out


Point = tuple[Fraction, Fraction]


def slope(P: Point, Q: Point) -> Fraction:
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2:
        raise DuplicateAbscissa(f"both points have abscissa {x1}")
    return (Fraction(y1) - Fraction(y2)) / (Fraction(x1) - Fraction(x2))


def difference_quotient(series: SignatureSeries, a1: int, a2: int) -> Fraction:
    """``(s(a1) - s(a2)) / (t(a1) - t(a2))`` between two samples of ``series``."""
    if a1 == a2:
        raise ValueError("a1 and a2 must differ")
    s1, s2 = series.sample(a1), series.sample(a2)
    return slope((s1.t, s1.s), (s2.t, s2.s))


def collinear(points: Sequence[Point]) -> bool:
    """True iff all points lie on one line (exact arithmetic)."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if len(pts) < 3:
        raise ValueError("collinearity needs at least three points")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa("points must have distinct abscissae")
    first = slope(pts[0], pts[1])
    return all(slope(pts[0], P) == first for P in pts[2:])
