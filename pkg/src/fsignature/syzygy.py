"""Syzygy gaps of ``(x^q, y^q, f^a)`` for products of distinct linear forms.

For ``f = l_1 ... l_r`` in ``k[x, y]`` the colength obeys
``4 l = 4 r a q - (r a)^2 + delta^2`` where ``delta`` is the difference of the
two syzygy degrees, so ``delta`` is read off the colength.  Equivalently
``s(R, f^t) = (r^2/4) t^2 - r t + 1 - (delta / 2q)^2`` at ``t = a/q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .colength import DEFAULT_LIMIT, pair_colength
from .errors import GapFormulaViolation
from .fsig import fpt_bracket
from .gfp import inv_mod
from .poly import Polynomial, RingContext


@dataclass(frozen=True)
class LinearFormProduct:
    ring: RingContext
    forms: tuple[Polynomial, ...]

    def __post_init__(self):
        if self.ring.d != 2:
            raise ValueError("linear form products live in a ring with two variables")
        forms = tuple(self.forms)
        object.__setattr__(self, "forms", forms)
        if len(forms) < 2:
            raise ValueError("need at least two linear forms")
        for l in forms:
            if l.ring != self.ring:
                raise ValueError("form lives in a different ring")
            if l.is_zero() or any(sum(e) != 1 for e in l.terms):
                raise ValueError(f"{l} is not a linear form")
        p = self.ring.p
        coords = [(l.terms.get((1, 0), 0), l.terms.get((0, 1), 0)) for l in forms]
        for i in range(len(coords)):
            for j in range(i + 1, len(coords)):
                (a, b), (c, d) = coords[i], coords[j]
                if (a * d - b * c) % p == 0:
                    raise ValueError(f"forms {forms[i]} and {forms[j]} are proportional")

    @property
    def r(self) -> int:
        return len(self.forms)

    @property
    def product(self) -> Polynomial:
        out = self.ring.one()
        for l in self.forms:
            out = out * l
        return out

    @classmethod
    def parse(cls, ring: RingContext, forms: Sequence[str]) -> LinearFormProduct:
        return cls(ring, tuple(ring.parse(s) for s in forms))

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> LinearFormProduct:
        """Split a binary form into distinct linear factors by locating its roots.

        Roots are found by evaluating at every point of P^1(F_p), so this is
        meant for small characteristics.
        """
        ring = f.ring
        p = ring.p
        if ring.d != 2 or not f.is_homogeneous() or f.is_zero():
            raise ValueError(f"{f} is not a nonzero binary form")
        if p > 100_003:
            raise ValueError("root search is limited to p <= 100003")
        r = f.degree()
        # f(x, y) = sum c_i x^i y^(r-i); factor y^k for the point at infinity
        coeffs = [f.terms.get((i, r - i), 0) for i in range(r + 1)]
        forms = []
        x, y = ring.var(ring.variables[0]), ring.var(ring.variables[1])
        if coeffs[r] == 0:
            forms.append(y)
        for lam in range(p):
            val = 0
            for c in reversed(coeffs):
                val = (val * lam + c) % p
            if val == 0:
                forms.append(x - lam * y)
        if len(forms) != r:
            raise ValueError(f"{f} is not a product of {r} distinct linear forms over F_{p}")
        # absorb the leading scalar into the first form
        monic = cls(ring, tuple(forms)).product
        e0 = next(iter(f.terms))
        if e0 not in monic.terms:
            raise ValueError(f"{f} is not a product of distinct linear forms over F_{p}")
        forms[0] = forms[0] * (f.terms[e0] * inv_mod(monic.terms[e0], p))
        out = cls(ring, tuple(forms))
        if out.product != f:
            raise ValueError(f"{f} is not a product of {r} distinct linear forms over F_{p}")
        return out


class GapSample(NamedTuple):
    e: int
    a: int
    length: int
    delta: int


def syzygy_gap(F: LinearFormProduct, a: int, e: int, *, backend: str = "auto",
               limit: int | None = DEFAULT_LIMIT) -> GapSample:
    """Colength of ``(x^q, y^q, f^a)`` and the syzygy gap it determines."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    q = F.ring.p**e
    r = F.r
    length = pair_colength(F.product, a, e, backend=backend, limit=limit)
    sq = 4 * length - 4 * r * a * q + (r * a) ** 2
    if sq < 0:
        raise GapFormulaViolation(f"4l - 4raq + (ra)^2 = {sq} < 0 at a={a}, e={e}")
    delta = math.isqrt(sq)
    if delta * delta != sq:
        raise GapFormulaViolation(f"4l - 4raq + (ra)^2 = {sq} is not a square at a={a}, e={e}")
    return GapSample(e, a, length, delta)


def monsky_hypothesis(r: int, exponents: int | Sequence[int], q: int) -> bool:
    """``0 <= a_i <= q`` and ``2 a_i <= sum a_j <= 2q`` for every ``i``."""
    if isinstance(exponents, int):
        exponents = [exponents] * r
    if len(exponents) != r:
        raise ValueError("one exponent per linear form")
    total = sum(exponents)
    return all(0 <= ai <= q and 2 * ai <= total for ai in exponents) and total <= 2 * q


def monsky_bound_holds(F: LinearFormProduct, a: int | Sequence[int], e: int,
                       delta: int) -> bool | None:
    """Check ``delta <= (r - 2) p^(e-1)``; ``None`` outside its hypothesis."""
    p = F.ring.p
    q = p**e
    if e < 1 or not monsky_hypothesis(F.r, a, q):
        return None
    return delta <= (F.r - 2) * p ** (e - 1)


def limiting_polynomial(r: int) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients ``(r^2/4, -r, 1)`` of ``g(t) = (r^2/4) t^2 - r t + 1``."""
    if r < 2:
        raise ValueError("r must be at least 2")
    return Fraction(r * r, 4), Fraction(-r), Fraction(1)


def evaluate_limit(r: int, t: Fraction) -> Fraction:
    c2, c1, c0 = limiting_polynomial(r)
    return (c2 * t + c1) * t + c0


class GapRow(NamedTuple):
    a: int
    t: Fraction
    gap: Fraction        # delta / q
    residual: Fraction   # g(t) - s(R, f^t)
    in_hypothesis: bool


def gap_series(F: LinearFormProduct, e: int, stop: int | None = None, *,
               backend: str = "auto", limit: int | None = DEFAULT_LIMIT) -> list[GapRow]:
    """Rows for ``a = 1..stop`` (default: up to the first ``a`` with ``s = 0``).

    Every row satisfies ``residual == gap**2 / 4`` exactly.
    """
    q = F.ring.p**e
    if stop is None:
        stop = fpt_bracket(F.product, e).nu + 1
    rows = []
    for a in range(1, stop + 1):
        gs = syzygy_gap(F, a, e, backend=backend, limit=limit)
        t = Fraction(a, q)
        s = 1 - Fraction(gs.length, q * q)
        residual = evaluate_limit(F.r, t) - s
        gap = Fraction(gs.delta, q)
        if residual != gap * gap / 4:
            raise GapFormulaViolation(f"residual {residual} != (delta/q)^2/4 at a={a}")
        rows.append(GapRow(a, t, gap, residual, monsky_hypothesis(F.r, a, q)))
    return rows
