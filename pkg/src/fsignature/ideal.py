"""Ideals of F_p[x_1..x_d]: Buchberger, normal forms, colengths, Frobenius powers.

The public monomial order is graded reverse lexicographic with the ring's
variable order.  An elimination order (one extra variable above grevlex) is
used internally for ideal quotients.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .errors import RingMismatch
from .gfp import inv_mod
from .poly import Polynomial, RingContext, frobenius_twist, grevlex_key, power

INFINITE = math.inf

SortKey = Callable[[tuple], tuple]


# ---------------------------------------------------------------------------
# dict-level Groebner machinery
# ---------------------------------------------------------------------------

def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _lead(terms: dict, key: SortKey) -> tuple:
    return min(terms, key=key)


def _monic(terms: dict, lt: tuple, p: int) -> dict:
    c = terms[lt]
    if c == 1:
        return terms
    inv = inv_mod(c, p)
    return {e: v * inv % p for e, v in terms.items()}


def _pure_power_bounds(polys: Sequence[dict], d: int) -> list[float]:
    bounds = [math.inf] * d
    for g in polys:
        if len(g) == 1:
            (e,) = g
            support = [i for i, x in enumerate(e) if x]
            if len(support) == 1:
                i = support[0]
                bounds[i] = min(bounds[i], e[i])
    return bounds


class _Reducer:
    """Full reduction against a fixed list of monic polynomials."""

    def __init__(self, polys: list[dict], lts: list[tuple], p: int, key: SortKey):
        self.polys = polys
        self.lts = lts
        self.p = p
        self.key = key
        d = len(lts[0]) if lts else 0
        self.bounds = _pure_power_bounds(polys, d)

    def _in_box(self, e: tuple) -> bool:
        return all(x < b for x, b in zip(e, self.bounds))

    def reduce(self, h: dict) -> dict:
        p, key = self.p, self.key
        h = {e: c for e, c in h.items() if self._in_box(e)}
        heap = [(key(e), e) for e in h]
        heapq.heapify(heap)
        rem = {}
        polys, lts, bounds = self.polys, self.lts, self.bounds
        while heap:
            _, e = heapq.heappop(heap)
            c = h.pop(e, 0)
            if not c:
                continue
            for g, lt in zip(polys, lts):
                if _divides(lt, e):
                    break
            else:
                rem[e] = c
                continue
            shift = tuple(x - y for x, y in zip(e, lt))
            neg = p - c
            for ge, gc in g.items():
                if ge == lt:
                    continue
                ne = tuple(x + y for x, y in zip(ge, shift))
                if not all(x < b for x, b in zip(ne, bounds)):
                    continue
                old = h.get(ne)
                nc = ((old or 0) + neg * gc) % p
                if nc:
                    if old is None:
                        heapq.heappush(heap, (key(ne), ne))
                    h[ne] = nc
                elif old is not None:
                    del h[ne]
        return rem


def _spoly(f: dict, lf: tuple, g: dict, lg: tuple, p: int) -> dict:
    L = _lcm(lf, lg)
    sf = tuple(x - y for x, y in zip(L, lf))
    sg = tuple(x - y for x, y in zip(L, lg))
    out: dict = {}
    for e, c in f.items():
        ne = tuple(x + y for x, y in zip(e, sf))
        out[ne] = c
    for e, c in g.items():
        ne = tuple(x + y for x, y in zip(e, sg))
        v = (out.get(ne, 0) - c) % p
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    return out


def buchberger(gens: Sequence[dict], p: int, key: SortKey) -> list[dict]:
    """Reduced monic Groebner basis of the ideal spanned by ``gens``.

    Pairs are processed smallest-lcm first and pruned with the Gebauer-Moeller
    update, which covers Buchberger's coprime and chain criteria.
    """
    polys: list[dict] = []
    lts: list[tuple] = []
    active: list[int] = []
    pairs: list = []  # heap of (key(lcm), i, j)
    pair_set: set[tuple[int, int]] = set()

    def add(h: dict) -> None:
        lt_h = _lead(h, key)
        h = _monic(h, lt_h, p)
        k = len(polys)
        polys.append(h)
        lts.append(lt_h)
        # Gebauer-Moeller update
        cand = list(active)
        keep = []
        for idx, i in enumerate(cand):
            li = _lcm(lts[i], lt_h)
            if _coprime(lts[i], lt_h):
                keep.append(i)
                continue
            redundant = False
            for j in cand[idx + 1:]:
                if _divides(_lcm(lts[j], lt_h), li):
                    redundant = True
                    break
            if not redundant:
                for j in keep:
                    if _divides(_lcm(lts[j], lt_h), li):
                        redundant = True
                        break
            if not redundant:
                keep.append(i)
        new_pairs = [i for i in keep if not _coprime(lts[i], lt_h)]
        # drop old pairs made redundant by h
        for (i, j) in list(pair_set):
            L = _lcm(lts[i], lts[j])
            if (_divides(lt_h, L) and _lcm(lts[i], lt_h) != L
                    and _lcm(lts[j], lt_h) != L):
                pair_set.discard((i, j))
        for i in new_pairs:
            pair_set.add((i, k))
            heapq.heappush(pairs, (key(_lcm(lts[i], lt_h)), i, k))
        active[:] = [i for i in active if not _divides(lt_h, lts[i])] + [k]

    for g in gens:
        if not g:
            continue
        if polys:
            g = _Reducer([polys[i] for i in active], [lts[i] for i in active], p, key).reduce(g)
            if not g:
                continue
        add(dict(g))
    while pairs:
        _, i, j = heapq.heappop(pairs)
        if (i, j) not in pair_set:
            continue
        pair_set.discard((i, j))
        s = _spoly(polys[i], lts[i], polys[j], lts[j], p)
        h = _Reducer([polys[k] for k in active], [lts[k] for k in active], p, key).reduce(s)
        if h:
            add(h)
    return _interreduce([polys[i] for i in active], p, key)


def _interreduce(basis: list[dict], p: int, key: SortKey) -> list[dict]:
    items = [(g, _lead(g, key)) for g in basis if g]
    minimal = []
    for idx, (g, lt) in enumerate(items):
        if any(_divides(lt2, lt) and (lt2 != lt or jdx < idx)
               for jdx, (_, lt2) in enumerate(items) if jdx != idx):
            continue
        minimal.append((g, lt))
    out = []
    for idx, (g, lt) in enumerate(minimal):
        others = [h for jdx, h in enumerate(minimal) if jdx != idx]
        tail = {e: c for e, c in g.items() if e != lt}
        if others:
            tail = _Reducer([h for h, _ in others], [l for _, l in others], p, key).reduce(tail)
        red = dict(tail)
        red[lt] = g[lt]
        out.append((_monic(red, lt, p), lt))
    out.sort(key=lambda t: key(t[1]))
    return [g for g, _ in out]


def count_standard_monomials(lts: Sequence[tuple], d: int) -> float:
    """Number of monomials outside the monomial ideal generated by ``lts``."""
    lts = [tuple(e) for e in lts]
    if any(all(x == 0 for x in e) for e in lts):
        return 0
    for i in range(d):
        if not any(e[i] > 0 and all(x == 0 for j, x in enumerate(e) if j != i) for e in lts):
            return INFINITE
    return _count_rec(frozenset(lts), d)


@lru_cache(maxsize=None)
def _count_rec(lts: frozenset, d: int) -> int:
    if any(all(x == 0 for x in e) for e in lts):
        return 0
    if d == 1:
        return min(e[0] for e in lts)
    if d == 2:
        # staircase sweep along the first variable
        bound_x = min(e[0] for e in lts if e[1] == 0)
        steps = sorted(lts)
        total = 0
        cap = math.inf
        k = 0
        for i in range(bound_x):
            while k < len(steps) and steps[k][0] <= i:
                cap = min(cap, steps[k][1])
                k += 1
            total += cap
        return int(total)
    bound = min(e[0] for e in lts if all(x == 0 for x in e[1:]))
    total = 0
    for i in range(bound):
        sub = frozenset(e[1:] for e in lts if e[0] <= i)
        total += _count_rec(_minimalize(sub), d - 1)
    return total


def _minimalize(lts: frozenset) -> frozenset:
    lst = sorted(lts, key=sum)
    keep = []
    for e in lst:
        if not any(_divides(k, e) for k in keep):
            keep.append(e)
    return frozenset(keep)


# ---------------------------------------------------------------------------
# public ideal type
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class IdealBasis:
    ring: RingContext
    generators: tuple[Polynomial, ...]
    _gb: tuple[Polynomial, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if not isinstance(g, Polynomial):
                raise TypeError(f"generator {g!r} is not a Polynomial")
            if g.ring != self.ring:
                raise RingMismatch("generator lives in a different ring")
            if not g.is_zero():
                gens.append(g)
        self.generators = tuple(gens)

    @classmethod
    def of(cls, ring: RingContext, *gens: Polynomial | str) -> IdealBasis:
        return cls(ring, tuple(ring.parse(g) if isinstance(g, str) else g for g in gens))

    @classmethod
    def maximal(cls, ring: RingContext) -> IdealBasis:
        return cls(ring, tuple(ring.gens()))

    @property
    def groebner_basis(self) -> tuple[Polynomial, ...]:
        if self._gb is None:
            gb = buchberger([g.terms for g in self.generators], self.ring.p, grevlex_key)
            self._gb = tuple(Polynomial(self.ring, g) for g in gb)
        return self._gb

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_term()[0] for g in self.groebner_basis]

    def __contains__(self, g: Polynomial) -> bool:
        return normal_form(g, self).is_zero()

    def __repr__(self) -> str:
        return f"IdealBasis<{', '.join(map(str, self.generators)) or '0'}>"


def groebner(I: IdealBasis) -> IdealBasis:
    """Populate and return ``I`` with its reduced grevlex Groebner basis cached."""
    I.groebner_basis
    return I


def normal_form(g: Polynomial, I: IdealBasis) -> Polynomial:
    """Remainder of ``g`` on division by the Groebner basis of ``I``; zero iff ``g`` is in ``I``."""
    if g.ring != I.ring:
        raise RingMismatch("polynomial and ideal live in different rings")
    gb = I.groebner_basis
    if not gb:
        return g
    polys = [h.terms for h in gb]
    lts = [h.leading_term()[0] for h in gb]
    return Polynomial(g.ring, _Reducer(polys, lts, g.ring.p, grevlex_key).reduce(g.terms))


def colength(I: IdealBasis) -> float:
    """``dim_k R/I``: the number of standard monomials, or ``INFINITE``."""
    if not I.generators:
        return INFINITE
    return count_standard_monomials(I.leading_monomials(), I.ring.d)


def frobenius_power(I: IdealBasis, e: int) -> IdealBasis:
    """``I^[p^e]``, generated by the ``p^e``-th powers of the generators of ``I``."""
    if e < 0:
        raise ValueError("e must be nonnegative")
    return IdealBasis(I.ring, tuple(frobenius_twist(g, e) for g in I.generators))


def contains_ideal(I: IdealBasis, J: IdealBasis) -> bool:
    """True iff ``J`` is contained in ``I``."""
    return all(g in I for g in J.generators)


def same_ideal(I: IdealBasis, J: IdealBasis) -> bool:
    return contains_ideal(I, J) and contains_ideal(J, I)


def _elim_key(e: tuple) -> tuple:
    return (-e[0], *grevlex_key(e[1:]))


def _divide_exact(h: dict, r: dict, p: int) -> dict:
    lt_r = _lead(r, grevlex_key)
    inv = inv_mod(r[lt_r], p)
    h = dict(h)
    quot: dict = {}
    while h:
        e = _lead(h, grevlex_key)
        if not _divides(lt_r, e):
            raise ArithmeticError("division is not exact")
        c = h[e] * inv % p
        shift = tuple(x - y for x, y in zip(e, lt_r))
        quot[shift] = c
        for re_, rc in r.items():
            ne = tuple(x + y for x, y in zip(re_, shift))
            v = (h.get(ne, 0) - c * rc) % p
            if v:
                h[ne] = v
            else:
                h.pop(ne, None)
    return quot


def ideal_quotient(J: IdealBasis, r: Polynomial) -> IdealBasis:
    """``(J : r)`` via ``J ∩ (r) = elim_t(t*J + (1-t)*r)`` and exact division by ``r``."""
    if r.ring != J.ring:
        raise RingMismatch("element and ideal live in different rings")
    if r.is_zero():
        return IdealBasis(J.ring, (J.ring.one(),))
    p = J.ring.p
    gens = []
    for g in J.generators:
        gens.append({(1, *e): c for e, c in g.terms.items()})
    one_minus_t = {}
    for e, c in r.terms.items():
        one_minus_t[(0, *e)] = c
        one_minus_t[(1, *e)] = (p - c) % p
    gens.append(one_minus_t)
    gb = buchberger(gens, p, _elim_key)
    inter = [{e[1:]: c for e, c in g.items()} for g in gb if all(e[0] == 0 for e in g)]
    quot = tuple(Polynomial(J.ring, _divide_exact(h, r.terms, p)) for h in inter)
    return IdealBasis(J.ring, quot)


def _ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def splitting_certificate(J: IdealBasis, f: Polynomial, t: Fraction | int, e_max: int) -> list[bool]:
    """Entry ``e-1`` tells whether ``f^ceil(t(p^e-1)) * J`` lies in ``J^[p^e]``.

    Only the finite range ``1 <= e <= e_max`` is checked.
    """
    t = Fraction(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    if f.ring != J.ring:
        raise RingMismatch("element and ideal live in different rings")
    p = J.ring.p
    out = []
    for e in range(1, e_max + 1):
        Je = frobenius_power(J, e)
        k = _ceil_fraction(t * (p**e - 1))
        fk = power(f, k)
        out.append(all((fk * g) in Je for g in J.generators))
    return out
