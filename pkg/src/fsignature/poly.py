"""Sparse multivariate polynomials over a prime field.

A polynomial is a map from exponent tuples to residues in ``[0, p)``; zero
coefficients are never stored.  Powers are formed digit by digit in base p,
so ``f**a`` costs one small power per nonzero digit of ``a`` and the
Frobenius twist is a pure exponent rescaling.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ParseError, RingMismatch, UnknownVariable
from .gfp import PrimeChar, base_p_digits

Exponent = tuple  # tuple[int, ...] of length d


@dataclass(frozen=True)
class RingContext:
    char: PrimeChar
    variables: tuple[str, ...]

    def __post_init__(self):
        if not isinstance(self.char, PrimeChar):
            object.__setattr__(self, "char", PrimeChar(self.char))
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"invalid variable name {v!r}")

    @classmethod
    def make(cls, p: int, variables: str | Iterable[str] = "x,y") -> RingContext:
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        return cls(PrimeChar(p), tuple(variables))

    @property
    def p(self) -> int:
        return self.char.p

    @property
    def d(self) -> int:
        return len(self.variables)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c: int) -> Polynomial:
        c %= self.p
        return Polynomial(self, {(0,) * self.d: c} if c else {})

    def monomial(self, exps: Exponent, c: int = 1) -> Polynomial:
        c %= self.p
        return Polynomial(self, {tuple(exps): c} if c else {})

    def var(self, name: str) -> Polynomial:
        i = self.variables.index(name)
        return self.monomial(tuple(int(j == i) for j in range(self.d)))

    def gens(self) -> list[Polynomial]:
        return [self.var(v) for v in self.variables]

    def parse(self, text: str) -> Polynomial:
        return parse_poly(text, self)


def grevlex_key(e: Exponent) -> tuple:
    """Sort key under which larger monomials (grevlex) come first."""
    return (-sum(e), *reversed(e))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` must not be mutated."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingContext, terms: Mapping[Exponent, int]):
        self.ring = ring
        self.terms = dict(terms)
        self._hash = None

    # construction helpers -------------------------------------------------
    def _same_ring(self, other: Polynomial) -> None:
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring.variables} over F_{self.ring.p} vs "
                               f"{other.ring.variables} over F_{other.ring.p}")

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._same_ring(other)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ring.d, 0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_term(self) -> tuple[Exponent, int]:
        e = min(self.terms, key=grevlex_key)
        return e, self.terms[e]

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, a: int):
        return power(self, a)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __reduce__(self):
        return (Polynomial, (self.ring, self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.variables
        parts = []
        for e in sorted(self.terms, key=grevlex_key):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, F_{self.ring.p}[{','.join(self.ring.variables)}])"


def _mul_terms(a: Mapping, b: Mapping, p: int, bound: int | None) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    blist = list(b.items())
    for ea, ca in a.items():
        for eb, cb in blist:
            e = tuple(x + y for x, y in zip(ea, eb))
            if bound is not None and max(e) >= bound:
                continue
            out[e] = (get(e, 0) + ca * cb) % p
    return {e: c for e, c in out.items() if c}


def multiply(f: Polynomial, g: Polynomial, *, truncate: int | None = None) -> Polynomial:
    """Product of ``f`` and ``g``; with ``truncate=q`` terms having any exponent >= q are dropped."""
    f._same_ring(g)
    return Polynomial(f.ring, _mul_terms(f.terms, g.terms, f.ring.p, truncate))


def frobenius_twist(f: Polynomial, e: int, *, truncate: int | None = None) -> Polynomial:
    """``f**(p**e)``: coefficients are fixed by Frobenius, only exponents scale."""
    if e < 0:
        raise ValueError("e must be nonnegative")
    k = f.ring.p ** e
    out = {}
    for ex, c in f.terms.items():
        ne = tuple(k * x for x in ex)
        if truncate is None or max(ne, default=0) < truncate:
            out[ne] = c
    return Polynomial(f.ring, out)


def _small_power(terms: dict, a: int, p: int, d: int, bound: int | None) -> dict:
    result = {(0,) * d: 1}
    base = terms
    while a:
        if a & 1:
            result = _mul_terms(result, base, p, bound)
        a >>= 1
        if a:
            base = _mul_terms(base, base, p, bound)
    return result


def power(f: Polynomial, a: int, *, truncate: int | None = None) -> Polynomial:
    """``f**a`` via ``a = sum a_i p^i`` and ``f**a = prod twist(f**a_i, i)``.

    With ``truncate=q`` the result is reduced modulo the monomial ideal
    ``(x_1^q, ..., x_d^q)`` along the way.
    """
    if a < 0:
        raise ValueError("negative exponent")
    ring = f.ring
    p, d = ring.p, ring.d
    if truncate is not None and truncate <= 0:
        return ring.zero()
    acc = Polynomial(ring, {(0,) * d: 1})
    for i, digit in enumerate(base_p_digits(a, p)):
        if digit == 0:
            continue
        # exponents >= ceil(q / p^i) leave the box once twisted
        inner = None if truncate is None else -(-truncate // p**i)
        piece = Polynomial(ring, _small_power(f.terms, digit, p, d, inner))
        piece = frobenius_twist(piece, i, truncate=truncate)
        acc = multiply(acc, piece, truncate=truncate)
        if acc.is_zero():
            break
    return acc


def truncate_terms(f: Polynomial, q: int) -> Polynomial:
    """Image of ``f`` modulo ``(x_1^q, ..., x_d^q)``."""
    return Polynomial(f.ring, {e: c for e, c in f.terms.items() if max(e, default=0) < q})


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    def __init__(self, text: str, ring: RingContext):
        self.text = text
        self.ring = ring
        self.tokens: list[tuple[str, str, int]] = []
        for m in _TOKEN.finditer(text):
            num, name, sym = m.groups()
            if num is not None:
                self.tokens.append(("num", num, m.start(1)))
            elif name is not None:
                self.tokens.append(("var", name, m.start(2)))
            elif sym is not None and not sym.isspace():
                if sym not in "+-*^()":
                    raise ParseError(m.start(3), f"unexpected character {sym!r}")
                self.tokens.append(("sym", sym, m.start(3)))
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, sym: str):
        kind, val, pos = self.take()
        if kind != "sym" or val != sym:
            raise ParseError(pos, f"expected {sym!r}, found {val or 'end of input'!r}")

    def expr(self) -> Polynomial:
        kind, val, _ = self.peek()
        negate = kind == "sym" and val == "-"
        if negate:
            self.take()
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Polynomial:
        base = self.base()
        kind, val, pos = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError(pos, "exponent must be a natural number")
            return power(base, int(val))
        return base

    def base(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "num":
            return self.ring.constant(int(val))
        if kind == "var":
            if val not in self.ring.variables:
                raise UnknownVariable(pos, val)
            return self.ring.var(val)
        if kind == "sym" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(pos, f"unexpected {val or 'end of input'!r}")


def parse_poly(text: str, ring: RingContext) -> Polynomial:
    """Parse ``text`` such as ``"x*y*(x+2*y)"`` into canonical sparse form."""
    parser = _Parser(text, ring)
    if parser.peek()[0] == "end":
        raise ParseError(0, "empty polynomial")
    result = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ParseError(pos, f"unexpected {val!r}")
    return result
