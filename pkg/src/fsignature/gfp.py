"""Prime field arithmetic and binomial coefficients modulo p."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotPrimeError, ZeroInversion

# Products of two reduced residues must fit a signed 64-bit accumulator.
MAX_PRIME = 2**31

_MR_BASES = (2, 3, 5, 7, 11, 13, 17)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.4e14."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeChar:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise NotPrimeError(f"{self.p!r} is not a prime")
        if self.p >= MAX_PRIME:
            raise NotPrimeError(f"characteristic {self.p} exceeds the supported bound 2^31")

    def __int__(self) -> int:
        return self.p

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self)


def _as_char(p: PrimeChar | int) -> PrimeChar:
    return p if isinstance(p, PrimeChar) else PrimeChar(p)


def inv_mod(x: int, p: int) -> int:
    """Inverse of ``x`` modulo ``p`` by the extended Euclidean algorithm."""
    a, b = x % p, p
    if a == 0:
        raise ZeroInversion(f"0 has no inverse modulo {p}")
    s0, s1 = 1, 0
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
    return s0 % p


@dataclass(frozen=True)
class FieldElement:
    value: int
    modulus: PrimeChar

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.p:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.modulus.p}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ValueError("field elements of different characteristic")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _new(self, v: int) -> FieldElement:
        return FieldElement(v % self.modulus.p, self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * fp_inv(self._new(o))

    def __pow__(self, k: int):
        if k < 0:
            return fp_inv(self) ** (-k)
        return self._new(pow(self.value, k, self.modulus.p))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus.p})"


def fp_inv(x: FieldElement) -> FieldElement:
    return FieldElement(inv_mod(x.value, x.modulus.p), x.modulus)


def base_p_digits(n: int, p: int) -> list[int]:
    """Little-endian base-p digits of ``n`` (empty list for 0)."""
    digits = []
    while n:
        n, r = divmod(n, p)
        digits.append(r)
    return digits


def _small_binom(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    num = den = 1
    for i in range(k):
        num = num * (n - i) % p
        den = den * (i + 1) % p
    return num * inv_mod(den, p) % p


def lucas_binom(n: int, k: int, p: PrimeChar | int) -> FieldElement:
    """C(n, k) mod p as the product of binomials of base-p digits."""
    char = _as_char(p)
    q = char.p
    if k < 0 or k > n:
        return FieldElement(0, char)
    acc = 1
    while k:
        n, ni = divmod(n, q)
        k, ki = divmod(k, q)
        if ki > ni:
            return FieldElement(0, char)
        acc = acc * _small_binom(ni, ki, q) % q
    return FieldElement(acc, char)
