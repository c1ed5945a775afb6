"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis {zeta^i : 0 <= i < phi(N)} reduced
modulo the N-th cyclotomic polynomial, which makes equality a coefficient
comparison. Rationals are :class:`fractions.Fraction`.

The polynomial kernel is FLINT (``python-flint``); the cyclotomic
polynomials themselves are built here by exact division so that they can be
checked against FLINT's own table.
"""
from __future__ import annotations

import re
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from math import gcd

import flint

from .errors import (
    ConductorMismatch,
    ConductorTooLarge,
    DivisionByZero,
    NotADivisor,
    ParseError,
    ValidationError,
)

Rational = Fraction

DEFAULT_CONDUCTOR_CAP = 360
_cap = DEFAULT_CONDUCTOR_CAP


def conductor_cap() -> int:
    return _cap


def set_conductor_cap(cap: int) -> int:
    """Set the largest admissible conductor; returns the previous cap."""
    global _cap
    if cap < 1:
        raise ValidationError("conductor cap must be positive")
    previous, _cap = _cap, cap
    return previous


@contextmanager
def conductor_limit(cap: int):
    previous = set_conductor_cap(cap)
    try:
        yield
    finally:
        set_conductor_cap(previous)


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValidationError("euler_phi needs n >= 1")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    # den is monic; long division, remainder must vanish
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (constant term first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValidationError("cyclotomic_polynomial needs n >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in _divisors(n)[:-1]:
        den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    return tuple(_poly_exact_div(num, den))


@lru_cache(maxsize=None)
def _modulus(n: int) -> flint.fmpq_poly:
    return flint.fmpq_poly(list(cyclotomic_polynomial(n)))


def _check_conductor(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"conductor must be a positive integer, got {n!r}")
    if n > _cap:
        raise ConductorTooLarge(f"conductor {n} exceeds cap {_cap}")


def _fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def poly_key(p: flint.fmpq_poly) -> tuple:
    """Hashable canonical key of a reduced FLINT polynomial."""
    return (tuple(p.numer().coeffs()), int(p.denom()))


class Cyclo:
    """An element of Q(zeta_N) with fixed conductor N, in canonical form.

    >>> i = zeta(4)
    >>> i * i
    -1*z4^0
    """

    __slots__ = ("conductor", "_p", "_key")

    def __init__(self, conductor: int, coeffs=()):
        _check_conductor(conductor)
        self.conductor = conductor
        self._p = flint.fmpq_poly([_fmpq(c) for c in coeffs]) % _modulus(conductor)
        self._key = None

    @classmethod
    def _raw(cls, conductor: int, p: flint.fmpq_poly) -> Cyclo:
        # p must already be reduced modulo Phi_conductor
        obj = cls.__new__(cls)
        obj.conductor = conductor
        obj._p = p
        obj._key = None
        return obj

    @classmethod
    def from_rational(cls, conductor: int, value) -> Cyclo:
        _check_conductor(conductor)
        return cls._raw(conductor, flint.fmpq_poly([_fmpq(value)]))

    @property
    def poly(self) -> flint.fmpq_poly:
        return self._p

    @property
    def degree(self) -> int:
        return euler_phi(self.conductor)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        raw = self._p.coeffs()
        out = [Fraction(int(c.p), int(c.q)) for c in raw]
        out += [Fraction(0)] * (self.degree - len(out))
        return tuple(out)

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = poly_key(self._p)
        return self._key

    def _coerce(self, other) -> flint.fmpq_poly | None:
        if isinstance(other, Cyclo):
            if other.conductor != self.conductor:
                raise ConductorMismatch(
                    f"conductors {self.conductor} and {other.conductor} differ; embed first"
                )
            return other._p
        if isinstance(other, (int, Fraction)):
            return flint.fmpq_poly([_fmpq(other)])
        return None

    def __add__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return Cyclo._raw(self.conductor, self._p + q)

    __radd__ = __add__

    def __sub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return Cyclo._raw(self.conductor, self._p - q)

    def __rsub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return Cyclo._raw(self.conductor, q - self._p)

    def __neg__(self):
        return Cyclo._raw(self.conductor, -self._p)

    def __pos__(self):
        return self

    def __mul__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        if q.degree() <= 0:
            return Cyclo._raw(self.conductor, self._p * q)
        return Cyclo._raw(self.conductor, (self._p * q) % _modulus(self.conductor))

    __rmul__ = __mul__

    def inv(self) -> Cyclo:
        if self._p.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        if self._p.degree() == 0:
            return Cyclo._raw(self.conductor, flint.fmpq_poly([1 / self._p[0]]))
        g, s, _ = self._p.xgcd(_modulus(self.conductor))
        # g is a nonzero constant since Phi_N is irreducible
        return Cyclo._raw(self.conductor, (s / g[0]) % _modulus(self.conductor))

    def __truediv__(self, other):
        if isinstance(other, Cyclo):
            return self * other.inv()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return Cyclo._raw(self.conductor, self._p / _fmpq(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inv() * other
        return NotImplemented

    def __pow__(self, k: int) -> Cyclo:
        if k < 0:
            return self.inv() ** (-k)
        result = Cyclo._raw(self.conductor, flint.fmpq_poly([1]))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclo):
            if other.conductor != self.conductor:
                raise ConductorMismatch(
                    f"cannot compare conductors {self.conductor} and {other.conductor}"
                )
            return self._p == other._p
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.to_fraction())
        return hash((self.conductor, self.key))

    def __bool__(self) -> bool:
        return not self._p.is_zero()

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_one(self) -> bool:
        return self._p.is_one()

    def is_rational(self) -> bool:
        return self._p.degree() <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValidationError(f"{self} is not rational")
        if self._p.is_zero():
            return Fraction(0)
        c = self._p[0]
        return Fraction(int(c.p), int(c.q))

    def __repr__(self) -> str:
        return format_cyclo(self)

    __str__ = __repr__


@lru_cache(maxsize=4096)
def zeta(n: int, k: int = 1) -> Cyclo:
    """zeta_n^k with conductor n."""
    _check_conductor(n)
    k %= n
    x = flint.fmpq_poly([0] * k + [1])
    return Cyclo._raw(n, x % _modulus(n))


def one(n: int) -> Cyclo:
    return Cyclo.from_rational(n, 1)


def zero(n: int) -> Cyclo:
    return Cyclo.from_rational(n, 0)


@lru_cache(maxsize=None)
def _embedding_images(n: int, m: int) -> tuple[flint.fmpq_poly, ...]:
    step = m // n
    return tuple(zeta(m, i * step)._p for i in range(euler_phi(n)))


def embed_poly(p: flint.fmpq_poly, n: int, m: int) -> flint.fmpq_poly:
    """Re-express a reduced polynomial in zeta_n as one in zeta_m (n | m)."""
    if n == m:
        return p
    images = _embedding_images(n, m)
    out = flint.fmpq_poly([])
    for i, c in enumerate(p.coeffs()):
        if c:
            out += images[i] * c
    return out


def embed(x: Cyclo, m: int) -> Cyclo:
    """The same field element written with conductor ``m``."""
    if m % x.conductor:
        raise NotADivisor(f"conductor {x.conductor} does not divide {m}")
    _check_conductor(m)
    return Cyclo._raw(m, embed_poly(x._p, x.conductor, m))


@lru_cache(maxsize=256)
def _unit_table(n: int) -> tuple[int, dict]:
    # roots of unity in Q(zeta_n) are the lcm(2, n)-th roots of unity
    big = lcm(2, n)
    table = {}
    if n % 2 == 0:
        for j in range(big):
            table[zeta(n, j).key] = j
    else:
        half = (n + 1) // 2
        for j in range(big):
            z = zeta(n, j * half)
            table[(z if j % 2 == 0 else -z).key] = j
    return big, table


def root_of_unity_log(x: Cyclo) -> tuple[int, int] | None:
    """Return ``(t, k)`` with ``x = zeta_t^k`` and ``t`` the order of ``x``, or None."""
    big, table = _unit_table(x.conductor)
    j = table.get(x.key)
    if j is None:
        return None
    g = gcd(big, j)
    return big // g, j // g


# -- text syntax ---------------------------------------------------------

_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?:(?P<coef>\d+(?:/\d+)?)\s*(?P<star>\*)?\s*)?"
    r"(?:z(?P<n>\d+)(?:\s*\^\s*(?P<k>-?\d+))?)?\s*"
)


def format_cyclo(x: Cyclo) -> str:
    """Canonical text form, e.g. ``1/2*z8^1 - 1/2*z8^3``."""
    parts = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        mag = f"{abs(c)}*z{x.conductor}^{k}"
        if not parts:
            parts.append(mag if c > 0 else "-" + mag)
        else:
            parts.append(("+ " if c > 0 else "- ") + mag)
    return " ".join(parts) if parts else "0"


def parse_cyclo(text: str, conductor: int | None = None) -> Cyclo:
    """Parse the text syntax. Terms may name any conductor dividing the target."""
    terms = []
    pos, s = 0, text.strip()
    if not s:
        raise ParseError("empty cyclotomic expression")
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot parse {text!r} at offset {pos}")
        if m.group("sign") is None and not first:
            raise ParseError(f"missing operator in {text!r} at offset {pos}")
        coef, n = m.group("coef"), m.group("n")
        if coef is None and n is None:
            raise ParseError(f"empty term in {text!r}")
        if m.group("star") and n is None:
            raise ParseError(f"dangling '*' in {text!r}")
        if coef is not None and n is not None and not m.group("star"):
            raise ParseError(f"expected '*' between coefficient and z in {text!r}")
        value = Fraction(coef) if coef is not None else Fraction(1)
        if m.group("sign") == "-":
            value = -value
        if n is None:
            terms.append((value, 1, 0))
        else:
            terms.append((value, int(n), int(m.group("k") or 1)))
        pos = m.end()
        first = False
    target = conductor if conductor is not None else lcm(*(t[1] for t in terms))
    _check_conductor(target)
    acc = zero(target)
    for value, n, k in terms:
        if n < 1 or target % n:
            raise ParseError(f"z{n} is not available with conductor {target}")
        acc = acc + zeta(target, (k % n) * (target // n)) * value
    return acc
