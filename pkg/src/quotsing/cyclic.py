"""Cyclic quotient singularities 1/n(1,d) and the type-R decision."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import NotCoprime, NotFaithful, NotTame, OutOfRange, ValidationError
from .hjcf import mod_inverse


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n is small here)."""
    if n < 1:
        raise ValidationError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == {p: 1}


@dataclass(frozen=True, order=True)
class CyclicType:
    """The singularity 1/n(1,d), stored with d = min(d, d^-1 mod n).

    ``CyclicType(8, 3)`` and ``CyclicType(8, 11 % 8)`` compare equal; the
    constructor accepts any d coprime to n and reduces it.
    """

    n: int
    d: int

    def __post_init__(self):
        n, d = self.n, self.d
        if n < 1:
            raise OutOfRange(f"n must be positive, got {n}")
        if gcd(n, d) != 1:
            raise NotCoprime(f"gcd({n}, {d}) != 1")
        d %= n
        if d == 0:
            d = n
        d = min(d, mod_inverse(d, n))
        object.__setattr__(self, "d", d)

    @property
    def dual(self) -> int:
        return mod_inverse(self.d, self.n)

    @property
    def is_smooth(self) -> bool:
        return self.n == 1

    def __str__(self) -> str:
        return f"1/{self.n}(1,{self.d})"


SMOOTH = CyclicType(1, 1)


@dataclass(frozen=True)
class WeightedAction:
    """The cyclic group of order ``a`` generated by diag(zeta_a^e1, zeta_a^e2)."""

    a: int
    e1: int
    e2: int

    def __post_init__(self):
        if self.a < 1:
            raise OutOfRange(f"group order must be positive, got {self.a}")
        object.__setattr__(self, "e1", self.e1 % self.a)
        object.__setattr__(self, "e2", self.e2 % self.a)
        if gcd(gcd(self.a, self.e1), self.e2) != 1:
            raise NotFaithful(f"diag weights ({self.e1}, {self.e2}) mod {self.a} are not faithful")


def from_weights(w: WeightedAction) -> CyclicType:
    """Normalized type of A^2 / <diag(zeta_a^e1, zeta_a^e2)>.

    Pseudoreflections are quotiented away by peeling gcd(a, e_i) until both
    weights are units; what remains is 1/a(1, e2/e1).
    """
    a, e1, e2 = w.a, w.e1, w.e2
    while True:
        c1 = gcd(a, e1)
        if c1 > 1:
            a, e1 = a // c1, e1 // c1
            e2 %= a
            continue
        c2 = gcd(a, e2)
        if c2 > 1:
            a, e2 = a // c2, e2 // c2
            e1 %= a
            continue
        break
    if a == 1:
        return SMOOTH
    return CyclicType(a, e2 * mod_inverse(e1, a) % a)


def is_type_R(t: CyclicType, p: int = 0) -> bool:
    """Type-R decision for 1/n(1,d) in characteristic p (0 or a prime not dividing n)."""
    if p < 0 or (p and not is_prime(p)):
        raise ValidationError(f"characteristic must be 0 or prime, got {p}")
    if p and t.n % p == 0:
        raise NotTame(f"characteristic {p} divides n = {t.n}")
    if t.n % 2:
        return True
    for ell, a in factorize(t.n).items():
        q = ell**a
        if (t.d - 1) % q and (t.d + 1) % q:
            return True
    return False


Basis = tuple[tuple[int, int], tuple[int, int]]


def hermite_basis(vectors) -> Basis:
    """Canonical basis ((x1, 0), (x2, y2)) of a full-rank sublattice of Z^2.

    x1, y2 > 0 and 0 <= x2 < x1.
    """
    pivot = None
    xg = 0
    for x, y in vectors:
        if y == 0:
            xg = gcd(xg, x)
            continue
        if pivot is None:
            pivot = (x, y)
            continue
        px, py = pivot
        while y:
            q = py // y
            px, py, x, y = x, y, px - q * x, py - q * y
        pivot = (px, py)
        xg = gcd(xg, x)
    if pivot is None or xg == 0:
        raise ValidationError("vectors do not span a full-rank lattice")
    px, py = pivot
    if py < 0:
        px, py = -px, -py
    return ((xg, 0), (px % xg, py))


def lattice_index(basis: Basis) -> int:
    (x1, _), (_, y2) = basis
    return x1 * y2


def invariant_lattice(w: WeightedAction) -> Basis:
    """Hermite basis of {(alpha, beta) : alpha*e1 + beta*e2 = 0 mod a}.

    These are the exponents of the invariant monomials x^alpha y^beta.
    """
    a, e1, e2 = w.a, w.e1, w.e2
    g1 = gcd(a, e1)
    x1 = a // g1
    # smallest beta > 0 with beta*e2 in the ideal (e1, a) = (g1)
    y2 = g1 // gcd(g1, e2)
    # solve alpha*e1 = -y2*e2 (mod a); divide through by g1
    target = (-y2 * e2) % a
    alpha = (target // g1) * mod_inverse(e1 // g1, x1) % x1 if x1 > 1 else 0
    return ((x1, 0), (alpha, y2))
