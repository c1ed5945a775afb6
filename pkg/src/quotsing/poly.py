"""Sparse polynomials in x, y over Q(zeta_N), plus the linear algebra the
invariant computations need.
"""
from __future__ import annotations

import flint

from .errors import ConductorMismatch
from .exact import Cyclo, _modulus, poly_key
from .matgrp import Mat2

_ZERO = flint.fmpq_poly([])


class Poly2:
    """Immutable sparse polynomial; ``terms`` maps (i, j) to the coefficient of x^i y^j."""

    __slots__ = ("conductor", "_terms")

    def __init__(self, conductor: int, terms=None):
        self.conductor = conductor
        clean = {}
        for exp, c in (terms or {}).items():
            if isinstance(c, Cyclo):
                if c.conductor != conductor:
                    raise ConductorMismatch("coefficient conductor differs from polynomial's")
                p = c.poly
            elif isinstance(c, flint.fmpq_poly):
                p = c
            else:
                p = Cyclo.from_rational(conductor, c).poly
            if not p.is_zero():
                clean[tuple(exp)] = p
        self._terms = clean

    @classmethod
    def _raw(cls, conductor: int, terms: dict) -> Poly2:
        obj = cls.__new__(cls)
        obj.conductor = conductor
        obj._terms = terms
        return obj

    @classmethod
    def x(cls, n: int) -> Poly2:
        return cls(n, {(1, 0): 1})

    @classmethod
    def y(cls, n: int) -> Poly2:
        return cls(n, {(0, 1): 1})

    @classmethod
    def monomial(cls, n: int, i: int, j: int, coeff=1) -> Poly2:
        return cls(n, {(i, j): coeff})

    @property
    def terms(self) -> dict[tuple[int, int], Cyclo]:
        return {e: Cyclo._raw(self.conductor, p) for e, p in sorted(self._terms.items())}

    def coefficient(self, i: int, j: int) -> Cyclo:
        return Cyclo._raw(self.conductor, self._terms.get((i, j), _ZERO))

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({i + j for i, j in self._terms}) <= 1

    def _check(self, other: Poly2) -> None:
        if other.conductor != self.conductor:
            raise ConductorMismatch("polynomials have different conductors")

    def __add__(self, other: Poly2) -> Poly2:
        self._check(other)
        out = dict(self._terms)
        for e, p in other._terms.items():
            s = out.get(e, _ZERO) + p
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return Poly2._raw(self.conductor, out)

    def __neg__(self) -> Poly2:
        return Poly2._raw(self.conductor, {e: -p for e, p in self._terms.items()})

    def __sub__(self, other: Poly2) -> Poly2:
        return self + (-other)

    def scale(self, c) -> Poly2:
        if not isinstance(c, Cyclo):
            c = Cyclo.from_rational(self.conductor, c)
        elif c.conductor != self.conductor:
            raise ConductorMismatch("scalar conductor differs from polynomial's")
        if c.is_zero():
            return Poly2._raw(self.conductor, {})
        phi = _modulus(self.conductor)
        return Poly2._raw(self.conductor, {e: (p * c.poly) % phi for e, p in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            return self.scale(other)
        self._check(other)
        phi = _modulus(self.conductor)
        acc: dict = {}
        for (i1, j1), p in self._terms.items():
            for (i2, j2), q in other._terms.items():
                e = (i1 + i2, j1 + j2)
                acc[e] = acc.get(e, _ZERO) + p * q
        out = {}
        for e, p in acc.items():
            p = p % phi
            if not p.is_zero():
                out[e] = p
        return Poly2._raw(self.conductor, out)

    __rmul__ = scale

    def __pow__(self, k: int) -> Poly2:
        result = Poly2(self.conductor, {(0, 0): 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly2):
            return NotImplemented
        self._check(other)
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.conductor, tuple(sorted((e, poly_key(p)) for e, p in self._terms.items()))))

    def subs(self, m: Mat2) -> Poly2:
        """f o M, i.e. x -> a x + b y, y -> c x + d y."""
        if m.conductor != self.conductor:
            raise ConductorMismatch("matrix conductor differs from polynomial's")
        if not self._terms:
            return self
        n = self.conductor
        lx = Poly2._raw(n, {k: v for k, v in (((1, 0), m.a), ((0, 1), m.b)) if not v.is_zero()})
        ly = Poly2._raw(n, {k: v for k, v in (((1, 0), m.c), ((0, 1), m.d)) if not v.is_zero()})
        top_i = max(i for i, _ in self._terms)
        top_j = max(j for _, j in self._terms)
        px = [Poly2(n, {(0, 0): 1})]
        for _ in range(top_i):
            px.append(px[-1] * lx)
        py = [Poly2(n, {(0, 0): 1})]
        for _ in range(top_j):
            py.append(py[-1] * ly)
        out = Poly2._raw(n, {})
        for (i, j), p in self._terms.items():
            out = out + (px[i] * py[j]).scale(Cyclo._raw(n, p))
        return out

    def diff(self, var: int) -> Poly2:
        """Partial derivative in x (var=0) or y (var=1)."""
        out = {}
        for (i, j), p in self._terms.items():
            k = (i, j)[var]
            if k:
                e = (i - 1, j) if var == 0 else (i, j - 1)
                out[e] = p * k
        return Poly2._raw(self.conductor, out)

    def to_vector(self, k: int) -> list:
        """Coefficients of x^(k-j) y^j, j = 0..k (raw FLINT polys)."""
        vec = [_ZERO] * (k + 1)
        for (i, j), p in self._terms.items():
            if i + j != k:
                raise ValueError(f"polynomial is not homogeneous of degree {k}")
            vec[j] = p
        return vec

    @classmethod
    def from_vector(cls, n: int, vec) -> Poly2:
        k = len(vec) - 1
        return cls._raw(n, {(k - j, j): p for j, p in enumerate(vec) if not p.is_zero()})

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in self.terms.items():
            mono = "*".join(s for s in ((f"x^{i}" if i else ""), (f"y^{j}" if j else "")) if s) or "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def jacobian(f: Poly2, g: Poly2) -> Poly2:
    return f.diff(0) * g.diff(1) - f.diff(1) * g.diff(0)


# -- linear algebra over Q(zeta_N) on raw FLINT polys --------------------------


def _inv(p: flint.fmpq_poly, n: int) -> flint.fmpq_poly:
    return Cyclo._raw(n, p).inv().poly


def rref(rows, n: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of ``rows`` (lists of reduced FLINT polys)."""
    phi = _modulus(n)
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = _inv(rows[r][col], n)
        rows[r] = [(x * inv) % phi if not x.is_zero() else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [
                    (x - f * y) % phi if not y.is_zero() else x for x, y in zip(rows[i], rows[r])
                ]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(rows, ncols: int, n: int) -> list[list]:
    """Basis of {v : rows . v = 0}."""
    if not rows:
        return [[flint.fmpq_poly([1]) if i == j else _ZERO for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, n)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [_ZERO] * ncols
        v[f] = flint.fmpq_poly([1])
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve_combination(basis, target, n: int) -> list | None:
    """Coefficients c with sum c_i basis_i = target, or None if target is outside the span."""
    m = len(basis)
    if m == 0:
        return [] if all(t.is_zero() for t in target) else None
    # columns are basis vectors; augment with target
    rows = [[basis[i][r] for i in range(m)] + [target[r]] for r in range(len(target))]
    red, pivots = rref(rows, n)
    if m in pivots:
        return None
    coeffs = [_ZERO] * m
    for row, pc in zip(red, pivots):
        coeffs[pc] = row[m]
    if len(pivots) < m:
        raise ValueError("basis vectors are linearly dependent")
    return coeffs
