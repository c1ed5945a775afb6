"""Finite subgroups of GL_2 over a cyclotomic field.

Groups are enumerated explicitly. Every element is a :class:`Mat2` whose
entries share one conductor, and elements are hashed on their canonical
coefficient vectors.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from pathlib import Path

import flint

from .errors import ConductorMismatch, GroupTooLarge, NotInvertible, NotNormal, ParseError
from .exact import Cyclo, _modulus, embed_poly, format_cyclo, parse_cyclo, poly_key, zeta

DEFAULT_MAX_ORDER = 10000


class Mat2:
    """A 2x2 matrix over Q(zeta_N); immutable."""

    __slots__ = ("conductor", "a", "b", "c", "d", "_key")

    def __init__(self, a: Cyclo, b: Cyclo, c: Cyclo, d: Cyclo):
        n = a.conductor
        for x in (b, c, d):
            if x.conductor != n:
                raise ConductorMismatch("matrix entries must share a conductor")
        self.conductor = n
        self.a, self.b, self.c, self.d = a.poly, b.poly, c.poly, d.poly
        self._key = None

    @classmethod
    def _raw(cls, n: int, a, b, c, d) -> Mat2:
        m = cls.__new__(cls)
        m.conductor = n
        m.a, m.b, m.c, m.d = a, b, c, d
        m._key = None
        return m

    @classmethod
    def identity(cls, n: int) -> Mat2:
        one, zero = flint.fmpq_poly([1]), flint.fmpq_poly([])
        return cls._raw(n, one, zero, zero, one)

    @classmethod
    def scalar(cls, x: Cyclo) -> Mat2:
        zero = flint.fmpq_poly([])
        return cls._raw(x.conductor, x.poly, zero, zero, x.poly)

    @classmethod
    def diag(cls, x: Cyclo, y: Cyclo) -> Mat2:
        z = Cyclo.from_rational(x.conductor, 0)
        return cls(x, z, z, y)

    @property
    def entries(self) -> tuple[Cyclo, Cyclo, Cyclo, Cyclo]:
        n = self.conductor
        return tuple(Cyclo._raw(n, p) for p in (self.a, self.b, self.c, self.d))

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = (poly_key(self.a), poly_key(self.b), poly_key(self.c), poly_key(self.d))
        return self._key

    def __hash__(self) -> int:
        return hash(self.key)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        if other.conductor != self.conductor:
            raise ConductorMismatch("cannot compare matrices of different conductors")
        return self.key == other.key

    def __mul__(self, other: Mat2) -> Mat2:
        if not isinstance(other, Mat2):
            if isinstance(other, Cyclo):
                return self * Mat2.scalar(other)
            return NotImplemented
        if other.conductor != self.conductor:
            raise ConductorMismatch("cannot multiply matrices of different conductors")
        phi = _modulus(self.conductor)
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Mat2._raw(
            self.conductor,
            (a * e + b * g) % phi,
            (a * f + b * h) % phi,
            (c * e + d * g) % phi,
            (c * f + d * h) % phi,
        )

    def __rmul__(self, other) -> Mat2:
        if isinstance(other, Cyclo):
            return Mat2.scalar(other) * self
        return NotImplemented

    def __pow__(self, k: int) -> Mat2:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Mat2.identity(self.conductor), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def det_poly(self) -> flint.fmpq_poly:
        return (self.a * self.d - self.b * self.c) % _modulus(self.conductor)

    def det(self) -> Cyclo:
        return Cyclo._raw(self.conductor, self.det_poly())

    def trace(self) -> Cyclo:
        return Cyclo._raw(self.conductor, self.a + self.d)

    def inverse(self) -> Mat2:
        det = self.det()
        if det.is_zero():
            raise NotInvertible("matrix is singular")
        inv = det.inv().poly
        phi = _modulus(self.conductor)
        return Mat2._raw(
            self.conductor,
            (self.d * inv) % phi,
            (-self.b * inv) % phi,
            (-self.c * inv) % phi,
            (self.a * inv) % phi,
        )

    def is_identity(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a.is_one() and self.d.is_one()

    def is_scalar(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def is_diagonal(self) -> bool:
        return self.b.is_zero() and self.c.is_zero()

    def embed(self, m: int) -> Mat2:
        n = self.conductor
        return Mat2._raw(m, *(embed_poly(p, n, m) for p in (self.a, self.b, self.c, self.d)))

    def to_strings(self) -> list[list[str]]:
        a, b, c, d = (format_cyclo(x) for x in self.entries)
        return [[a, b], [c, d]]

    def __repr__(self) -> str:
        (a, b), (c, d) = self.to_strings()
        return f"Mat2([[{a}, {b}], [{c}, {d}]])"


def mat(rows, conductor: int) -> Mat2:
    """Build a matrix from rows of ints, Fractions, Cyclo or strings."""
    def conv(x):
        if isinstance(x, Cyclo):
            if x.conductor != conductor:
                raise ConductorMismatch(f"entry has conductor {x.conductor}, expected {conductor}")
            return x
        if isinstance(x, str):
            return parse_cyclo(x, conductor)
        return Cyclo.from_rational(conductor, x)

    (a, b), (c, d) = rows
    return Mat2(conv(a), conv(b), conv(c), conv(d))


@dataclass(frozen=True, eq=False)
class FiniteMatrixGroup:
    conductor: int
    elements: tuple[Mat2, ...]
    generators: tuple[Mat2, ...]

    def __post_init__(self):
        object.__setattr__(self, "_index", {g.key: i for i, g in enumerate(self.elements)})

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Mat2) -> bool:
        return g.key in self._index

    def index_of(self, g: Mat2) -> int | None:
        return self._index.get(g.key)

    def same_elements(self, other: FiniteMatrixGroup) -> bool:
        return self.conductor == other.conductor and set(self._index) == set(other._index)

    def is_subgroup_of(self, other: FiniteMatrixGroup) -> bool:
        return all(g in other for g in self.generators)

    def __repr__(self) -> str:
        return f"FiniteMatrixGroup(order={self.order}, conductor={self.conductor})"


def generate(gens, max_order: int = DEFAULT_MAX_ORDER, conductor: int | None = None) -> FiniteMatrixGroup:
    """Closure of ``gens`` under multiplication (breadth first)."""
    gens = tuple(gens)
    if conductor is None:
        if not gens:
            raise ParseError("need a conductor for the trivial group")
        conductor = gens[0].conductor
    for g in gens:
        if g.conductor != conductor:
            raise ConductorMismatch("generators must share one conductor")
        if g.det_poly().is_zero():
            raise NotInvertible(f"generator {g} is singular")
    ident = Mat2.identity(conductor)
    seen = {ident.key: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                k = y.key
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
                    if len(seen) > max_order:
                        raise GroupTooLarge(f"closure exceeds {max_order} elements")
        frontier = nxt
    return FiniteMatrixGroup(conductor, tuple(seen.values()), gens)


def trivial_group(conductor: int) -> FiniteMatrixGroup:
    return FiniteMatrixGroup(conductor, (Mat2.identity(conductor),), ())


def is_pseudoreflection(m: Mat2) -> bool:
    """Non-identity with an eigenvalue 1, i.e. det(M - I) = 0."""
    if m.is_identity():
        return False
    phi = _modulus(m.conductor)
    return (((m.a - 1) * (m.d - 1) - m.b * m.c) % phi).is_zero()


def is_normal(h: FiniteMatrixGroup, g: FiniteMatrixGroup) -> bool:
    for x in g.generators:
        xi = x.inverse()
        for y in h.generators:
            if x * y * xi not in h:
                return False
    return True


def subgroup_generated(g: FiniteMatrixGroup, candidates, max_order: int = DEFAULT_MAX_ORDER) -> FiniteMatrixGroup:
    """Subgroup of ``g`` generated by ``candidates``, adding generators only when needed."""
    h = trivial_group(g.conductor)
    for x in candidates:
        if x not in h:
            h = generate(h.generators + (x,), max_order=max_order)
    return h


def pseudoreflection_subgroup(g: FiniteMatrixGroup) -> FiniteMatrixGroup:
    refl = [x for x in g.elements if is_pseudoreflection(x)]
    p = subgroup_generated(g, refl, max_order=max(g.order, 1))
    if not is_normal(p, g):
        raise NotNormal("pseudoreflection subgroup is not normal")  # cannot happen
    return p


# -- quotient by a normal subgroup ----------------------------------------


@dataclass(frozen=True)
class CyclicQuotient:
    order: int
    generator: Mat2

    @property
    def is_cyclic(self) -> bool:
        return True


@dataclass(frozen=True)
class NonCyclicQuotient:
    """A non-cyclic G/P; such singularities are always of type R."""

    order: int

    @property
    def is_cyclic(self) -> bool:
        return False

    @property
    def type_r(self) -> bool:
        return True

    def __str__(self) -> str:
        return f"non-cyclic quotient of order {self.order}"


def coset_labels(g: FiniteMatrixGroup, p: FiniteMatrixGroup) -> tuple[list[Mat2], dict]:
    """Left coset representatives of p in g and the element -> coset map."""
    reps: list[Mat2] = []
    label: dict = {}
    for x in g.elements:
        if x.key in label:
            continue
        i = len(reps)
        reps.append(x)
        for y in p.elements:
            label[(x * y).key] = i
    return reps, label


def _perm_compose(s: tuple, t: tuple) -> tuple:
    # apply s then t
    return tuple(t[i] for i in s)


def _perm_order(s: tuple) -> int:
    # regular representation: every cycle has the same length
    k, i = 1, s[0]
    while i != 0:
        i = s[i]
        k += 1
    return k


def _perm_pow(s: tuple, k: int) -> tuple:
    out = tuple(range(len(s)))
    base = s
    while k:
        if k & 1:
            out = _perm_compose(out, base)
        base = _perm_compose(base, base)
        k >>= 1
    return out


def _split_order(a: int, b: int) -> tuple[int, int]:
    """u | a, v | b, coprime, with u*v = lcm(a, b)."""
    u, v = 1, 1
    rest_a, rest_b = a, b
    p = 2
    while rest_a > 1 or rest_b > 1:
        pa = pb = 1
        while rest_a % p == 0:
            rest_a //= p
            pa *= p
        while rest_b % p == 0:
            rest_b //= p
            pb *= p
        if pa >= pb:
            u *= pa
        else:
            v *= pb
        p += 1
    return u, v


def quotient_structure(g: FiniteMatrixGroup, p: FiniteMatrixGroup):
    """Decide whether g/p is cyclic; if so return an element whose coset generates it."""
    if not is_normal(p, g):
        raise NotNormal("subgroup is not normal")
    n = g.order // p.order
    if n == 1:
        return CyclicQuotient(1, Mat2.identity(g.conductor))
    reps, label = coset_labels(g, p)
    perms = [tuple(label[(r * x).key] for r in reps) for x in g.generators]
    for i, s in enumerate(perms):
        for t in perms[i + 1:]:
            if _perm_compose(s, t) != _perm_compose(t, s):
                return NonCyclicQuotient(n)
    # abelian: cyclic iff some element has order n; build one
    best_perm, best_mat, best_ord = tuple(range(n)), Mat2.identity(g.conductor), 1
    for s, x in zip(perms, g.generators):
        o = _perm_order(s)
        if best_ord % o == 0:
            continue
        u, v = _split_order(best_ord, o)
        e1, e2 = best_ord // u, o // v
        best_perm = _perm_compose(_perm_pow(best_perm, e1), _perm_pow(s, e2))
        best_mat = (best_mat ** e1) * (x ** e2)
        best_ord = u * v
    if best_ord != n:
        return NonCyclicQuotient(n)
    return CyclicQuotient(n, best_mat)


# -- scalars and projective image ------------------------------------------


def scalar_elements(g: FiniteMatrixGroup) -> list[Mat2]:
    return [x for x in g.elements if x.is_scalar()]


def scalar_subgroup(g: FiniteMatrixGroup) -> int:
    """k such that g intersected with the scalar matrices is mu_k."""
    return len(scalar_elements(g))


@dataclass(frozen=True)
class PGLImage:
    kind: str  # "cyclic", "dihedral", "A4", "S4", "A5"
    n: int | None = None

    @property
    def order(self) -> int:
        if self.kind == "cyclic":
            return self.n
        if self.kind == "dihedral":
            return 2 * self.n
        return {"A4": 12, "S4": 24, "A5": 60}[self.kind]

    def __str__(self) -> str:
        if self.kind == "cyclic":
            return f"C{self.n}"
        if self.kind == "dihedral":
            return f"D{self.n}"
        return self.kind


def projective_order(m: Mat2, cache: dict | None = None) -> int:
    """Order of the image of m in PGL_2.

    With eigenvalue ratio r, r + 1/r = tr^2/det - 2 =: s, and r^k = 1 iff
    V_k(s) = 2 where V_0 = 2, V_1 = s, V_{k+1} = s V_k - V_{k-1}.
    """
    n = m.conductor
    phi = _modulus(n)
    tr = m.a + m.d
    det = m.det()
    s = ((tr * tr) % phi * det.inv().poly) % phi - 2
    key = poly_key(s)
    if cache is not None and key in cache:
        return cache[key]
    two = flint.fmpq_poly([2])
    prev, cur, k = two, s, 1
    while cur != two:
        prev, cur = cur, (s * cur - prev) % phi
        k += 1
        if k > 100000:
            raise GroupTooLarge("element of unexpectedly large projective order")
    if cache is not None:
        cache[key] = k
    return k


def pgl_image_type(g: FiniteMatrixGroup) -> PGLImage:
    """Isomorphism type of the image of g in PGL_2."""
    size = g.order // scalar_subgroup(g)
    cache: dict = {}
    max_ord = 1
    for x in g.elements:
        max_ord = max(max_ord, projective_order(x, cache))
    abelian = True
    gens = g.generators
    for i, x in enumerate(gens):
        for y in gens[i + 1:]:
            if not (x * y * (y * x).inverse()).is_scalar():
                abelian = False
                break
    if abelian:
        if max_ord == size:
            return PGLImage("cyclic", size)
        if size == 4:
            return PGLImage("dihedral", 2)
        raise ValueError(f"abelian projective image of order {size} is not cyclic or Klein")
    if max_ord == size // 2:
        return PGLImage("dihedral", size // 2)
    named = {12: "A4", 24: "S4", 60: "A5"}
    if size in named:
        return PGLImage(named[size])
    raise ValueError(f"unexpected projective image of order {size}")


# -- file format ------------------------------------------------------------


def load_generators(path) -> tuple[int, list[Mat2]]:
    """Read ``{"conductor": N, "generators": [[[s, s], [s, s]], ...]}``."""
    try:
        record = json.loads(Path(path).read_text())
        conductor = int(record["conductor"])
        raw = record["generators"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad generator file {path}: {exc}") from exc
    gens = []
    for rows in raw:
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ParseError("each generator must be a 2x2 array")
        gens.append(mat([[str(x) for x in r] for r in rows], conductor))
    return conductor, gens


def dump_generators(conductor: int, gens) -> str:
    return json.dumps({"conductor": conductor, "generators": [g.to_strings() for g in gens]}, indent=2)


def zeta_diag(n: int, i: int, j: int, conductor: int | None = None) -> Mat2:
    """diag(zeta_n^i, zeta_n^j) written with the given conductor (default n)."""
    conductor = conductor or n
    step = conductor // n
    return Mat2.diag(zeta(conductor, i * step), zeta(conductor, j * step))


def matrix_order(m: Mat2, limit: int = 100000) -> int:
    x, k = m, 1
    while not x.is_identity():
        x = x * m
        k += 1
        if k > limit:
            raise GroupTooLarge("matrix has no small finite order")
    return k


def gcd_all(*xs: int) -> int:
    out = 0
    for x in xs:
        out = gcd(out, x)
    return out
