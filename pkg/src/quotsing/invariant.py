"""Invariant theory of reflection groups P in GL_2 and the group -> singularity pipeline.

Polynomials are acted on by substitution, f -> f o M, so x -> a x + b y and
y -> c x + d y for M = [[a, b], [c, d]].
"""
from __future__ import annotations

from dataclasses import dataclass, field

import flint

from .cyclic import SMOOTH, CyclicType, WeightedAction, from_weights, is_type_R
from .errors import ConsistencyError, InconsistentExpansion, NotReflectionGroup
from .exact import Cyclo, _modulus, embed, lcm, poly_key, root_of_unity_log, zeta
from .matgrp import (
    CyclicQuotient,
    FiniteMatrixGroup,
    Mat2,
    NonCyclicQuotient,
    matrix_order,
    pseudoreflection_subgroup,
    quotient_structure,
    scalar_elements,
)
from .poly import Poly2, jacobian, nullspace, rref, solve_combination

_ZERO = flint.fmpq_poly([])
_ONE = flint.fmpq_poly([1])

CotangentMatrix = Mat2


# -- Molien series ------------------------------------------------------------


def _class_counts(p: FiniteMatrixGroup) -> dict:
    counts: dict = {}
    phi = _modulus(p.conductor)
    for m in p.elements:
        tr = (m.a + m.d) % phi
        det = m.det_poly()
        k = (poly_key(tr), poly_key(det))
        if k in counts:
            counts[k][2] += 1
        else:
            counts[k] = [tr, det, 1]
    return counts


def molien_dimensions(p: FiniteMatrixGroup, bound: int) -> list[int]:
    """dim of the degree-k invariants for k = 0..bound.

    1/det(1 - tM) = sum c_k t^k with c_k = tr c_{k-1} - det c_{k-2}; the
    elements are grouped by (trace, det) so each class is expanded once.
    """
    n = p.conductor
    phi = _modulus(n)
    totals = [_ZERO] * (bound + 1)
    for tr, det, mult in _class_counts(p).values():
        prev, cur = _ZERO, _ONE
        for k in range(bound + 1):
            totals[k] = totals[k] + cur * mult
            prev, cur = cur, (tr * cur - det * prev) % phi
    out = []
    for t in totals:
        c = Cyclo._raw(n, t % phi)
        if not c.is_rational():
            raise ConsistencyError("Molien coefficient is not rational")
        v = c.to_fraction() / p.order
        if v.denominator != 1:
            raise ConsistencyError(f"Molien coefficient {v} is not an integer")
        out.append(int(v))
    return out


def degrees_from_series(dims) -> tuple[int, int] | None:
    """Fundamental degrees of a polynomial invariant ring read off its Hilbert series.

    None when the series is too short to decide.
    """
    d1 = next((k for k in range(1, len(dims)) if dims[k]), None)
    if d1 is None:
        return None
    if dims[d1] >= 2:
        return d1, d1
    for k in range(d1 + 1, len(dims)):
        if dims[k] > (1 if k % d1 == 0 else 0):
            return d1, k
    return None


def fundamental_degrees(p: FiniteMatrixGroup) -> tuple[int, int]:
    bound = 16
    while True:
        found = degrees_from_series(molien_dimensions(p, bound))
        if found is not None:
            return found
        if bound > p.order:
            raise ConsistencyError("no fundamental degrees up to |P|")
        bound *= 2


def degrees_from_reflections(p: FiniteMatrixGroup) -> tuple[int, int]:
    """Degrees from d1 + d2 = #reflections + 2 and d1 d2 = |P|.

    Only valid for reflection groups; used as a cross-check on the series.
    """
    from .matgrp import is_pseudoreflection

    s = sum(1 for m in p.elements if is_pseudoreflection(m)) + 2
    disc = s * s - 4 * p.order
    r = int(round(disc**0.5)) if disc >= 0 else -1
    if r < 0 or r * r != disc:
        raise ConsistencyError("reflection count incompatible with a polynomial invariant ring")
    return (s - r) // 2, (s + r) // 2


# -- symmetric power action ---------------------------------------------------


def _conv(u, v, phi):
    out = [_ZERO] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a.is_zero():
            continue
        for j, b in enumerate(v):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return [x % phi for x in out]


def sym_power_images(m: Mat2, k: int) -> list[list]:
    """Column j is the coefficient vector of (x^(k-j) y^j) o M."""
    phi = _modulus(m.conductor)
    lx, ly = [m.a, m.b], [m.c, m.d]
    px, py = [[_ONE]], [[_ONE]]
    for _ in range(k):
        px.append(_conv(px[-1], lx, phi))
        py.append(_conv(py[-1], ly, phi))
    return [_conv(px[k - j], py[j], phi) for j in range(k + 1)]


def _kernel_basis(p: FiniteMatrixGroup, k: int) -> list[list]:
    rows = []
    for g in p.generators:
        cols = sym_power_images(g, k)
        for r in range(k + 1):
            row = [cols[j][r] - (_ONE if r == j else _ZERO) for j in range(k + 1)]
            if any(not x.is_zero() for x in row):
                rows.append(row)
    return nullspace(rows, k + 1, p.conductor)


def _reynolds_basis(p: FiniteMatrixGroup, k: int) -> list[list]:
    n = p.conductor
    phi = _modulus(n)
    total = [[_ZERO] * (k + 1) for _ in range(k + 1)]
    for m in p.elements:
        cols = sym_power_images(m, k)
        for j in range(k + 1):
            col, acc = cols[j], total[j]
            for r in range(k + 1):
                if not col[r].is_zero():
                    acc[r] = acc[r] + col[r]
    # dividing by |P| does not change the span
    cols = [[x % phi for x in col] for col in total]
    return [c for c in cols if any(not x.is_zero() for x in c)]


def invariant_basis(p: FiniteMatrixGroup, k: int, method: str = "reynolds") -> list[Poly2]:
    """Basis of the degree-k invariants, in reduced echelon form.

    ``method="reynolds"`` averages every monomial over P; ``"kernel"`` solves
    (rho_k(g) - 1) v = 0 over P's generators. Both return the same list.
    """
    if method == "reynolds":
        vecs = _reynolds_basis(p, k)
    elif method == "kernel":
        vecs = _kernel_basis(p, k)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not vecs:
        return []
    red, _ = rref(vecs, p.conductor)
    return [Poly2.from_vector(p.conductor, v) for v in red]


def is_invariant(f: Poly2, p: FiniteMatrixGroup) -> bool:
    return all(f.subs(g) == f for g in p.generators)


def fundamental_invariants(p: FiniteMatrixGroup, method: str = "kernel") -> tuple[Poly2, Poly2]:
    if not pseudoreflection_subgroup(p).same_elements(p):
        raise NotReflectionGroup("group is not generated by pseudoreflections")
    d1, d2 = fundamental_degrees(p)
    if d1 * d2 != p.order:
        raise ConsistencyError(f"degrees {d1}, {d2} do not multiply to |P| = {p.order}")
    low = invariant_basis(p, d1, method)
    f1 = low[0]
    if d1 == d2:
        candidates = low[1:]
    else:
        candidates = invariant_basis(p, d2, method)
    for f2 in candidates:
        if not jacobian(f1, f2).is_zero():
            return f1, f2
    raise ConsistencyError("no invariant pair with nonvanishing Jacobian")


# -- cotangent action -----------------------------------------------------------


def cotangent_action(g: FiniteMatrixGroup | None, p: FiniteMatrixGroup, omega: Mat2, f1: Poly2, f2: Poly2) -> CotangentMatrix:
    """Matrix of omega on span(f1, f2) modulo m^2; row i holds omega.f_i in terms of (f1, f2)."""
    n = p.conductor
    d1, d2 = f1.degree, f2.degree
    images = [f1.subs(omega), f2.subs(omega)]
    for h in images:
        if not is_invariant(h, p):
            raise InconsistentExpansion("substituted invariant is not P-invariant")
    rows = []
    if d1 == d2:
        basis = [f1.to_vector(d1), f2.to_vector(d1)]
        for h in images:
            c = solve_combination(basis, h.to_vector(d1), n)
            if c is None:
                raise InconsistentExpansion("image is outside span(f1, f2)")
            rows.append(c)
    else:
        c = solve_combination([f1.to_vector(d1)], images[0].to_vector(d1), n)
        if c is None:
            raise InconsistentExpansion("image of f1 is not a multiple of f1")
        rows.append([c[0], _ZERO])
        basis = [f2.to_vector(d2)]
        if d2 % d1 == 0:
            basis.append((f1 ** (d2 // d1)).to_vector(d2))
        c = solve_combination(basis, images[1].to_vector(d2), n)
        if c is None:
            raise InconsistentExpansion("image of f2 is outside span(f2, f1^k)")
        rows.append([_ZERO, c[0]])  # f1^k part lies in m^2
    (a, b), (c_, d) = rows
    return Mat2._raw(n, a, b, c_, d)


def eigen_exponents(c: Mat2, order: int) -> tuple[int, int]:
    """(e1, e2) with eigenvalues zeta_order^e1, zeta_order^e2 of a matrix of the given order."""
    if c.is_diagonal():
        out = []
        for x in (c.a, c.d):
            log = root_of_unity_log(Cyclo._raw(c.conductor, x))
            if log is None or order % log[0]:
                raise ConsistencyError("diagonal entry is not an eigenvalue of the expected order")
            out.append(log[1] * (order // log[0]) % order)
        return out[0], out[1]
    big = lcm(c.conductor, order)
    cb = c.embed(big) if big != c.conductor else c
    tr, det = cb.trace(), cb.det()
    step = big // order
    for j in range(order):
        z = zeta(big, j * step)
        if (z * z - tr * z + det).is_zero():
            other = root_of_unity_log(det / z)
            if other is None or order % other[0]:
                raise ConsistencyError("second eigenvalue is not a root of unity of the expected order")
            return j, other[1] * (order // other[0]) % order
    raise ConsistencyError("no root-of-unity eigenvalue found")


# -- pipeline -----------------------------------------------------------------


@dataclass(frozen=True)
class Smooth:
    @property
    def type_r(self) -> bool:
        return True

    @property
    def ctype(self) -> CyclicType:
        return SMOOTH

    def __str__(self) -> str:
        return "smooth"


@dataclass(frozen=True)
class Classified:
    ctype: CyclicType
    type_r: bool

    def __str__(self) -> str:
        return str(self.ctype)


@dataclass
class Analysis:
    """Intermediate data of one pipeline run."""

    order: int
    p_order: int
    quotient: CyclicQuotient | NonCyclicQuotient
    result: Smooth | Classified | NonCyclicQuotient
    degrees: tuple[int, int] | None = None
    omega: Mat2 | None = None
    cotangent: Mat2 | None = None
    weights: WeightedAction | None = None
    scalar_shortcut: bool = False
    notes: list[str] = field(default_factory=list)


def _scalar_coset_generator(g: FiniteMatrixGroup, p: FiniteMatrixGroup, n: int) -> Mat2 | None:
    """A scalar whose coset generates the cyclic group G/P, if one exists."""
    scalars = scalar_elements(g)
    c = len(scalars)
    gen = None
    for s in scalars:
        log = root_of_unity_log(Cyclo._raw(g.conductor, s.a))
        if log is not None and log[0] == c:
            gen = s
            break
    if gen is None:
        return None
    x, k = gen, 1
    while x not in p:
        x = x * gen
        k += 1
    return gen if k == n else None


def analyze_group(g: FiniteMatrixGroup, shortcut: bool = True, method: str = "kernel") -> Analysis:
    p = pseudoreflection_subgroup(g)
    n = g.order // p.order
    if n == 1:
        return Analysis(g.order, p.order, CyclicQuotient(1, Mat2.identity(g.conductor)), Smooth())
    quo = quotient_structure(g, p)
    if not quo.is_cyclic:
        return Analysis(g.order, p.order, quo, quo)
    omega = _scalar_coset_generator(g, p, n) if shortcut else None
    used_shortcut = omega is not None
    if used_shortcut:
        d1, d2 = fundamental_degrees(p)
        if d1 * d2 != p.order:
            raise ConsistencyError(f"degrees {d1}, {d2} do not multiply to |P| = {p.order}")
        lam = Cyclo._raw(g.conductor, omega.a)
        cot = Mat2.diag(lam**d1, lam**d2)
    else:
        omega = quo.generator
        f1, f2 = fundamental_invariants(p, method)
        d1, d2 = f1.degree, f2.degree
        cot = cotangent_action(g, p, omega, f1, f2)
    if matrix_order(cot, limit=n) != n:
        raise ConsistencyError(f"cotangent matrix order differs from |G/P| = {n}")
    e1, e2 = eigen_exponents(cot, n)
    w = WeightedAction(n, e1, e2)
    ct = from_weights(w)
    res: Smooth | Classified = Smooth() if ct.is_smooth else Classified(ct, is_type_R(ct))
    return Analysis(g.order, p.order, quo, res, (d1, d2), omega, cot, w, used_shortcut)


def singularity_of_group(g: FiniteMatrixGroup, **kw) -> Smooth | Classified | NonCyclicQuotient:
    return analyze_group(g, **kw).result
