from __future__ import annotations

from math import gcd

import pytest

from quotsing.catalog import FamilySpec, family_group, st_group
from quotsing.cyclic import CyclicType, WeightedAction, from_weights
from quotsing.errors import InconsistentExpansion, NotReflectionGroup
from quotsing.exact import zeta
from quotsing.invariant import (
    Classified,
    Smooth,
    analyze_group,
    cotangent_action,
    degrees_from_reflections,
    degrees_from_series,
    eigen_exponents,
    fundamental_degrees,
    fundamental_invariants,
    invariant_basis,
    is_invariant,
    molien_dimensions,
    singularity_of_group,
)
from quotsing.matgrp import Mat2, NonCyclicQuotient, generate, mat, pseudoreflection_subgroup, trivial_group, zeta_diag
from quotsing.poly import Poly2, jacobian


def _g_mp2(m: int, p: int, n: int | None = None):
    """G(m, p, 2): diag(zeta_m, zeta_m^-1), diag(zeta_m^p, 1) and the swap."""
    n = n or m
    return generate(
        [zeta_diag(m, 1, m - 1, n), zeta_diag(m, p % m, 0, n), mat([[0, 1], [1, 0]], n)]
    )


def test_molien_examples():
    assert molien_dimensions(generate([mat([[-1, 0], [0, -1]], 1)]), 3) == [1, 0, 3, 0]
    assert molien_dimensions(trivial_group(1), 2) == [1, 2, 3]
    # G(2,1,2): invariants x^2 + y^2 and x^2 y^2 (degrees 2, 4)
    assert molien_dimensions(_g_mp2(2, 1), 6) == [1, 0, 1, 0, 2, 0, 2]


def test_degrees_from_series():
    assert degrees_from_series([1, 2, 3]) == (1, 1)
    assert degrees_from_series([1, 0, 1, 0, 2, 0, 2]) == (2, 4)
    assert degrees_from_series([1, 0, 1]) is None


@pytest.mark.parametrize(
    "st_id,degrees",
    [(4, (4, 6)), (5, (6, 12)), (6, (4, 12)), (7, (12, 12)), (9, (8, 24)), (11, (24, 24)),
     (15, (12, 24)), (17, (20, 60)), (19, (60, 60)), (21, (12, 60)), (22, (12, 20))],
)
def test_shephard_todd_degrees(st_id, degrees):
    g = st_group(st_id)
    assert fundamental_degrees(g) == degrees
    assert degrees_from_reflections(g) == degrees
    assert degrees[0] * degrees[1] == g.order


def test_g222_degree_two_basis():
    g = _g_mp2(2, 2)
    x, y = Poly2.x(2), Poly2.y(2)
    basis = invariant_basis(g, 2)
    assert len(basis) == 2
    for f in (x * x + y * y, x * y):
        assert is_invariant(f, g)


@pytest.mark.parametrize(
    "make",
    [
        lambda: st_group(4),
        lambda: st_group(5),
        lambda: st_group(6),
        lambda: _g_mp2(4, 2),
        lambda: _g_mp2(6, 3),
        lambda: pseudoreflection_subgroup(family_group(FamilySpec("muA4", 4))),
    ],
)
def test_reynolds_equals_kernel_and_molien(make):
    p = make()
    d2 = fundamental_degrees(p)[1]
    dims = molien_dimensions(p, d2)
    for k in range(d2 + 1):
        r = invariant_basis(p, k, "reynolds")
        kk = invariant_basis(p, k, "kernel")
        assert r == kk
        assert len(r) == dims[k]
        assert all(is_invariant(f, p) for f in r)


def test_st5_degree_six_is_one_dimensional():
    p = st_group(5)
    assert len(invariant_basis(p, 6, "kernel")) == 1


@pytest.mark.parametrize("m,mp", [(2, 1), (4, 1), (4, 2), (6, 2), (6, 3), (8, 4)])
def test_monomial_group_invariants(m, mp):
    # (xy)^mp and x^m + y^m generate the invariants of G(m, m/mp, 2)
    p = m // mp
    g = _g_mp2(m, p)
    x, y = Poly2.x(m), Poly2.y(m)
    assert is_invariant((x * y) ** mp, g)
    assert is_invariant(x**m + y**m, g)
    d1, d2 = fundamental_degrees(g)
    assert sorted((2 * mp, m)) == [d1, d2]


def test_fundamental_invariants_have_jacobian():
    for st_id in (4, 5, 6, 7):
        p = st_group(st_id)
        f1, f2 = fundamental_invariants(p)
        assert (f1.degree, f2.degree) == fundamental_degrees(p)
        assert not jacobian(f1, f2).is_zero()


def test_not_reflection_group():
    with pytest.raises(NotReflectionGroup):
        fundamental_invariants(generate([mat([[-1, 0], [0, -1]], 1)]))


def test_bogus_omega_is_inconsistent():
    p = generate([mat([[-1, 0], [0, 1]], 1)])
    f1, f2 = fundamental_invariants(p)
    with pytest.raises(InconsistentExpansion):
        cotangent_action(None, p, mat([[1, 1], [0, 1]], 1), f1, f2)


# -- cotangent action and the pipeline ---------------------------------------------------


def test_mud_cotangent_matrix():
    g = family_group(FamilySpec("muD", 1, 1))
    a = analyze_group(g, shortcut=False)
    z4 = zeta(4)
    assert a.p_order == 1
    assert a.cotangent == Mat2(z4 * 0, z4, z4, z4 * 0)
    assert a.result == Classified(CyclicType(4, 3), False)


@pytest.mark.parametrize(
    "make,ctype,type_r",
    [
        (lambda: generate([mat([[-1, 0], [0, -1]], 1)]), CyclicType(2, 1), False),
        (lambda: family_group(FamilySpec("muA4", 4)), CyclicType(6, 5), False),
        (lambda: family_group(FamilySpec("muA4", 2)), CyclicType(3, 2), True),
        (lambda: family_group(FamilySpec("muS4", 3)), CyclicType(2, 1), False),
        (lambda: family_group(FamilySpec("S4-A4", 12)), CyclicType(4, 3), False),
        (lambda: family_group(FamilySpec("D-C", 2, 2)), None, False),
    ],
)
def test_pipeline_examples(make, ctype, type_r):
    res = singularity_of_group(make())
    assert res.type_r is type_r
    if ctype is not None:
        assert res.ctype == ctype


def test_mu8a4_details():
    a = analyze_group(family_group(FamilySpec("muA4", 4)), shortcut=False)
    assert a.p_order == 16 and a.degrees == (4, 4)
    e = eigen_exponents(a.cotangent, 6)
    assert sorted(e) == [1, 5]


def test_smooth_and_noncyclic():
    assert isinstance(singularity_of_group(generate([mat([[1, 0], [0, -1]], 1)])), Smooth)
    assert isinstance(singularity_of_group(family_group(FamilySpec("muD", 1, 2))), NonCyclicQuotient)
    assert singularity_of_group(trivial_group(3)) == Smooth()


def test_muS4_degrees():
    a = analyze_group(family_group(FamilySpec("muS4", 3)))
    assert a.degrees == (6, 12)


GROUPS = [
    ("muA4", 4, 0), ("muA4", 8, 0), ("muS4", 3, 0), ("muS4", 8, 0), ("S4-A4", 12, 0),
    ("muD", 2, 1), ("muD", 4, 3), ("D-C", 2, 2), ("D-D", 3, 2), ("A4-D2", 4, 0), ("muA5", 4, 0),
]


@pytest.mark.parametrize("fam,q,m", GROUPS)
def test_shortcut_agrees_with_invariant_route(fam, q, m):
    g = family_group(FamilySpec(fam, q, m))
    a = analyze_group(g, shortcut=True)
    b = analyze_group(g, shortcut=False)
    assert a.result == b.result
    c = analyze_group(g, shortcut=False, method="reynolds")
    assert c.result == b.result


@pytest.mark.parametrize("fam,q,m", GROUPS)
def test_generator_independence(fam, q, m):
    g = family_group(FamilySpec(fam, q, m))
    a = analyze_group(g, shortcut=False)
    if not isinstance(a.result, Classified):
        return
    p = pseudoreflection_subgroup(g)
    f1, f2 = fundamental_invariants(p)
    n = a.weights.a
    for k in range(2, n):
        if gcd(k, n) != 1:
            continue
        cot = cotangent_action(g, p, a.omega**k, f1, f2)
        w = WeightedAction(n, *eigen_exponents(cot, n))
        assert from_weights(w) == a.result.ctype


@pytest.mark.parametrize("fam,q,m", GROUPS)
def test_basis_independence(fam, q, m):
    g = family_group(FamilySpec(fam, q, m))
    a = analyze_group(g, shortcut=False)
    if not isinstance(a.result, Classified):
        return
    p = pseudoreflection_subgroup(g)
    f1, f2 = fundamental_invariants(p)
    d1, d2 = f1.degree, f2.degree
    n = a.weights.a
    g1 = f1.scale(3)
    if d1 == d2:
        g2 = f2 + f1.scale(zeta(p.conductor))
    elif d2 % d1 == 0:
        g2 = f2.scale(-2) + f1 ** (d2 // d1)
    else:
        g2 = f2.scale(5)
    cot = cotangent_action(g, p, a.omega, g1, g2)
    assert from_weights(WeightedAction(n, *eigen_exponents(cot, n))) == a.result.ctype


@pytest.mark.parametrize("n,i,j", [(6, 1, 5), (8, 3, 1), (12, 0, 7), (5, 2, 2)])
def test_eigen_exponents_diagonal_and_conjugated(n, i, j):
    d = zeta_diag(n, i, j)
    assert eigen_exponents(d, n) == (i, j)
    s = mat([[1, 1], [0, 1]], n)
    c = s * d * s.inverse()
    assert sorted(eigen_exponents(c, n)) == sorted((i, j))
