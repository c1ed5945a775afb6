from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quotsing.abelian import (
    AbelianGroup,
    abelian_groups_up_to,
    diagonal_generators,
    faithful_diagonal_reps,
    is_R2_abelian,
    is_R2_abelian_bruteforce,
)
from quotsing.errors import ValidationError
from quotsing.matgrp import generate


def test_validation():
    with pytest.raises(ValidationError):
        AbelianGroup((2, 3))
    with pytest.raises(ValidationError):
        AbelianGroup((1, 2))
    assert AbelianGroup(()).order == 1 and str(AbelianGroup(())) == "1"
    assert str(AbelianGroup((2, 4))) == "C2 x C4"


@pytest.mark.parametrize(
    "orders,factors",
    [((6, 4), (2, 12)), ((2, 2, 2), (2, 2, 2)), ((12,), (12,)), ((3, 5), (15,)), ((1,), ()), ((4, 6, 9), (6, 36))],
)
def test_from_orders(orders, factors):
    assert AbelianGroup.from_orders(orders).invariant_factors == factors


@pytest.mark.parametrize(
    "factors,r2",
    [((2,), False), ((3,), True), ((2, 4), False), ((2, 2), True), ((4,), False), ((), True), ((3, 6), False), ((2, 8), False), ((3, 9), True)],
)
def test_formula_examples(factors, r2):
    assert is_R2_abelian(AbelianGroup(factors)) is r2


@pytest.mark.parametrize("factors,r2", [((2,), False), ((3,), True), ((2, 2), True), ((4,), False), ((2, 4), False)])
def test_bruteforce_examples(factors, r2):
    assert is_R2_abelian_bruteforce(AbelianGroup(factors)) is r2


def test_rank_three_is_vacuous():
    g = AbelianGroup((2, 2, 2))
    assert faithful_diagonal_reps(g) == []
    assert is_R2_abelian(g) and is_R2_abelian_bruteforce(g)


def _elements(g):
    return list(itertools.product(*(range(s) for s in g.invariant_factors)))


def _faithful_by_kernel(g, a, b):
    # chi(x) = sum w_i x_i / s_i mod 1; faithful iff only 0 is in both kernels
    for x in _elements(g):
        if not any(x):
            continue
        k1 = sum(w * xi * (g.exponent // s) for w, xi, s in zip(a, x, g.invariant_factors)) % g.exponent
        k2 = sum(w * xi * (g.exponent // s) for w, xi, s in zip(b, x, g.invariant_factors)) % g.exponent
        if k1 == 0 and k2 == 0:
            return False
    return True


@pytest.mark.parametrize("factors", [(2,), (3,), (4,), (6,), (2, 2), (2, 4), (3, 3), (2, 6), (4, 4)])
def test_faithful_pairs_match_kernel_enumeration(factors):
    g = AbelianGroup(factors)
    chars = list(itertools.product(*(range(s) for s in factors)))
    expected = {(a, b) for a in chars for b in chars if _faithful_by_kernel(g, a, b)}
    assert set(faithful_diagonal_reps(g)) == expected


def test_faithful_pair_counts():
    assert len(faithful_diagonal_reps(AbelianGroup((2,)))) == 3
    assert len(faithful_diagonal_reps(AbelianGroup((3,)))) == 8


@pytest.mark.parametrize("factors", [(2,), (5,), (6,), (2, 2), (2, 6), (3, 3), (4, 8)])
def test_pairs_closed_under_swap(factors):
    pairs = faithful_diagonal_reps(AbelianGroup(factors))
    s = set(pairs)
    assert {(b, a) for a, b in pairs} == s
    symmetric = sum(1 for a, b in pairs if a == b)
    assert (len(pairs) - symmetric) % 2 == 0


@pytest.mark.parametrize("factors", [(2,), (6,), (2, 2), (2, 4), (3, 6)])
def test_diagonal_generators_are_faithful(factors):
    g = AbelianGroup(factors)
    for pair in faithful_diagonal_reps(g)[:10]:
        gens = diagonal_generators(g, pair)
        assert generate(gens, conductor=gens[0].conductor).order == g.order


def test_group_listing():
    gs = abelian_groups_up_to(8)
    assert [str(g) for g in gs] == ["1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C2 x C2", "C2 x C4"]
    assert len(abelian_groups_up_to(120)) == 182


@given(st.lists(st.integers(1, 12), min_size=1, max_size=3))
def test_normal_form_preserves_order(orders):
    g = AbelianGroup.from_orders(orders)
    n = 1
    for o in orders:
        n *= o
    assert g.order == n
    assert AbelianGroup.from_orders(g.invariant_factors) == g


@given(st.integers(2, 30), st.integers(1, 6))
def test_formula_recognizes_the_family(a, b):
    # C_a x C_2ab is never R2 (a = 1 reads as the cyclic group C_2b)
    g = AbelianGroup.from_orders((a, 2 * a * b))
    assert not is_R2_abelian(g)


@pytest.mark.parametrize("n", [12, 16, 18, 20, 24, 30, 36])
def test_formula_equals_bruteforce_small(n):
    for g in abelian_groups_up_to(n):
        if g.order == n:
            assert is_R2_abelian(g) == is_R2_abelian_bruteforce(g), str(g)
