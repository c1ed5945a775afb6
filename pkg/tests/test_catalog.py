from __future__ import annotations

import json

import pytest

from quotsing.catalog import (
    FAMILIES,
    FamilySpec,
    SweepConfig,
    expected_center,
    expected_order,
    expected_pgl,
    family_conductor,
    family_group,
    render_table,
    report_json,
    st_group,
    summarize,
    sweep,
    sweep_specs,
    table_prediction,
    verify_family,
)
from quotsing.errors import ConductorTooLarge, OutOfRange, UnsupportedId, ValidationError
from quotsing.exact import conductor_limit
from quotsing.invariant import singularity_of_group
from quotsing.matgrp import PGLImage, pgl_image_type, pseudoreflection_subgroup, scalar_subgroup


def test_spec_validation():
    with pytest.raises(ValidationError):
        FamilySpec("E8", 1)
    with pytest.raises(OutOfRange):
        FamilySpec("muA4", 0)
    with pytest.raises(OutOfRange):
        FamilySpec("D-C", 1, 0)
    assert FamilySpec("muA4", 2, 7).m == 0
    assert str(FamilySpec("muD", 2, 3)) == "muD(q=2, m=3)"


@pytest.mark.parametrize(
    "spec,order",
    [
        (FamilySpec("muD", 1, 1), 4),
        (FamilySpec("muS4", 3), 144),
        (FamilySpec("A4-D2", 1), 24),
        (FamilySpec("D-Codd", 1, 1), 6),
        (FamilySpec("D-Codd", 2, 1), 24),
        (FamilySpec("muA5", 1), 120),
        (FamilySpec("D-D", 2, 3), 48),
    ],
)
def test_family_orders(spec, order):
    g = family_group(spec)
    assert g.order == order == expected_order(spec)
    assert scalar_subgroup(g) == expected_center(spec)
    assert pgl_image_type(g) == expected_pgl(spec)


def test_a5_generators_are_in_sl2_with_minus_identity():
    g = family_group(FamilySpec("muA5", 1))
    assert all(x.det().is_one() for x in g.generators)
    assert scalar_subgroup(g) == 2
    assert pgl_image_type(g) == PGLImage("A5")


@pytest.mark.parametrize(
    "st_id,order",
    [(4, 24), (5, 72), (6, 48), (7, 144), (9, 192), (11, 576), (15, 288), (17, 1200),
     (19, 3600), (21, 720), (22, 240)],
)
def test_shephard_todd_orders(st_id, order):
    g = st_group(st_id)
    assert g.order == order
    assert pseudoreflection_subgroup(g).same_elements(g)


@pytest.mark.parametrize("st_id", [3, 8, 10, 12, 13, 14, 16, 18, 20, 23])
def test_unsupported_ids(st_id):
    with pytest.raises(UnsupportedId):
        st_group(st_id)


@pytest.mark.parametrize(
    "spec,neg",
    [
        (FamilySpec("muS4", 3), True),
        (FamilySpec("muA5", 4), True),
        (FamilySpec("muA5", 72), True),
        (FamilySpec("muA5", 60), True),
        (FamilySpec("muA5", 48), False),
        (FamilySpec("D-Codd", 4, 3), False),
        (FamilySpec("muD", 2, 1), True),
        (FamilySpec("muD", 3, 3), True),
        (FamilySpec("muD", 3, 2), False),
        (FamilySpec("D-C", 2, 2), True),
        (FamilySpec("D-C", 4, 2), False),
        (FamilySpec("S4-A4", 12), True),
        (FamilySpec("S4-A4", 24), False),
        (FamilySpec("muA4", 8), True),
        (FamilySpec("A4-D2", 12), False),
    ],
)
def test_table_prediction_examples(spec, neg):
    assert table_prediction(spec) is neg


@pytest.mark.parametrize(
    "spec,type_r",
    [(FamilySpec("muA4", 4), False), (FamilySpec("S4-A4", 12), False), (FamilySpec("D-C", 2, 2), False),
     (FamilySpec("muA4", 3), True), (FamilySpec("D-Codd", 2, 2), True)],
)
def test_verify_examples(spec, type_r):
    r = verify_family(spec)
    assert r.match is True and r.columns_ok
    assert r.computed_typeR is type_r


def test_verify_too_large_is_a_marker():
    r = verify_family(FamilySpec("muA5", 10), max_order=500)
    assert r.error == "GroupTooLarge" and r.match is None


def test_conductor_cap_is_enforced():
    with conductor_limit(100):
        with pytest.raises(ConductorTooLarge):
            family_group(FamilySpec("D-Codd", 12, 8))
    assert family_conductor(FamilySpec("D-Codd", 12, 8)) == 816


def test_sweep_one_per_family():
    reports = sweep(SweepConfig(max_q=1, max_m=1))
    assert [r.spec.family for r in reports] == list(FAMILIES)
    assert all(r.match for r in reports)
    s = summarize(reports)
    assert s.ok and s.total == 9 and s.matched == 9


def test_sweep_small_bounds_all_match():
    seen = []
    reports = sweep(SweepConfig(max_q=4, max_m=2, max_order=2000), on_report=seen.append)
    assert len(seen) == len(reports) == len(sweep_specs(SweepConfig(max_q=4, max_m=2)))
    s = summarize(reports)
    assert s.mismatched == 0 and s.column_failures == 0
    rec = json.loads(report_json(reports[0]))
    assert list(rec)[:8] == ["family", "q", "m", "order", "computed_type", "computed_typeR", "predicted_negR", "match"]
    table = render_table(reports)
    assert "mu_2q A5'" in table and "4(2m+1)q or 2(2m+1)q" in table


def test_sweep_skips_without_aborting():
    reports = sweep(SweepConfig(max_q=2, families=("muA5",), max_order=150))
    assert [r.error for r in reports] == [None, "GroupTooLarge"]
    assert summarize(reports).skipped == 1


def test_muA5_thresholds_up_to_8():
    reports = sweep(SweepConfig(max_q=8, families=("muA5",), max_order=1000))
    assert all(r.match for r in reports)
    assert [r.spec.q for r in reports if r.computed_typeR is False] == [4, 8]


def test_parallel_sweep_equals_serial():
    cfg = dict(max_q=2, max_m=2, families=("muD", "D-D", "muA4"))
    a = [r.record() for r in sweep(SweepConfig(**cfg))]
    b = [r.record() for r in sweep(SweepConfig(jobs=2, **cfg))]
    assert a == b


@pytest.mark.parametrize(
    "spec,phis",
    [
        (FamilySpec("A4-D2", 4), (1, 2)),
        (FamilySpec("A4-D2", 8), (1, 2)),
        (FamilySpec("D-Codd", 2, 1), (1, 3)),
        (FamilySpec("D-Codd", 4, 2), (1, 3)),
        (FamilySpec("S4-A4", 12), (1, 3)),
        (FamilySpec("D-C", 2, 2), (1, 3)),
        (FamilySpec("D-D", 3, 2), (1, 3)),
    ],
)
def test_phi_independence(spec, phis):
    results = []
    for phi in phis:
        g = family_group(spec, phi=phi)
        assert g.order == expected_order(spec)
        results.append(singularity_of_group(g))
    assert all(str(r) == str(results[0]) and r.type_r == results[0].type_r for r in results)


def test_phi_must_be_a_unit():
    with pytest.raises(ValidationError):
        family_group(FamilySpec("A4-D2", 1), phi=3)


@pytest.mark.slow
@pytest.mark.parametrize("q,ctype", [(36, "1/6(1,5)"), (40, "1/4(1,3)"), (60, "1/2(1,1)"), (72, "1/12(1,5)")])
def test_muA5_large_thresholds(q, ctype):
    with conductor_limit(1024):
        r = verify_family(FamilySpec("muA5", q), max_order=10000)
    assert r.match is True and r.computed_typeR is False
    assert r.computed_type == ctype
