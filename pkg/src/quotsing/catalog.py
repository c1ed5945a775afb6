"""The nine families of non-abelian finite subgroups of GL_2, the named
Shephard-Todd groups among them, the predicted not-R sub-families, and a
verification sweep that re-derives each prediction from the matrices.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd

from .errors import ConductorTooLarge, GroupTooLarge, OutOfRange, QuotsingError, UnsupportedId, ValidationError
from .exact import Cyclo, conductor_cap, conductor_limit, lcm, zeta
from .hjcf import critical_mod
from .invariant import analyze_group
from .matgrp import (
    DEFAULT_MAX_ORDER,
    FiniteMatrixGroup,
    Mat2,
    PGLImage,
    generate,
    pgl_image_type,
    pseudoreflection_subgroup,
    scalar_subgroup,
)

FAMILIES = ("D-C", "D-D", "muD", "D-Codd", "A4-D2", "muA4", "muS4", "S4-A4", "muA5")
D_FAMILIES = ("D-C", "D-D", "muD", "D-Codd")

# display names in the usual notation
FAMILY_LABELS = {
    "D-C": "(mu_4q | mu_2q ; D'_m | C'_2m)",
    "D-D": "(mu_4q | mu_2q ; D'_2m | D'_m)",
    "muD": "mu_2q D'_m",
    "D-Codd": "(mu_4q | mu_q ; D'_2m+1 | C'_2m+1)",
    "A4-D2": "(mu_6q | mu_2q ; A4' | D2')",
    "muA4": "mu_2q A4'",
    "muS4": "mu_2q S4'",
    "S4-A4": "(mu_4q | mu_2q ; S4' | A4')",
    "muA5": "mu_2q A5'",
}


@dataclass(frozen=True)
class FamilySpec:
    """One member of a family; ``m`` is ignored (and normalized to 0) outside the D-families."""

    family: str
    q: int
    m: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.q < 1:
            raise OutOfRange(f"q must be positive, got {self.q}")
        if self.family in D_FAMILIES:
            if self.m < 1:
                raise OutOfRange(f"family {self.family} needs m >= 1, got {self.m}")
        else:
            object.__setattr__(self, "m", 0)

    def __str__(self) -> str:
        if self.family in D_FAMILIES:
            return f"{self.family}(q={self.q}, m={self.m})"
        return f"{self.family}(q={self.q})"


# -- fixed matrices -------------------------------------------------------------


def _zeta(conductor: int, order: int, k: int = 1) -> Cyclo:
    return zeta(conductor, (conductor // order) * k % conductor)


def _scalar(conductor: int, order: int, k: int = 1) -> Mat2:
    return Mat2.scalar(_zeta(conductor, order, k))


def _c_prime(conductor: int, n: int) -> Mat2:
    """Generator diag(zeta_n, zeta_n^-1) of C'_n."""
    return Mat2.diag(_zeta(conductor, n), _zeta(conductor, n, -1))


def _j(conductor: int) -> Mat2:
    i = _zeta(conductor, 4)
    z = Cyclo.from_rational(conductor, 0)
    return Mat2(z, i, i, z)


def _t4(conductor: int) -> Mat2:
    """(zeta_8 / sqrt 2) [[1, i], [1, -i]] = ((1 + i)/2) [[1, i], [1, -i]]."""
    i = _zeta(conductor, 4)
    s = (i + 1) / 2
    return Mat2(s, s * i, s, -(s * i))


def _d2_gens(conductor: int) -> list[Mat2]:
    return [_j(conductor), _c_prime(conductor, 4)]


def _a4_gens(conductor: int) -> list[Mat2]:
    return [_t4(conductor)] + _d2_gens(conductor)


def _s4_gens(conductor: int) -> list[Mat2]:
    return [_c_prime(conductor, 8)] + _a4_gens(conductor)


def _a5_gens(conductor: int) -> list[Mat2]:
    """Two generators of the binary icosahedral group over Q(zeta_5).

    S = diag(e^3, e^2) and T = (1/sqrt5) [[-(e - e^4), e^2 - e^3], [e^2 - e^3, e - e^4]]
    with e = zeta_5 and sqrt5 = e - e^2 - e^3 + e^4.
    """
    e = [_zeta(conductor, 5, k) for k in range(5)]
    r5 = e[1] - e[2] - e[3] + e[4]
    u, v = (e[1] - e[4]) / r5, (e[2] - e[3]) / r5
    return [Mat2.diag(e[3], e[2]), Mat2(-u, v, v, u)]


# -- families --------------------------------------------------------------------


def family_conductor(spec: FamilySpec) -> int:
    q, m = spec.q, spec.m
    return {
        "D-C": lambda: lcm(4 * q, 2 * m, 4),
        "D-D": lambda: lcm(4 * q, 4 * m, 4),
        "muD": lambda: lcm(2 * q, 2 * m, 4),
        "D-Codd": lambda: lcm(4 * q, 2 * (2 * m + 1), 4),
        "A4-D2": lambda: lcm(6 * q, 4),
        "muA4": lambda: lcm(2 * q, 4),
        "muS4": lambda: lcm(2 * q, 8),
        "S4-A4": lambda: lcm(4 * q, 8),
        "muA5": lambda: lcm(2 * q, 10),
    }[spec.family]()


def family_generators(spec: FamilySpec, phi: int = 1) -> tuple[int, list[Mat2]]:
    """(conductor, generators) of the family member.

    Mixed groups (mu_wd | mu_d ; H | K) are generated by mu_d, the generators
    of K and zeta_wd * h0^phi where h0 generates H/K; ``phi`` must be a unit
    mod w and selects the isomorphism mu_wd/mu_d -> H/K.
    """
    q, m = spec.q, spec.m
    n = family_conductor(spec)
    if n > conductor_cap():
        raise ConductorTooLarge(f"{spec} needs conductor {n} > cap {conductor_cap()}")
    w = {"D-C": 2, "D-D": 2, "D-Codd": 4, "A4-D2": 3, "S4-A4": 2}.get(spec.family)
    if w is not None and gcd(phi, w) != 1:
        raise ValidationError(f"phi = {phi} is not a unit modulo {w}")
    fam = spec.family
    if fam == "D-C":
        gens = [_scalar(n, 2 * q), _c_prime(n, 2 * m), _scalar(n, 4 * q) * _j(n) ** phi]
    elif fam == "D-D":
        gens = [_scalar(n, 2 * q), _j(n), _c_prime(n, 2 * m), _scalar(n, 4 * q) * _c_prime(n, 4 * m) ** phi]
    elif fam == "muD":
        gens = [_scalar(n, 2 * q), _j(n), _c_prime(n, 2 * m)]
    elif fam == "D-Codd":
        gens = [_scalar(n, q), _c_prime(n, 2 * m + 1), _scalar(n, 4 * q) * _j(n) ** phi]
    elif fam == "A4-D2":
        gens = [_scalar(n, 2 * q)] + _d2_gens(n) + [_scalar(n, 6 * q) * _t4(n) ** phi]
    elif fam == "muA4":
        gens = [_scalar(n, 2 * q)] + _a4_gens(n)
    elif fam == "muS4":
        gens = [_scalar(n, 2 * q)] + _s4_gens(n)
    elif fam == "S4-A4":
        gens = [_scalar(n, 2 * q)] + _a4_gens(n) + [_scalar(n, 4 * q) * _c_prime(n, 8) ** phi]
    else:
        gens = [_scalar(n, 2 * q)] + _a5_gens(n)
    return n, [g for g in gens if not g.is_identity()] or [Mat2.identity(n)]


def family_group(spec: FamilySpec, max_order: int = DEFAULT_MAX_ORDER, phi: int = 1) -> FiniteMatrixGroup:
    n, gens = family_generators(spec, phi)
    return generate(gens, max_order=max_order, conductor=n)


def expected_order(spec: FamilySpec) -> int:
    q, m = spec.q, spec.m
    return {
        "D-C": lambda: 4 * m * q,
        "D-D": lambda: 8 * m * q,
        "muD": lambda: 4 * m * q,
        "D-Codd": lambda: (4 if q % 2 == 0 else 2) * (2 * m + 1) * q,
        "A4-D2": lambda: 24 * q,
        "muA4": lambda: 24 * q,
        "muS4": lambda: 48 * q,
        "S4-A4": lambda: 48 * q,
        "muA5": lambda: 120 * q,
    }[spec.family]()


def expected_center(spec: FamilySpec) -> int:
    if spec.family == "D-Codd" and spec.q % 2:
        return spec.q
    return 2 * spec.q


def expected_pgl(spec: FamilySpec) -> PGLImage:
    fam, m = spec.family, spec.m
    if fam in ("A4-D2", "muA4"):
        return PGLImage("A4")
    if fam in ("muS4", "S4-A4"):
        return PGLImage("S4")
    if fam == "muA5":
        return PGLImage("A5")
    k = {"D-C": m, "D-D": 2 * m, "muD": m, "D-Codd": 2 * m + 1}[fam]
    # D_1 is cyclic of order 2; D_2 is the Klein group
    return PGLImage("cyclic", 2) if k == 1 else PGLImage("dihedral", k)


def table_prediction(spec: FamilySpec) -> bool:
    """True when the member is predicted NOT to be of type R."""
    fam, q, m = spec.family, spec.q, spec.m
    if fam in D_FAMILIES:
        g = gcd(m, q)
        qp, mp = q // g, m // g
    if fam == "D-C":
        return m % 2 == 0 and q % m == 0 and qp % 2 == 1
    if fam == "D-D":
        return critical_mod(2 * qp, mp + qp)
    if fam == "muD":
        if q % 2:
            return q % m == 0
        return critical_mod(qp, mp)
    if fam == "D-Codd":
        return False
    if fam == "A4-D2":
        return q in (4, 8)
    if fam == "muA4":
        return q % 4 == 0
    if fam == "muS4":
        return q in (3, 8, 9, 16) or q % 24 == 0
    if fam == "S4-A4":
        return q % 12 == 0 and q % 24 != 0
    # q = 72 is in the case analysis but missing from the summary row
    return q in (4, 8, 12, 16, 20, 24, 36, 40, 72) or q % 60 == 0


# -- Shephard-Todd groups -------------------------------------------------------------

ST_SPECS = {
    4: FamilySpec("A4-D2", 1),
    5: FamilySpec("muA4", 3),
    6: FamilySpec("A4-D2", 2),
    7: FamilySpec("muA4", 6),
    9: FamilySpec("muS4", 4),
    11: FamilySpec("muS4", 12),
    15: FamilySpec("muS4", 6),
    17: FamilySpec("muA5", 10),
    19: FamilySpec("muA5", 30),
    21: FamilySpec("muA5", 6),
    22: FamilySpec("muA5", 2),
}


def st_group(st_id: int) -> FiniteMatrixGroup:
    spec = ST_SPECS.get(st_id)
    if spec is None:
        raise UnsupportedId(f"ST{st_id} is not available; supported: {sorted(ST_SPECS)}")
    g = family_group(spec)
    if not pseudoreflection_subgroup(g).same_elements(g):
        raise QuotsingError(f"ST{st_id} construction is not a reflection group")  # pragma: no cover
    return g


# -- verification -----------------------------------------------------------------


@dataclass
class VerificationReport:
    spec: FamilySpec
    order: int | None
    computed_type: str | None
    computed_typeR: bool | None
    predicted_negR: bool
    match: bool | None
    center: int | None = None
    pgl: str | None = None
    p_order: int | None = None
    order_ok: bool | None = None
    center_ok: bool | None = None
    pgl_ok: bool | None = None
    error: str | None = None
    seconds: float = 0.0

    @property
    def columns_ok(self) -> bool:
        return bool(self.order_ok and self.center_ok and self.pgl_ok)

    def record(self) -> dict:
        d = asdict(self)
        spec = d.pop("spec")
        d["family"], d["q"], d["m"] = spec["family"], spec["q"], spec["m"]
        del d["seconds"]  # timing stays off the record so reports diff cleanly
        order = ["family", "q", "m", "order", "computed_type", "computed_typeR", "predicted_negR", "match"]
        return {k: d[k] for k in order} | {k: v for k, v in d.items() if k not in order}


def verify_family(spec: FamilySpec, max_order: int = DEFAULT_MAX_ORDER, phi: int = 1) -> VerificationReport:
    t0 = time.perf_counter()
    pred = table_prediction(spec)
    if expected_order(spec) > max_order:
        return VerificationReport(spec, None, None, None, pred, None, error="GroupTooLarge")
    g = family_group(spec, max_order=max_order, phi=phi)
    a = analyze_group(g)
    res = a.result
    center, pgl = scalar_subgroup(g), pgl_image_type(g)
    return VerificationReport(
        spec,
        g.order,
        str(res),
        res.type_r,
        pred,
        res.type_r == (not pred),
        center=center,
        pgl=str(pgl),
        p_order=a.p_order,
        order_ok=g.order == expected_order(spec),
        center_ok=center == expected_center(spec),
        pgl_ok=pgl == expected_pgl(spec),
        seconds=time.perf_counter() - t0,
    )


@dataclass
class SweepConfig:
    max_q: int = 4
    max_m: int = 2
    max_order: int = 2000
    jobs: int = 1
    families: tuple[str, ...] = FAMILIES
    # D-Codd needs conductor lcm(4q, 4m+2), which passes 360 quickly
    conductor_cap: int = 1024
    # per-family q limits override max_q
    q_limits: dict[str, int] = field(default_factory=dict)


def sweep_specs(cfg: SweepConfig) -> list[FamilySpec]:
    out = []
    for fam in cfg.families:
        for q in range(1, cfg.q_limits.get(fam, cfg.max_q) + 1):
            if fam in D_FAMILIES:
                out.extend(FamilySpec(fam, q, m) for m in range(1, cfg.max_m + 1))
            else:
                out.append(FamilySpec(fam, q))
    return out


def _safe_verify(args) -> VerificationReport:
    spec, max_order, cap = args
    try:
        with conductor_limit(cap):
            return verify_family(spec, max_order)
    except GroupTooLarge:
        return VerificationReport(spec, None, None, None, table_prediction(spec), None, error="GroupTooLarge")
    except QuotsingError as exc:
        return VerificationReport(spec, None, None, None, table_prediction(spec), None, error=f"{type(exc).__name__}: {exc}")


def sweep(cfg: SweepConfig | None = None, on_report=None) -> list[VerificationReport]:
    """Verify every member within the bounds; errors become markers, never aborts."""
    cfg = cfg or SweepConfig()
    work = [(s, cfg.max_order, cfg.conductor_cap) for s in sweep_specs(cfg)]
    reports = []
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            for r in pool.map(_safe_verify, work):
                reports.append(r)
                if on_report:
                    on_report(r)
    else:
        for item in work:
            r = _safe_verify(item)
            reports.append(r)
            if on_report:
                on_report(r)
    return reports


@dataclass
class SweepSummary:
    total: int
    matched: int
    mismatched: int
    skipped: int
    column_failures: int

    @property
    def ok(self) -> bool:
        return self.mismatched == 0 and self.column_failures == 0


def summarize(reports) -> SweepSummary:
    done = [r for r in reports if r.match is not None]
    return SweepSummary(
        total=len(reports),
        matched=sum(r.match for r in done),
        mismatched=sum(not r.match for r in done),
        skipped=len(reports) - len(done),
        column_failures=sum(not r.columns_ok for r in done),
    )


def render_table(reports) -> str:
    """Per-family summary in the layout of the classification table."""
    rows = [("Family", "not-R members found", "Order", "Center", "Group/center", "checked", "mismatches")]
    for fam in FAMILIES:
        rs = [r for r in reports if r.spec.family == fam and r.match is not None]
        if not rs:
            continue
        neg = [r for r in rs if r.computed_typeR is False]
        if fam in D_FAMILIES:
            found = ", ".join(f"(q={r.spec.q},m={r.spec.m})" for r in neg[:6]) + (" ..." if len(neg) > 6 else "")
        else:
            found = ", ".join(f"q={r.spec.q}" for r in neg)
        order = {"D-C": "4mq", "D-D": "8mq", "muD": "4mq", "D-Codd": "4(2m+1)q or 2(2m+1)q",
                 "A4-D2": "24q", "muA4": "24q", "muS4": "48q", "S4-A4": "48q", "muA5": "120q"}[fam]
        center = "2q or q" if fam == "D-Codd" else "2q"
        image = {"D-C": "D_m", "D-D": "D_2m", "muD": "D_m", "D-Codd": "D_2m+1"}.get(fam, fam[-2:] if fam.startswith("mu") else fam[:2])
        bad = sum(not r.match or not r.columns_ok for r in rs)
        rows.append((FAMILY_LABELS[fam], found or "none", order, center, image, str(len(rs)), str(bad)))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = [" | ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines)


def report_json(r: VerificationReport) -> str:
    return json.dumps(r.record(), sort_keys=False)
