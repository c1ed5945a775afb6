"""Exact decision of type R for tame quotient surface singularities."""
from __future__ import annotations

__version__ = "0.1.0"

from .abelian import AbelianGroup, is_R2_abelian, is_R2_abelian_bruteforce
from .catalog import FamilySpec, SweepConfig, family_generators, family_group, st_group, sweep, table_prediction, verify_family
from .cyclic import CyclicType, WeightedAction, from_weights, is_type_R
from .exact import Cyclo, parse_cyclo, zeta
from .hjcf import critical_mod, hj_eval, hj_expand, is_critical_pair, is_critical_pair_arith
from .invariant import analyze_group, fundamental_invariants, invariant_basis, molien_dimensions, singularity_of_group
from .matgrp import FiniteMatrixGroup, Mat2, generate, mat, pseudoreflection_subgroup

__all__ = [
    "AbelianGroup",
    "CyclicType",
    "Cyclo",
    "FamilySpec",
    "FiniteMatrixGroup",
    "Mat2",
    "SweepConfig",
    "WeightedAction",
    "analyze_group",
    "critical_mod",
    "family_generators",
    "family_group",
    "from_weights",
    "fundamental_invariants",
    "generate",
    "hj_eval",
    "hj_expand",
    "invariant_basis",
    "is_R2_abelian",
    "is_R2_abelian_bruteforce",
    "is_critical_pair",
    "is_critical_pair_arith",
    "is_type_R",
    "mat",
    "molien_dimensions",
    "parse_cyclo",
    "pseudoreflection_subgroup",
    "singularity_of_group",
    "st_group",
    "sweep",
    "table_prediction",
    "verify_family",
    "zeta",
]
