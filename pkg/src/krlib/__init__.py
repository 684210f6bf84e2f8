"""Graded characters and exact matrix realizations of KR modules."""

from .errors import (
    ChainConditionError,
    DimensionGuardError,
    ScopeError,
    TheoremCheckError,
)
from .krset import base_set, enumerate_chain, graded_character, pplus
from .modforge import build_kr_fundamental, kr_tensor_submodule, verify_current_relations
from .rootsys import LieType, RootSystem, build, parse_type
from .twisted import (
    base_set_sigma,
    enumerate_chain_sigma,
    fixed_point_data,
    graded_character_sigma,
    outer_from_ambient,
)

__all__ = [
    "ChainConditionError",
    "DimensionGuardError",
    "LieType",
    "RootSystem",
    "ScopeError",
    "TheoremCheckError",
    "base_set",
    "base_set_sigma",
    "build",
    "build_kr_fundamental",
    "enumerate_chain",
    "enumerate_chain_sigma",
    "fixed_point_data",
    "graded_character",
    "graded_character_sigma",
    "kr_tensor_submodule",
    "outer_from_ambient",
    "parse_type",
    "pplus",
    "verify_current_relations",
]
