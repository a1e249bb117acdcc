"""Exact computation of Weitzenböck-derivation constants on free metabelian algebras."""

from .constants import (GeneratorSet, GradedConstantsBasis, kernel_dims,
                        kernel_slice, lift_basis, lift_generators,
                        module_span_dims, run_case, subalgebra_span_dims,
                        verify_relation)
from .grammar import parse_element, parse_uv
from .metabelian import (
    CommutatorKey,
    Derivation,
    MetabelianElement,
    graded_basis,
)
from .series import NiceRational
from .wreath import PolyUV, WreathElement, act_poly, embed, pi

__all__ = [
    "CommutatorKey",
    "Derivation",
    "GeneratorSet",
    "GradedConstantsBasis",
    "MetabelianElement",
    "NiceRational",
    "PolyUV",
    "WreathElement",
    "act_poly",
    "embed",
    "graded_basis",
    "kernel_dims",
    "kernel_slice",
    "lift_basis",
    "lift_generators",
    "module_span_dims",
    "parse_element",
    "parse_uv",
    "pi",
    "run_case",
    "subalgebra_span_dims",
    "verify_relation",
]
