"""Exact regularizing decompositions of matrix pencils over QQ and GF(p)."""

from .canonical import invariant_factors, reconstruct, similar, strictly_equivalent
from .errors import ContractViolation, InternalError, PencilError, SingularMatrixError, UsageError
from .field import GF, QQ, Field
from .linalg import Matrix
from .pencil import (
    BlockKind,
    BlockMultiset,
    Decomposition,
    Pencil,
    block,
    direct_sum,
    regular_block,
    scramble,
    swap,
    transpose,
)
from .regularize import decompose

__version__ = "0.1.0"

__all__ = [
    "BlockKind",
    "BlockMultiset",
    "ContractViolation",
    "Decomposition",
    "Field",
    "GF",
    "InternalError",
    "Matrix",
    "Pencil",
    "PencilError",
    "QQ",
    "SingularMatrixError",
    "UsageError",
    "block",
    "decompose",
    "direct_sum",
    "invariant_factors",
    "reconstruct",
    "regular_block",
    "scramble",
    "similar",
    "strictly_equivalent",
    "swap",
    "transpose",
]
