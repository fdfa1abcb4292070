"""Invariant algebras of (complete) path algebras under homogeneous group actions."""

from .action import (Generator, GroupClosure, HomogeneousAction, act_on_path,
                     char_dim_invariants, close_group, validate)
from .exactlin import QQ, Field, Matrix, Subspace
from .invariants import (InvariantQuiver, fixed_subspace, freeness_convolution_check,
                         invariant_quiver, psi_dimension_check)
from .quiver import PathWord, Quiver, classify_graph, classify_quiver, enumerate_paths
from .reptype import classify_invariant, preservation_check

__all__ = [
    "QQ", "Field", "Matrix", "Subspace",
    "Quiver", "PathWord", "enumerate_paths", "classify_graph", "classify_quiver",
    "Generator", "HomogeneousAction", "GroupClosure", "validate", "act_on_path",
    "close_group", "char_dim_invariants",
    "InvariantQuiver", "fixed_subspace", "invariant_quiver", "psi_dimension_check",
    "freeness_convolution_check", "classify_invariant", "preservation_check",
]
