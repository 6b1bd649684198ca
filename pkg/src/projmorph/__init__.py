"""Almost split sequences and approximations in the morphism category of
projective modules over bound quiver algebras, computed exactly over Q."""
from .algebra import BoundQuiverAlgebra, build_algebra, opposite_algebra
from .modules import (Module, ModuleMap, direct_sum, injective_module, make_module, make_map,
                      projective_module, simple_module)
from .modcat import (ShortExactSeq, almost_split_sequence_ending_at, almost_split_sequence_starting_at,
                     decompose, indecomposables, is_isomorphic, tau, tau_inverse, transpose,
                     verify_almost_split)
from .morphcat import MorphMap, MorphObject, MorphSES, t2_algebra
from .arquiver import ARQuiver, extend_to_P_quiver, knit_module_quiver, export_dot
from .gvec import GVector, g_vector, psi, injective_generation_check
from .fixtures import FIXTURES

__all__ = [
    "BoundQuiverAlgebra", "build_algebra", "opposite_algebra",
    "Module", "ModuleMap", "direct_sum", "injective_module", "make_module", "make_map",
    "projective_module", "simple_module",
    "ShortExactSeq", "almost_split_sequence_ending_at", "almost_split_sequence_starting_at",
    "decompose", "indecomposables", "is_isomorphic", "tau", "tau_inverse", "transpose",
    "verify_almost_split",
    "MorphMap", "MorphObject", "MorphSES", "t2_algebra",
    "ARQuiver", "extend_to_P_quiver", "knit_module_quiver", "export_dot",
    "GVector", "g_vector", "psi", "injective_generation_check",
    "FIXTURES",
]
