"""Grade-shifted Gorenstein dimensions, C-transposes and linkage over graded rings."""

from .field import QQ, FieldSpec
from .fpmod import FPModule, ModuleMap, direct_sum, hom_module, iso_search, k_dual, tensor
from .homology import depth, ext, free_resolution, grade, residue_field, ring_module, tor
from .ring import QuotientRing

__version__ = "0.1.0"

__all__ = [
    "FPModule",
    "FieldSpec",
    "ModuleMap",
    "QQ",
    "QuotientRing",
    "depth",
    "direct_sum",
    "ext",
    "free_resolution",
    "grade",
    "hom_module",
    "iso_search",
    "k_dual",
    "residue_field",
    "ring_module",
    "tensor",
    "tor",
]
