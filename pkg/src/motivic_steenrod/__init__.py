"""Symbolic engine for the motivic mod-2 dual Steenrod algebra and its power operations."""

from .algebra import (
    AElement, BaseScalar, Bidegree, Caps, GenMonomial, InhomogeneousError, TensorElement,
    basis_enumerate, bidegree_of, chi, counit, elem_add, elem_mul, eta_L, eta_R, psi,
    tensor_normalize,
)
from .kernel import BACKEND

__all__ = [
    "AElement", "BaseScalar", "Bidegree", "Caps", "GenMonomial", "InhomogeneousError",
    "TensorElement", "basis_enumerate", "bidegree_of", "chi", "counit", "elem_add",
    "elem_mul", "eta_L", "eta_R", "psi", "tensor_normalize", "BACKEND",
]
