"""Exact computations in symplectic reflection algebras H_{1,eta}(G)."""

from .algebra import AlgebraElement, SRAlgebra
from .coxeter import build_root_system
from .scalars import NumberField, field_init

__version__ = "0.1.0"

__all__ = ["AlgebraElement", "SRAlgebra", "build_root_system", "NumberField", "field_init", "__version__"]
