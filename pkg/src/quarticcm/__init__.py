"""Orders in quartic CM-fields Q[x]/(x^4 + A x^2 + B).

Exact rational arithmetic throughout: lattices in Hermite normal form,
ideals and class groups of orders, polarised ideal classes, reflex type
norms of cyclic fields and the minimal orders O_min,f.
"""

from .field import CMFieldQuartic, FieldElement, RealElement, FieldError
from .orders import Order, RealOrder, maximal_order, equation_order, rel_disc_norm
from .ideals import FracIdeal
from .classgroups import (class_group, polarised_class_group, ppav_classes,
                          morphism_kernel, is_principal, PPAVClass, PolarisedPair)
from .cmtypes import CMTypeCyclic, is_s_full, s_member, omin, omin_zeta5
from .unitquot import psi, residue_units, prop41_bounds

__version__ = "0.1.0"

__all__ = [
    "CMFieldQuartic", "FieldElement", "RealElement", "FieldError",
    "Order", "RealOrder", "maximal_order", "equation_order", "rel_disc_norm",
    "FracIdeal", "class_group", "polarised_class_group", "ppav_classes",
    "morphism_kernel", "is_principal", "PPAVClass", "PolarisedPair",
    "CMTypeCyclic", "is_s_full", "s_member", "omin", "omin_zeta5",
    "psi", "residue_units", "prop41_bounds",
]
