"""Torsor classification and derived-equivalence checks for genus-1 curves."""
from .errors import GuardError, InvariantError, SingularCurveError, ValidationError
from .modarith import FiniteAbelianGroup, ZModElement, element_order, subgroup_generated, unit_group
from .cohomology import Cocycle, FiniteGroup, GModule, h1, picd_cocycle
from .torsor_model import TorsorClass, WCModel, classify, derived_related, iso_related
from .elliptic_ff import PlaneCubic, WeierstrassCurve, curve_group_order, weierstrass_from_cubic
from .real_curves import RationalCurve, h1_real_size
from .unitary_orbits import PolarizationModel, gamma0_image, orbit, polarized_conclusion_check, sp_image
from .brauer_fibration import BrauerClass, SplitBrauerModel, fiber_derived_related, same_cyclic_in_quotient

__version__ = "0.1.0"

__all__ = [
    "BrauerClass", "Cocycle", "FiniteAbelianGroup", "FiniteGroup", "GModule", "GuardError",
    "InvariantError", "PlaneCubic", "PolarizationModel", "RationalCurve", "SingularCurveError",
    "SplitBrauerModel", "TorsorClass", "ValidationError", "WCModel", "WeierstrassCurve",
    "ZModElement", "classify", "curve_group_order", "derived_related", "element_order",
    "fiber_derived_related", "gamma0_image", "h1", "h1_real_size", "iso_related", "orbit",
    "picd_cocycle", "polarized_conclusion_check", "same_cyclic_in_quotient", "sp_image",
    "subgroup_generated", "unit_group", "weierstrass_from_cubic",
]
