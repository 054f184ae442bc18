from .collapsed import (
    CollapsedGroup,
    CollapsedInvariants,
    collapse,
    collapse_target,
    collapsed_invariants,
    leaf_space_point,
    same_orbit,
)
from .smoothness import SmoothnessVerdict, is_smooth

__all__ = [
    "CollapsedGroup", "CollapsedInvariants", "collapse", "collapse_target", "collapsed_invariants",
    "leaf_space_point", "same_orbit", "SmoothnessVerdict", "is_smooth",
]
