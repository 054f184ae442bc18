from .group import (
    CrystGroup,
    Element,
    GeneratorDoc,
    GroupDocument,
    inverse_element,
    load_validate,
    parse_group_document,
)
from .fixed import (
    FixedData,
    TorsionVerdict,
    averaging_projector,
    check_invariant,
    element_order,
    fixed_data,
    fixed_point_oracle,
    invariant_complement,
    is_torsion_free,
    particular_solution,
    require_bieberbach,
    solve_in_image,
    torus_action,
)

__all__ = [
    "CrystGroup", "Element", "GeneratorDoc", "GroupDocument", "inverse_element", "load_validate",
    "parse_group_document", "FixedData", "TorsionVerdict", "averaging_projector", "check_invariant",
    "element_order", "fixed_data", "fixed_point_oracle", "invariant_complement", "is_torsion_free",
    "particular_solution", "require_bieberbach", "solve_in_image", "torus_action",
]
