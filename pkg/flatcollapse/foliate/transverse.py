import logging
from typing import Optional, Tuple

from ..crysgroup import CrystGroup, invariant_complement
from ..errors import NoProperInvariantSubspaceFound
from ..latgeo import RatSubspace
from ..repq import decompose, irreducible_summands

log = logging.getLogger("foliate")


def transverse_pair(g: CrystGroup, budget: Optional[int] = None) -> Tuple[RatSubspace, RatSubspace]:
    """
    A proper invariant rational W₁ and an invariant rational complement W₂,
    so that F_{W₁} and F_{W₂} are strongly transverse foliations.
    """
    if g.n < 2:
        raise NoProperInvariantSubspaceFound(f"dimension {g.n} has no proper nonzero subspace")
    components = decompose(g, budget)
    if len(components) >= 2:
        w1 = components[0].space
    else:
        only = components[0]
        if not only.certified or only.multiplicity < 2:
            raise NoProperInvariantSubspaceFound("holonomy representation is irreducible over Q")
        w1 = irreducible_summands(g, only, budget)[0]
    w2 = invariant_complement(g, w1)
    log.info(f"transverse pair of dims {w1.dim} + {w2.dim}")
    return w1, w2
