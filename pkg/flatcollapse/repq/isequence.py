"""
i-sequences and pairs of collapses with different i-sequences.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..collapse import collapse
from ..crysgroup import CrystGroup, require_bieberbach
from ..errors import BudgetLimited
from ..latgeo import RatSubspace
from .isotypic import IsotypicComponent, blocks_of, decompose

log = logging.getLogger("repq")

CERTIFIED = "certified"
BUDGET_LIMITED = "budget_limited"


@dataclass(frozen=True)
class ISequence:
    entries: Tuple[int, ...]
    status: str
    components: Tuple[IsotypicComponent, ...] = field(default=(), compare=False)
    unresolved: Tuple[int, ...] = ()

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def is_kk_form(self) -> bool:
        return len(self.entries) == 2 and self.entries[0] == self.entries[1] and not self.unresolved

    def to_document(self) -> dict:
        doc = {
            "entries": list(self.entries),
            "status": self.status,
            "components": [c.to_document() for c in self.components],
        }
        if self.unresolved:
            doc["unresolved"] = [[d] for d in self.unresolved]
        return doc


def sequence_from_components(components: Sequence[IsotypicComponent]) -> ISequence:
    entries, unresolved = [], []
    for c in components:
        if c.determined:
            entries.extend([c.irreducible_dim] * c.multiplicity)
        else:
            unresolved.append(c.space.dim)
    status = CERTIFIED if not unresolved else BUDGET_LIMITED
    return ISequence(tuple(sorted(entries)), status, tuple(components), tuple(unresolved))


def i_sequence(g: CrystGroup, budget: Optional[int] = None) -> ISequence:
    seq = sequence_from_components(decompose(g, budget))
    log.info(f"i-sequence {seq.entries} ({seq.status})")
    return seq


def predicted_collapse_sequence(blocks: Sequence[Tuple[int, RatSubspace]], selection: Sequence[int]) -> Tuple[int, ...]:
    """i-sequence left after collapsing the selected blocks: the remaining block dimensions."""
    chosen = set(selection)
    return tuple(sorted(s.dim for i, (_, s) in enumerate(blocks) if i not in chosen))


def selection_subspace(blocks: Sequence[Tuple[int, RatSubspace]], selection: Sequence[int], n: int) -> RatSubspace:
    space = RatSubspace.zero(n)
    for i in selection:
        space = space.sum(blocks[i][1])
    return space


def proper_selections(count: int):
    """Nonempty proper subsets of range(count), smallest first."""
    for size in range(1, count):
        yield from itertools.combinations(range(count), size)


@dataclass(frozen=True)
class TheoremCResult:
    applicable: bool
    i_sequence: Tuple[int, ...]
    subspaces: Tuple[RatSubspace, ...] = ()
    sequences: Tuple[Tuple[int, ...], ...] = ()

    def to_document(self) -> dict:
        doc = {"applicable": self.applicable, "i_sequence": list(self.i_sequence)}
        if self.applicable:
            doc["witnesses"] = [
                {"subspace": w.to_document()["basis"], "collapsed_i_sequence": list(seq)}
                for w, seq in zip(self.subspaces, self.sequences)
            ]
        return doc


def theorem_c_witnesses(g: CrystGroup, budget: Optional[int] = None) -> TheoremCResult:
    """
    Two invariant rational subspaces whose collapses have different
    i-sequences, verified by collapsing; not applicable for i-sequences (k, k).
    """
    require_bieberbach(g)
    seq = i_sequence(g, budget)
    if not seq.certified:
        raise BudgetLimited(f"i-sequence not certified: unresolved blocks {seq.unresolved}")
    if seq.is_kk_form():
        return TheoremCResult(applicable=False, i_sequence=seq.entries)

    blocks = blocks_of(g, seq.components, budget)
    chosen: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = []
    for selection in proper_selections(len(blocks)):
        predicted = predicted_collapse_sequence(blocks, selection)
        if all(predicted != p for _, p in chosen):
            chosen.append((selection, predicted))
        if len(chosen) == 2:
            break
    if len(chosen) < 2:
        raise ArithmeticError(f"no two distinct collapse sequences for {seq.entries}")

    subspaces, sequences = [], []
    for selection, predicted in chosen:
        w = selection_subspace(blocks, selection, g.n)
        observed = i_sequence(collapse(g, w).group, budget)
        if observed.entries != predicted:
            raise ArithmeticError(f"collapse along {w} has i-sequence {observed.entries}, predicted {predicted}")
        subspaces.append(w)
        sequences.append(observed.entries)
    return TheoremCResult(True, seq.entries, tuple(subspaces), tuple(sequences))
