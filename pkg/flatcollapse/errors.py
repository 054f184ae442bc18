"""
Error types raised by the toolkit.
Library code raises these; only the CLI turns them into exit codes.
"""


class ToolkitError(Exception):
    """Base class for every toolkit failure."""

    exit_code = 1


# ---------- Input and validation ----------

class ParseError(ToolkitError, ValueError):
    """Input document is malformed."""


class UsageError(ToolkitError):
    """Command line could not be parsed."""


class ValidationFailed(ToolkitError):
    """Data parsed but violates a structural invariant."""


class NotGramOrthogonal(ValidationFailed):
    """A point-group matrix does not preserve the Gram form."""


class CocycleViolation(ValidationFailed):
    """Generator translations are inconsistent with the group law."""


class PointGroupBoundExceeded(ValidationFailed):
    """The enumerated point group grew past the configured bound."""


class ElementNotInPointGroup(ToolkitError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "matrix not in point group"


class NotInvariant(ToolkitError):
    """Subspace is not preserved by the point group."""


class IrrationalInput(ToolkitError):
    """An exact leaf operation received an irrational subspace."""


class NotBieberbach(ToolkitError):
    """Operation requires a torsion-free group."""


class FieldMismatch(ToolkitError):
    """Number-field elements from different fields were combined."""


class DegreeCapExceeded(ToolkitError):
    pass


class NoProperInvariantSubspaceFound(ToolkitError):
    pass


# ---------- Inconclusive outcomes (exit code 2) ----------

class InconclusiveError(ToolkitError):
    exit_code = 2


class BudgetLimited(InconclusiveError):
    """A probe budget was exhausted before certification."""


class RadiusTooSmall(InconclusiveError):
    """Lattice enumeration radius failed the padding check."""
