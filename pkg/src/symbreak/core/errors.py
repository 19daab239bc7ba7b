"""
symbreak Errors: one exception hierarchy for the library and the CLI.

The CLI maps these onto exit codes (see symbreak.cli.main), so each class
corresponds to one kind of failure a caller can act on.
"""


class SymbreakError(Exception):
    """Base class for every error raised by symbreak."""


class ConfigError(SymbreakError, ValueError):
    """A settings override (environment or YAML) has an unusable value."""


class GraphFormatError(SymbreakError, ValueError):
    """graph6, edge-list or JSON graph input could not be parsed."""


class InvalidVertexError(SymbreakError, ValueError):
    """A vertex id is outside [0, n)."""


class ListAssignmentError(SymbreakError, ValueError):
    """A colour list is missing, too short, or cannot be generated."""


class IncompleteColouringError(SymbreakError, ValueError):
    """A colouring does not cover every edge (and vertex, for total colourings)."""


class PreconditionError(SymbreakError, ValueError):
    """A graph does not have the shape an operation requires (connected, degree, ...)."""


class K2ComponentError(PreconditionError):
    """The graph has a K2 component, so the colouring theorems do not apply."""

    def __init__(self, component):
        self.component = tuple(sorted(component))
        super().__init__(
            f"component {list(self.component)} is K2; the theorem requires a graph "
            "without a K2 component"
        )


class SizeLimitError(SymbreakError):
    """Automorphism enumeration would exceed the vertex limit or element cap."""


class BudgetExceededError(SymbreakError):
    """An exhaustive oracle search space is larger than the configured budget."""


class TheoremViolationError(SymbreakError, RuntimeError):
    """A constructed colouring failed certification; this signals a bug."""
