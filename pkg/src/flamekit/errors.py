"""Exception hierarchy; the CLI maps each class to an exit status."""


class FlameError(Exception):
    """Base class for library errors."""


class GraphError(FlameError, ValueError):
    """Malformed graph, subset or input file."""


class PreconditionError(FlameError, ValueError):
    """An operation was called outside its domain (e.g. on a non-flame)."""


class MalformedPathSystem(PreconditionError):
    pass


class BudgetExceeded(FlameError):
    """Oracle input is larger than its configured budget."""


class InvariantError(FlameError, AssertionError):
    """A guaranteed property failed to hold. Always a bug."""
