"""Exception taxonomy shared by the library, the service, and the CLI."""


class TreecutError(Exception):
    """Base class for all treecut errors."""


class GraphParseError(TreecutError, ValueError):
    """Malformed graph or partition document (bad syntax, duplicate edge,
    out-of-range id, asymmetric matrix, nonzero diagonal, ...)."""


class PreconditionError(TreecutError, ValueError):
    """A precondition of an operation is violated (disconnected graph,
    k out of range, partition does not cover the graph, ...)."""


class BudgetExceededError(TreecutError, RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""
