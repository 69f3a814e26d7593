"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class BallotKindError(DomainError):
    """A ballot of the wrong kind (ranking vs. approval) reached a rule."""


class PreconditionError(DomainError):
    """A reduction was asked to run in a regime its construction excludes.

    These regimes are solvable directly; callers should use the exact oracles.
    """


class NoSolutionError(Exception):
    """The control problem has no (reachable) feasible solution."""


class InfeasibleError(Exception):
    """A covering integer program has no feasible point."""


class ResourceError(RuntimeError):
    """A search exceeded its node budget."""
