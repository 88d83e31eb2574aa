"""Exception types shared across the package."""


class InvdistError(Exception):
    """Base class for all library errors."""


class DomainViolation(InvdistError, ValueError):
    """A point lies outside the domain an operation requires it in."""


class DegenerateInput(InvdistError, ValueError):
    """Geometric input outside the valid parameter range (zero radius, c < 1, ...)."""


class UnsupportedDomain(InvdistError, TypeError):
    """The requested operation has no implementation for this domain variant."""


class NonConvergence(InvdistError, RuntimeError):
    """An iterative scheme exhausted its refinement budget before certifying."""


class BranchViolation(InvdistError, ValueError):
    """Input lies on the branch cut of a principal-branch map."""


class InvalidDomain(InvdistError, ValueError):
    """Domain construction data is inconsistent (self-intersecting boundary, ...)."""


class NoFiniteConstant(InvdistError, RuntimeError):
    """Constant fitting found violations even at the search ceiling."""


class InsufficientSamples(InvdistError, ValueError):
    """A regression or fit was asked to run on too few samples."""


class SchemaError(InvdistError, ValueError):
    """A JSON document does not match the domain / report schema."""
