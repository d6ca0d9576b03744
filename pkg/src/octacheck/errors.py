class OctacheckError(Exception):
    pass


class DomainError(OctacheckError, ValueError):
    """An operation was applied outside its mathematical domain."""


class ValidationError(OctacheckError, ValueError):
    """Input data does not satisfy a structural invariant (e.g. not a chain map)."""


class PreconditionError(OctacheckError, ValueError):
    pass


class BuildError(OctacheckError):
    pass
