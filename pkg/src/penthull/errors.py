"""Exception hierarchy shared by all modules."""


class PentHullError(Exception):
    pass


class ValidationError(PentHullError, ValueError):
    """A complex violates one of the structural invariants."""


class ResourceLimitError(PentHullError):
    """Requested size is beyond the configured cap."""


class RecognizabilityError(PentHullError):
    """Faces cannot be grouped into supertiles of the subdivision rule."""


class DomainError(PentHullError, ValueError):
    """A planar point lies outside the canonical pentagon."""


class PrecisionError(PentHullError):
    """Requested tolerance could not be certified.

    ``best`` carries the bounds that were reached.
    """

    def __init__(self, msg, best=None):
        super().__init__(msg)
        self.best = best


class ConstructionError(PentHullError):
    """A gluing pattern produced an inconsistent complex."""


class TruncationError(PentHullError):
    """The finite data does not reach the requested depth or radius."""

    def __init__(self, msg, achieved=None):
        super().__init__(msg)
        self.achieved = achieved
