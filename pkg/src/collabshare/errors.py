class CollabError(ValueError):
    """Base class for every error raised by this package."""


class ParameterError(CollabError):
    """A parameter or plan violates a hard constraint."""


class ModulusMismatchError(ParameterError):
    pass


class DuplicateXError(ParameterError):
    pass


class InsufficientSharesError(ParameterError):
    pass


class InconsistentSharesError(CollabError):
    """Extra shares do not lie on the curve fixed by the first t shares."""


class SameThresholdError(ParameterError):
    """u = t_1 = t_s with differing secrets: the crossover points alone pin every
    curve, so one share cannot serve all schemes."""


class EnumerationBoundError(ParameterError):
    pass


class ConstructionError(CollabError):
    """Curve construction could not produce an acceptable polynomial."""
