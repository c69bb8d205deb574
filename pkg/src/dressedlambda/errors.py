"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`DressedLambdaError`, so callers (the CLI in particular) can map
numerical failures to an exit code without catching unrelated bugs.
"""


class DressedLambdaError(Exception):
    pass


class ConfigError(DressedLambdaError):
    """Invalid user configuration. ``key`` names the offending entry."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class MissingKey(ConfigError):
    pass


class TypeMismatch(ConfigError):
    pass


class UnknownKey(ConfigError):
    pass


class InvalidParameters(DressedLambdaError, ValueError):
    pass


class NumericalError(DressedLambdaError):
    pass


# linalg
class NonHermitian(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class Singular(NumericalError):
    pass


class DimensionMismatch(NumericalError, ValueError):
    pass


# dressed / matching
class DegenerateDetuning(NumericalError):
    pass


class AmbiguousTracking(NumericalError):
    pass


class NotNested(NumericalError):
    pass


class NoSignChange(NumericalError):
    pass


# dynamics
class DegenerateSteadyState(NumericalError):
    pass


class ResolventSingular(NumericalError):
    pass


class ManifoldOverlap(NumericalError):
    pass


class StepTooLarge(NumericalError):
    pass


class WindowOverlap(NumericalError):
    pass
