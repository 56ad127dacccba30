"""Exception hierarchy shared by all modules."""


class SpinimError(ValueError):
    """Base class for every error raised by the toolkit."""


class ZeroBaseSpinor(SpinimError):
    pass


class ZeroSpinor(SpinimError):
    pass


class MetricCompatibilityError(SpinimError):
    """Christoffel array is not skew in its last two slots."""


class NotEtaEinstein(SpinimError):
    pass


class InvalidData(SpinimError):
    pass


class PreconditionFailed(SpinimError):
    """Dirac or norm hypothesis of the reconstruction is not met."""


class EtaZero(SpinimError):
    pass


class TauZero(SpinimError):
    pass


class AlphaOutOfRange(SpinimError):
    pass


class SpecialSpinorNotFound(SpinimError):
    pass
