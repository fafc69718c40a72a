"""Exception hierarchy shared by the whole package."""


class BoostGeoError(ValueError):
    """Base class for all errors raised by boostgeo."""


class DomainError(BoostGeoError):
    """A parameter value lies outside the declared curve domain."""


class SingularityError(BoostGeoError):
    """The rotation radius alpha1 vanishes or turns negative."""


class IntegrationError(BoostGeoError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, interval=None, abserr=None):
        super().__init__(message)
        self.interval = interval
        self.abserr = abserr


class ParameterError(BoostGeoError):
    """Invalid family parameters."""


class PreconditionError(BoostGeoError):
    """An operation was called on inputs violating its contract."""


class SamplingError(BoostGeoError):
    """The sample set handed to the detector is degenerate."""


class ConfigError(BoostGeoError):
    """Malformed CLI configuration."""
