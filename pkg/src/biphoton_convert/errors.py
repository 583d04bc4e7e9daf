"""Exception hierarchy shared by the numerical engines and the command line."""


class BiphotonError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(BiphotonError, ValueError):
    """Invalid run configuration. ``path`` is the dotted field path."""

    def __init__(self, path, reason):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


class UnknownKeyError(ConfigError):
    def __init__(self, path, key):
        self.key = key
        super().__init__(path, f"unknown key {key!r}")


class NumericalError(BiphotonError):
    """A numerical engine could not produce a trustworthy value."""


class QuadratureError(NumericalError):
    """Doubling the quadrature order moved the result by more than the tolerance."""


class SupportMismatchError(NumericalError):
    """The frequency grid does not cover the support an integrand needs."""


class NoPeakError(NumericalError, ValueError):
    """A trace has no interior maximum, so a width cannot be defined."""


class ShallowDipError(NumericalError, ValueError):
    """A HOM dip is too shallow for a width to be meaningful."""
