"""Exception classes; the class name doubles as the CLI error prefix."""


class GoodvarError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DimensionMismatch(GoodvarError, ValueError):
    pass


class NonIntegral(GoodvarError):
    """A class is not in the integral span of the chosen generator monomials."""


class Singular(GoodvarError):
    """Generator monomials are linearly dependent; indicates an invalid system."""


class StrictModeGap(GoodvarError):
    """No strict-mode generator exists in some needed dimension."""

    def __init__(self, dims):
        self.dims = sorted(dims)
        super().__init__(
            "no strict-mode generator in dimension(s) "
            + ", ".join(map(str, self.dims))
            + "; retry with --mode relaxed"
        )


class InvalidFan(GoodvarError):
    pass


class InvalidVariety(GoodvarError, ValueError):
    pass


class LocalizationError(GoodvarError):
    """Localization sum failed to produce an integer (internal consistency)."""


class VerificationFailed(GoodvarError):
    pass
