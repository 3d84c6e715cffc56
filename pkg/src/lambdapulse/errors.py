"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A domain invariant is violated (e.g. tau_p <= 0, non-unit trace)."""


class StepTooLarge(ValidationError):
    """The integration step undersamples the optical carrier."""


class InvariantBreach(RuntimeError):
    """The density-matrix trace drifted past tolerance mid-run (numerical blow-up)."""


class ParseError(ValueError):
    """The configuration text is malformed."""


class UnknownKeyError(ParseError):
    """The configuration contains a section or key outside the schema."""
