"""Exception types shared across the package."""


class Homog3Error(ValueError):
    """Base class for validation failures."""


class JacobiViolation(Homog3Error):
    pass


class NormalizationViolated(Homog3Error):
    pass


class GenericForm(Homog3Error):
    """An operation needs a Milnor normal form but got a generic algebra."""


class WrongNormalForm(Homog3Error):
    pass


class MetricalConditionViolated(Homog3Error):
    pass


class RicciNotDiagonal(Homog3Error):
    pass


class NotAmbroseSinger(Homog3Error):
    pass


class ClosureDiverged(Homog3Error):
    pass


class JacobiFailed(Homog3Error):
    pass


class DimensionMismatch(Homog3Error):
    pass


class UnsupportedForm(Homog3Error):
    pass


class SasakianInput(Homog3Error):
    pass
