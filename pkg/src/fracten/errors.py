"""Exception hierarchy.

Input problems (bad files, malformed series) derive from ``InputError`` and
numerical failures from ``NumericalError``; the CLI maps the two families to
different exit codes.
"""


class FractenError(ValueError):
    pass


class InputError(FractenError):
    pass


class NumericalError(FractenError):
    pass


class EmptyInput(InputError):
    pass


class DuplicateDate(InputError):
    pass


class BadHeader(InputError):
    pass


class NonPositivePrice(InputError):
    pass


class TooShort(InputError):
    pass


class InvalidParams(InputError):
    pass


class DegenerateSeries(NumericalError):
    """Series has zero spread (constant input)."""


class AllZeroVariances(NumericalError):
    pass


class InsufficientQPoints(NumericalError):
    pass
