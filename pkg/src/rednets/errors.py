"""Exception hierarchy shared by the library and the CLI."""


class RednetsError(Exception):
    """Base class for all errors raised by :mod:`rednets`."""

    exit_code = 1
    code = "error"


class ValidationError(RednetsError, ValueError):
    """Malformed input: bad modulus, wrong shapes, non-monotone indices, ..."""

    exit_code = 2
    code = "validation"


class SequenceRequiredError(ValidationError):
    """A column-type reduction was certified on matrices not taken from a sequence."""

    code = "sequence_required"


class BudgetExceededError(RednetsError):
    """An exact combinatorial enumeration would exceed its configured budget."""

    exit_code = 3
    code = "budget"
