"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI: InputError -> 2, CapacityError -> 3,
everything else that escapes -> 1.
"""


class QuatError(Exception):
    """Base class for all package errors."""


class InputError(QuatError, ValueError):
    """Malformed or out-of-contract input."""


class DegenerateFormError(InputError):
    """Ternary form with vanishing half-discriminant."""


class DegenerateLatticeError(InputError):
    """Generators span a lattice of rank < 4."""


class NotAnOrderError(InputError):
    """Lattice is not a unital multiplicatively closed ring."""


class HypothesisViolationError(InputError):
    """A constructive step ruled out the caller-asserted hypotheses."""


class CapacityError(QuatError):
    """Input exceeds the documented desk-scale bounds."""


class InternalConsistencyError(QuatError):
    """Two independent computations of the same quantity disagree (a bug)."""
