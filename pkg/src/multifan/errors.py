"""Exception hierarchy.

Input problems derive from :class:`MultiFanError` (CLI exit code 2);
internal consistency failures derive from :class:`ConsistencyError`
(CLI exit code 3).
"""


class MultiFanError(ValueError):
    """Invalid input or an operation that does not apply to its input."""


class ConsistencyError(RuntimeError):
    """A computed result violated an invariant that must always hold."""


class NotACycle(MultiFanError):
    pass


class DegenerateColoring(MultiFanError):
    pass


class DimensionMismatch(MultiFanError):
    pass


class ColoringMismatch(MultiFanError):
    pass


class DependentGlueSet(MultiFanError):
    pass


class SingularMatrix(MultiFanError):
    pass


class NotInSupport(MultiFanError):
    pass


class NotPure(MultiFanError):
    pass


class GhostVertex(MultiFanError):
    pass


class NonOrientable(MultiFanError):
    pass


class NonGenericPolarization(MultiFanError):
    pass


class GenericityExhausted(MultiFanError):
    pass


class ZeroVolumePolynomial(MultiFanError):
    pass


class NotSuspensionShaped(MultiFanError):
    pass


class MoveNotApplicable(MultiFanError):
    pass


class TooManySingularPoints(MultiFanError):
    pass


class FormatError(MultiFanError):
    pass


class SymmetryViolation(ConsistencyError):
    pass


class SampleDisagreement(ConsistencyError):
    pass
