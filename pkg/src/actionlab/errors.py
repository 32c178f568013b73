"""Exception taxonomy shared by every module.

Two families: ValidationFailure for rejected inputs (CLI exit code 1) and
CapExceeded for computations aborted at a resource cap (CLI exit code 3).
IllDefined and NoExponentFound sit outside both because callers branch on
them rather than treat them as plain errors.
"""


class ValidationFailure(ValueError):
    """Input violates a documented precondition."""


class InvalidTable(ValidationFailure):
    """Multiplication table is not a group table."""


class NotNormal(ValidationFailure):
    """Subgroup passed where a normal subgroup is required."""


class NotCentral(ValidationFailure):
    """Subgroup passed where a central subgroup is required."""


class NotElementaryAbelian(ValidationFailure):
    """Group or quotient is not elementary abelian of prime exponent."""


class NotPGroup(ValidationFailure):
    """Group order is not a prime power for the requested prime."""


class ParamOutOfRange(ValidationFailure):
    """Numeric parameter outside its documented range."""


class IndexTooLarge(ValidationFailure):
    """Requested index exceeds the supported window."""


class ProfileViolation(ValidationFailure):
    """Cohomology profile parameters violate the standing constraints."""


class UnsupportedRank(ValidationFailure):
    """Rank parameter for which no ledger template exists."""


class DegenerateRotation(ValidationFailure):
    """Rotation datum with a zero or integral angle."""


class PreconditionViolated(ValidationFailure):
    """Aggregate precondition (zero sum, admissibility) fails."""


class CapExceeded(RuntimeError):
    """Computation stopped because a configured resource cap was hit."""


class ClosureLimitExceeded(CapExceeded):
    """Generated set grew past the closure element cap."""


class OrderCapExceeded(CapExceeded):
    """Group order (or search size) exceeds the configured cap."""


class OracleCapExceeded(CapExceeded):
    """Cochain-complex oracle asked for more work than its cap allows."""


class IllDefined(ValueError):
    """Derived object does not exist for this input (e.g. a commutator
    pairing whose values depend on the choice of lift)."""


class NoExponentFound(LookupError):
    """Exhaustive exponent search ended without an admissible candidate."""
