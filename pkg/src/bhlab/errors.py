"""Exception types shared across the package."""


class BHLabError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(BHLabError):
    """Segment matrix does not match the problem dimensions (lambda x k, lengths m_i)."""


class MalformedInput(BHLabError):
    """Input word does not follow the guardian/prisoner layout of the problem."""


class PromiseViolation(BHLabError):
    """A bit string is outside the domain of a partial function."""


class Infeasible(BHLabError):
    """Requested instance parameters cannot be realized (e.g. too many ones for the length)."""


class IndexOutOfRange(BHLabError, IndexError):
    """Qubit index outside the register."""


class NotBasisState(BHLabError):
    """Register operation requires a computational basis state."""


class OutputCountMismatch(BHLabError):
    """Online run emitted a different number of guardian bits than the problem demands."""


class MalformedTable(BHLabError):
    """Table algorithm transition/output tables are not total over states x {0,1,2}."""


class BranchLimitExceeded(BHLabError):
    """Exact enumeration would visit more branches than the configured cap."""


class SpaceTooLarge(BHLabError):
    """Brute-force search space exceeds the configured cap."""


class DomainError(BHLabError, ValueError):
    """Parameter outside its mathematical domain (e.g. error rate not in [0, 0.5))."""


class ReplayMismatch(BHLabError):
    """Recorded choice log does not match the choice points encountered on replay."""
