"""Exception types shared across the package."""


class CrmapsError(Exception):
    """Base class for all package errors."""


class PairingError(CrmapsError):
    """A variable has no conjugate partner in its table."""


class DivisionError(CrmapsError):
    """Division by an identically-zero denominator."""


class DegreeError(CrmapsError):
    """Pseudo-division by a polynomial that is constant in the chosen variable."""


class BranchError(CrmapsError):
    """Radicand vanishes (or has no exact square root) where a principal branch is needed."""


class PoleError(CrmapsError):
    """Evaluation or expansion at a pole."""


class ReductionUnsupported(CrmapsError):
    """On-variety reduction requested for a sampler-only hypersurface."""


class ParameterError(CrmapsError):
    """Automorphism or catalog parameters outside the admissible set."""


class NormalizationError(CrmapsError):
    """The normalization algorithm cannot proceed (non-transversal, non-immersive, ...)."""


class ContractError(CrmapsError):
    """An internal consistency contract was violated (verification said yes, algebra says no)."""
