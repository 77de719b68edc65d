"""Exception hierarchy shared by all spint modules."""


class SpintError(Exception):
    """Base class for all errors raised by spint."""


class SingularMatrixError(SpintError):
    """A pivot fell below the singularity threshold during elimination."""


class NotSymmetricError(SpintError):
    """A symmetric-only operation received a non-symmetric matrix."""


class NoConvergenceError(SpintError):
    """An iterative kernel (Jacobi sweep, SVD) did not converge."""


class NonFiniteEvaluationError(SpintError):
    """A function evaluation produced NaN or Inf."""


class OddLengthError(SpintError, ValueError):
    """A phase-space vector had odd length."""


class LengthMismatchError(SpintError, ValueError):
    """Two vectors that must have equal length did not."""


class ZeroInitialEnergyError(SpintError):
    """Relative energy drift is undefined when H(u0) == 0."""


class StageSolveError(SpintError):
    """The implicit stage equations could not be solved."""


class RankDeficientConstraintsError(SpintError):
    """Constraint gradients lost full rank."""


class SolveFailureError(SpintError):
    """The nonlinear step equations could not be solved."""


class MissingHistoryError(SpintError):
    """A two-step stencil was called without a previous configuration."""


class NonFiniteCoefficientError(SpintError):
    """A Taylor coefficient blew up to NaN/Inf."""


class DegenerateFitError(SpintError):
    """No usable Pade approximant exists at any admissible degree."""


class PoleOnPathError(SpintError):
    """A Pade pole sits too close to the Laplace integration path."""


class StepCollapseError(SpintError):
    """The adaptive step shrank to the minimum without meeting the residual target."""


class CollisionSingularityError(SpintError):
    """Two bodies approached closer than the collision threshold."""


class MismatchedProblemError(SpintError, ValueError):
    """Comparison requested across records of different problems."""


class IoFailureError(SpintError):
    """A record could not be written or read."""


class ValidationError(SpintError, ValueError):
    """A scenario or configuration failed validation."""
