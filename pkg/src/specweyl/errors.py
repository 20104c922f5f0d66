"""Exception hierarchy shared by all specweyl modules."""


class SpecweylError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SpecweylError):
    """Evaluation point outside the open interval of the model."""


class SingularEval(SpecweylError):
    """Potential evaluation hit an interior pole of a tabulated model."""


class SeedRegion(SpecweylError):
    """Seed requested outside the validity region of its template."""


class StepUnderflow(SpecweylError):
    """Adaptive integrator required a step below the minimum size."""


class NonFinite(SpecweylError):
    """A potential or solution value became non-finite during propagation."""


class DirichletCollision(SpecweylError):
    """z too close to a Dirichlet eigenvalue of the left sub-interval."""


class EigenvalueCollision(SpecweylError):
    """z too close to an eigenvalue of the full operator."""


class PoleError(SpecweylError):
    """log-Gamma evaluated at a nonpositive integer."""


class RangeError(SpecweylError):
    """Argument outside the validated range of a special function."""


class BranchError(SpecweylError):
    """z on the excluded branch cut (positive real axis)."""


class BracketFail(SpecweylError):
    """Oscillation counting and Wronskian sign changes disagree."""


class NotAnEigenvalue(SpecweylError):
    """The supplied value failed the eigenvalue tail-norm test."""


class TooFewEigenvalues(SpecweylError):
    """Not enough eigenvalues for a growth-exponent fit."""


class NonConvergent(SpecweylError):
    """Partial sums of a product/series correction failed a Cauchy test."""


class PoleHit(SpecweylError):
    """Product evaluated too close to one of its poles."""


class GridMismatch(SpecweylError):
    """Sampled function grid does not cover the required domain."""


class FrameMismatch(SpecweylError):
    """Two frames do not share base point and seed template."""


class NonSummable(SpecweylError):
    """Reweighted spectral mass exceeds the overflow budget."""
