"""Exception hierarchy for the gaq package.

``GaqError`` is the base of everything raised deliberately by this library.
``ParseError`` marks malformed input files and is reported separately by the
CLI (exit code 2); every other ``GaqError`` is an algorithm/domain failure
(exit code 3).
"""


class GaqError(Exception):
    """Base class for all errors raised by gaq."""


class ParseError(GaqError):
    """An input file could not be parsed. Carries path and 1-based line number."""

    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        super().__init__(f"{self.path}:{line}: {message}")


# -- graph construction ------------------------------------------------------

class DisconnectedGraph(GaqError):
    """The graph is not a single connected component (or has an isolated node)."""


class NegativeWeight(GaqError):
    """An edge weight is negative."""


class SelfLoop(GaqError):
    """A self-loop edge was supplied."""


class NodeIdOutOfRange(GaqError):
    """An edge endpoint is outside [0, n)."""


class InvalidDimension(GaqError):
    """Requested spectral dimension is out of range for the graph/mode."""


class ZeroSignal(GaqError):
    """A bandwidth estimate was requested for the all-zero signal."""


# -- covariates --------------------------------------------------------------

class NonFiniteCovariate(GaqError):
    """Covariate matrix contains NaN or infinite entries."""


class ZeroCovariateColumn(GaqError):
    """Covariate matrix contains an all-zero column."""


class RankZero(GaqError):
    """All singular values of the band-projected covariates fall below tolerance."""


# -- informativeness ---------------------------------------------------------

class EmptyActiveSet(GaqError):
    """Every node is already queried; no active node remains."""


class DegenerateCovariates(GaqError):
    """Covariate rows on the active set span nothing (rank zero)."""


# -- representative sampling -------------------------------------------------

class EpsilonOutOfRange(GaqError):
    """epsilon must satisfy 0 < epsilon < 1/m."""


class InvalidBudget(GaqError):
    """Budget must be a positive count (and at most n where applicable)."""


class BarrierViolated(GaqError):
    """An eigenvalue of the accumulated covariance left the (l, u) bracket."""


class BudgetExhausted(GaqError):
    """apply_selection called with no budget left."""


class BudgetExceedsN(GaqError):
    """Requested more distinct nodes than the graph has."""


# -- recovery ----------------------------------------------------------------

class NonFiniteResponse(GaqError):
    """A labeled response is NaN or infinite."""


class DimensionMismatch(GaqError):
    """Model coefficients do not match the covariate basis."""


class EmptyMask(GaqError):
    """The evaluation mask selects no nodes."""


# -- synthetic generation ----------------------------------------------------

class GenerationFailed(GaqError):
    """A random graph never came out connected within the retry budget."""


class IndexRangeInvalid(GaqError):
    """An eigenbasis index range is outside [1, n] or empty."""
