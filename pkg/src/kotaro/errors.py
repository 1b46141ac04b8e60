"""Exception types raised across the package.

Every error raised by kotaro code inherits from :class:`KotaroError`, so
callers (and the CLI) can catch one base class.
"""


class KotaroError(Exception):
    """Base class for all kotaro errors."""


class NDegenerateError(KotaroError):
    """Fewer than two samples where at least two are required."""


class BadNeighborCountError(KotaroError):
    """Neighbor count n outside the valid range 1 <= n < N."""


class SingleClassError(KotaroError):
    """Training data contains only one of the two labels."""


class DimensionMismatchError(KotaroError):
    """Query dimensionality does not match the trained feature space."""


class DegenerateGeometryError(KotaroError):
    """All pairwise neighbor distances are zero; no scale can be derived."""


class NonFiniteError(KotaroError):
    """Input contains NaN or infinite values."""


class ShapeMismatchError(KotaroError):
    """Array shapes are inconsistent with the operation's contract."""


class RejectionBudgetError(KotaroError):
    """Rejection sampling exhausted its attempt budget."""


class LengthMismatchError(KotaroError):
    """Two vectors that must have equal length do not."""


class InvalidLabelError(KotaroError):
    """A label value outside {-1, +1} was encountered."""


class ClassAbsentError(KotaroError):
    """A metric needs both truth classes but one is absent."""


class UndefinedMetricError(KotaroError):
    """Metric denominator is zero and no convention applies."""


class BadKError(KotaroError):
    """k outside the valid range 1 <= k <= N for k-NN."""


class TooFewMinorityError(KotaroError):
    """A class has fewer members than the requested fold count."""


class CrossValidationError(KotaroError):
    """A fold evaluation failed; the run is aborted, not skipped."""


class ParseError(KotaroError):
    """A file could not be parsed; message carries row/column context."""


class NonNumericFeatureError(ParseError):
    """A feature cell could not be parsed as a number."""


class MultipleNegativeValuesError(ParseError):
    """More than two distinct label values in the label column."""


class FormatVersionError(ParseError):
    """On-disk format version is missing or unsupported."""


class NotTwoDimensionalError(KotaroError):
    """Operation requires a 2-D model (boundary grids)."""
