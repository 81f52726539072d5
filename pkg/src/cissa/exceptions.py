"""Error taxonomy shared across the toolkit.

Every failure the library raises deliberately derives from :class:`CissaError`,
so callers (and the CLI) can map exception classes onto stable error
categories. The class name is the category.
"""


class CissaError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParams(CissaError):
    """A parameter value or combination is outside its documented domain."""


class WindowOutOfRange(InvalidParams):
    """Window length L violates 1 < L < T/2 for the given series length."""


class NonFiniteInput(CissaError):
    """Input data contains NaN or infinite values."""


class EmptyMatrix(CissaError):
    """A matrix operand has a zero-sized dimension."""


class LagOutOfRange(CissaError):
    """Requested autocovariance lag is not smaller than the series length."""


class VariantMismatch(CissaError):
    """A second-moment matrix of the wrong variant was passed to a solver."""


class ConvergenceFailure(CissaError):
    """The iterative symmetric eigensolver failed to converge."""


class ZeroNorm(CissaError):
    """A weighted norm needed in a denominator is zero."""


class DegenerateRegressor(CissaError):
    """The regressor series has zero variance; the slope is undefined."""


class EmptyGrouping(CissaError):
    """A grouping defines no bands and no residual component."""


class NotMonthlyCompatible(CissaError):
    """Window length is not a multiple of 12, so monthly bands do not align."""


class FileNotFound(CissaError, FileNotFoundError):
    """Input file does not exist."""


class ColumnMissing(CissaError):
    """The requested column is absent or cannot be resolved unambiguously."""


class NonNumericCell(CissaError):
    """A data cell failed numeric parsing.

    Attributes
    ----------
    row, col : int
        Zero-based position of the offending cell in the data file
        (header excluded from the row count).
    """

    def __init__(self, row, col, content=""):
        self.row = row
        self.col = col
        self.content = content
        super().__init__(f"non-numeric cell at row {row}, column {col}: {content!r}")


class NonMonotoneDates(CissaError):
    """Date column values are not strictly increasing."""


class TooFewRows(CissaError):
    """The data file holds fewer rows than any decomposition can use."""


class IoFailure(CissaError):
    """An output file could not be written."""
