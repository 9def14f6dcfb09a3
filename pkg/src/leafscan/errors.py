# -*- coding: utf-8 -*-


class LeafscanError(ValueError):
    pass


class UnsupportedFormatError(LeafscanError):
    pass


class CorruptFileError(LeafscanError):
    pass


class ZeroDimensionError(LeafscanError):
    pass


class DegenerateHistogramError(LeafscanError):
    pass


class DimensionMismatchError(LeafscanError):
    pass


class TooFewPointsError(LeafscanError):
    pass


class NonFiniteInputError(LeafscanError):
    pass


class EmptyForegroundError(LeafscanError):
    pass


class EmptyLeafError(LeafscanError):
    pass


class EmptyInputError(LeafscanError):
    pass


class ShapeMismatchError(LeafscanError):
    pass


class EmptyHistogramError(LeafscanError):
    pass


class AnalysisError(LeafscanError):
    """
    Error raised by the analysis pipeline, annotated with the stage that failed.

    Attributes:
        stage (str): pipeline stage name, e.g. "decode" or "segment".
        message (str): message of the underlying error.
    """

    def __init__(self, stage: str, message: str) -> None:
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.message = message
