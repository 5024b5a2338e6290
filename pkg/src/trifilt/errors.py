"""Exception types shared across the package."""


class TrifiltError(Exception):
    pass


class DegenerateInputError(TrifiltError):
    """Affinely dependent input where independence is required."""


class GeneralPositionError(TrifiltError):
    """Exactly detected degeneracy (cosphericity, duplicate point, on-facet
    query) that the perturbation step was supposed to rule out.  Re-running
    with a different perturbation seed usually clears it."""


class ParseError(TrifiltError):
    """Malformed input text; carries 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
