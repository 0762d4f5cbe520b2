"""Shared exception types."""


class CzmorphError(Exception):
    """Base class for all toolkit errors."""


class AlphabetError(CzmorphError):
    """Bad alphabet declaration or unknown symbol/set."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, col {col}: {message}" if col is not None else f"line {line}: {message}"
        super().__init__(message)


class RuleError(CzmorphError):
    """Bad rule source or unresolvable atom."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, col {col}: {message}" if col is not None else f"line {line}: {message}"
        super().__init__(message)


class LexiconError(CzmorphError):
    """Bad lexicon source or dangling cross-reference."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PairStringError(CzmorphError):
    """A pair string used a pair that the alphabet does not declare feasible."""


class AnalyzerError(CzmorphError):
    """Unknown lemma or tag, or a bad form index file."""
