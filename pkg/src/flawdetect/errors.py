"""Exception hierarchy shared by every stage of the pipeline."""


class FlawDetectError(Exception):
    """Base class for all errors raised by flawdetect."""


class PositionedError(FlawDetectError):
    """An error tied to a location in some input text."""

    def __init__(self, message, line=None, column=None, path=None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        super().__init__(str(self))

    def __str__(self):
        where = []
        if self.path:
            where.append(str(self.path))
        if self.line is not None:
            where.append(str(self.line))
            if self.column is not None:
                where.append(str(self.column))
        if where:
            return f"{':'.join(where)}: {self.message}"
        return self.message


class LexError(PositionedError):
    pass


class ParseError(PositionedError):
    pass


class ModelError(FlawDetectError):
    """Inconsistent design model (dangling references, cycles, duplicates)."""

    def __init__(self, message, diagnostics=()):
        self.diagnostics = tuple(diagnostics)
        super().__init__(message)


class FactsError(FlawDetectError):
    """A facts file does not match the schema."""


class MetricError(FlawDetectError):
    pass


class SpecError(FlawDetectError):
    """Invalid filter parameters (k=0, percentage out of range, a >= b...)."""


class FilterError(FlawDetectError):
    """A statistical filter was applied to a table too small to support it."""


class StrategySyntaxError(PositionedError):
    pass


class StrategyNameError(PositionedError):
    pass


class StrategyTypeError(PositionedError):
    pass


class NoStrategyError(FlawDetectError):
    """The selected flaw exists in the registry but ships no strategy."""


class TuneError(FlawDetectError):
    pass


class CorpusError(TuneError):
    pass
