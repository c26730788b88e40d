"""Exception hierarchy shared by every module of the engine."""


class AlgebraError(Exception):
    """Base class for all errors raised by the engine."""


class DistinctAlgebraError(AlgebraError):
    """Operands live in different superalgebras."""


class ParityError(AlgebraError):
    """A value has the wrong parity, or is not homogeneous where it must be."""


class IncompleteDerivationError(AlgebraError):
    """A superderivation has no image for a generator it is applied to."""


class IncompleteTableError(AlgebraError):
    """A bracket table has no entry for a generator pair."""


class InvalidConstantsError(AlgebraError):
    """Structure constants violate the required index symmetries."""


class NotPoissonError(AlgebraError):
    """A generator map is not compatible with the Poisson brackets."""


class UnvalidatedOreError(AlgebraError):
    """Ore data was used before passing validation."""


class UnknownSymbolError(AlgebraError):
    """A word contains a symbol outside the algebra's alphabet."""


class SpecError(AlgebraError):
    """Malformed input text; carries the 1-based line and column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"col {column}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)

    def at_line(self, line: int, offset: int = 0) -> "SpecError":
        col = None if self.column is None else self.column + offset
        return SpecError(self.message, line, col)
