"""Exception types raised across the package."""


class AaidxError(Exception):
    """Base class for all package errors."""


class InputError(AaidxError):
    """An input file could not be parsed."""


class ValidationError(AaidxError):
    """Inputs parsed fine but violate a precondition."""


class MalformedRecord(InputError):
    def __init__(self, ordinal, reason):
        self.ordinal = ordinal
        self.reason = reason
        super().__init__(f"record {ordinal}: {reason}")


class SchemaError(InputError):
    def __init__(self, line, key):
        self.line = line
        self.key = key
        super().__init__(f"line {line}: missing or invalid key {key!r}")


class MissingYear(ValidationError):
    def __init__(self, year):
        self.year = year
        super().__init__(f"no ranking list for year {year}")


class TierNotSubset(ValidationError):
    pass


class DuplicateAlias(ValidationError):
    pass


class UnknownJournal(ValidationError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"journal not in corpus: {name!r}")


class EmptySample(ValidationError):
    pass


class NoAuthors(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class InsufficientData(ValidationError):
    pass


class InvalidSpec(ValidationError):
    pass


class DegenerateInput(RuntimeWarning):
    """Warning: a constant vector makes the rank correlation undefined."""
