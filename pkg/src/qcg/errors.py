"""Exception taxonomy shared across the package."""


class QcgError(Exception):
    """Base class for all library errors."""


class InputError(QcgError):
    """Invalid argument: bad vertex/arc id, bad parameter value."""


class StructureError(QcgError):
    """Graph violates a structural requirement (embedding, connectivity, layeredness)."""


class PreconditionError(QcgError):
    """Caller violated a documented operation precondition."""


class SizeError(QcgError):
    """Instance exceeds a configured size cap."""


class ContractError(QcgError):
    """A callback (e.g. a shock strategy) broke its contract."""


class InternalError(QcgError):
    """An invariant the construction guarantees failed; indicates a bug, never ignored."""


class ParseError(QcgError):
    """Malformed instance or cutset file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
