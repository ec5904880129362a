"""Error types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the operation's domain (empty set, bad range,
    missing second path, node not in the pair)."""


class ConfigurationError(ValueError):
    """A scenario or topology is incomplete, e.g. a node without a position."""


class SchemaError(ValueError):
    """A scenario file does not match the documented JSON schema.

    The message carries a dotted JSON path to the offending field.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class ConsistencyError(RuntimeError):
    """An internal cross-check failed.

    Raised when two routes that must agree (a period scan and a clique
    computation, a constructed schedule and its target period) disagree.
    This always indicates a bug, never bad user input.
    """
