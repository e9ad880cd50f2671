# arckit/errors.py
from typing import Optional


class ArckitError(Exception):
    """Base class for every error raised by arckit."""


class UnknownVertex(ArckitError):
    def __init__(self, vertex):
        super().__init__(f"unknown vertex: {vertex!r}")
        self.vertex = vertex


class PreconditionError(ArckitError):
    pass


class ModelMismatch(ArckitError):
    pass


class NormalizationFailed(ArckitError):
    pass


class SizeCapExceeded(ArckitError):
    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: {size} vertices exceeds cap {cap} (raise it with --cap)")
        self.size = size
        self.cap = cap


class InvalidJoin(ArckitError):
    pass


class PartitionGap(ArckitError):
    def __init__(self, u, vertices):
        super().__init__(f"I_{u} not partitioned by L/R at {sorted(vertices)}")
        self.u = u
        self.vertices = sorted(vertices)


class FixtureInvalid(ArckitError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        # the partly filled ClaimReport, when a verifier raised
        self.report = report


class ParseError(ArckitError):
    def __init__(self, message: str, line: Optional[int] = None, source: str = "<input>"):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.line = line


class ConfigError(ArckitError):
    pass
