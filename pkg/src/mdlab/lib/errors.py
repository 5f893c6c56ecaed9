"""
Exceptions raised by the library.

CLI translates the parameter-ish ones into usage errors (exit 2).
"""

from __future__ import annotations


class MdlabError(Exception):
    """Base for everything raised on purpose by mdlab."""


class ParameterError(MdlabError, ValueError):
    """A model parameter is outside of its allowed range."""


class ConfigParseError(MdlabError, ValueError):
    """A rational literal or configuration string could not be parsed."""


class StateCapExceeded(MdlabError):
    """Enumerating the requested state space would exceed the state cap."""

    def __init__(self, size: int, cap: int) -> None:
        super().__init__(f"State space of size {size:_} exceeds the cap of {cap:_}")
        self.size = size
        self.cap = cap


class DimensionMismatch(MdlabError, ValueError):
    """Operands of a matrix operation do not fit together."""


class TruncationError(MdlabError):
    """A truncated series cannot guarantee the requested accuracy."""


class GroundStateError(MdlabError):
    """The vacuum is not an eigenvector of the assembled Hamiltonian."""
