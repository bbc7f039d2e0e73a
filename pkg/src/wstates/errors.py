"""Shared exception types."""


class CapacityError(RuntimeError):
    """A backend or oracle was asked to handle more qubits than its cap."""


class CircuitParseError(ValueError):
    """A wcircuit v1 document is malformed."""
