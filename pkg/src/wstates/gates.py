"""Gates, circuits, exact gate matrices, and a brute-force unitary oracle.

Conventions:
  Qubit indices are 1-based spatial modes.  Mode 1 is the most significant
  bit of a basis index; H polarization encodes bit 0 and V encodes bit 1,
  so the basis index of an n-mode ket is sum(bit_i * 2**(n - i)).
  The single-qubit rotation is the real reflection

      R(alpha) = [[cos(alpha),  sin(alpha)],
                  [sin(alpha), -cos(alpha)]]

  with R(0) = Z, R(pi/4) = Hadamard, R(pi/2) = X, and R(alpha)**2 = I for
  every alpha.  F(control, target, alpha) applies R(alpha) on the target
  inside the control=1 sector and is the identity elsewhere.  Two-qubit
  matrices are written in basis order |00>, |01>, |10>, |11> with the
  control as the left bit.  Every matrix in this gate set is real.

  Gate lists are in application order (first gate applied first): the
  left-to-right order of a bench diagram, i.e. the reverse of
  operator-product notation.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError

GATE_KINDS = ("F", "CNOT", "CZ", "ROT")
TWO_QUBIT_KINDS = frozenset({"F", "CNOT", "CZ"})
ANGLED_KINDS = frozenset({"F", "ROT"})

UNITARY_QUBIT_CAP = 10


class Level(enum.IntEnum):
    """Lowering levels, ordered ELEMENTARY < CZ_LEVEL < COMPOSITE."""

    ELEMENTARY = 0
    CZ_LEVEL = 1
    COMPOSITE = 2


ALLOWED_KINDS = {
    Level.COMPOSITE: frozenset({"F", "CNOT"}),
    Level.CZ_LEVEL: frozenset({"ROT", "CZ", "CNOT"}),
    Level.ELEMENTARY: frozenset({"ROT", "CNOT"}),
}


@dataclass(frozen=True, slots=True)
class Gate:
    """One gate: kind, 1-based wire indices, and a mixing angle for F/ROT."""

    kind: str
    target: int
    control: int | None = None
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.target < 1:
            raise ValueError("qubit indices are 1-based")
        if self.kind == "ROT":
            if self.control is not None:
                raise ValueError("ROT takes no control qubit")
        else:
            if self.control is None:
                raise ValueError(f"{self.kind} requires a control qubit")
            if self.control < 1:
                raise ValueError("qubit indices are 1-based")
            if self.control == self.target:
                raise ValueError("control and target must differ")
        if self.kind in ANGLED_KINDS:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"{self.kind} requires a finite angle")
        elif self.angle is not None:
            raise ValueError(f"{self.kind} carries no angle")

    @property
    def qubits(self) -> tuple[int, ...]:
        """Wires touched, control first."""
        if self.control is None:
            return (self.target,)
        return (self.control, self.target)


def F(control: int, target: int, alpha: float) -> Gate:
    return Gate("F", target, control, float(alpha))


def CNOT(control: int, target: int) -> Gate:
    return Gate("CNOT", target, control)


def CZ(control: int, target: int) -> Gate:
    return Gate("CZ", target, control)


def ROT(qubit: int, alpha: float) -> Gate:
    return Gate("ROT", qubit, None, float(alpha))


@dataclass(frozen=True, slots=True, repr=False)
class Circuit:
    """Ordered gate list over n_qubits wires at a declared lowering level."""

    n_qubits: int
    gates: tuple[Gate, ...]
    level: Level

    def __post_init__(self):
        if not isinstance(self.gates, tuple):
            object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 2:
            raise ValueError("circuits need at least 2 qubits")
        allowed = ALLOWED_KINDS[self.level]
        n = self.n_qubits
        for g in self.gates:
            if g.kind not in allowed:
                raise ValueError(
                    f"{g.kind} gate not allowed at level {self.level.name}"
                )
            if g.target > n or (g.control is not None and g.control > n):
                raise ValueError(f"gate {g} exceeds {n} qubits")

    def __repr__(self):
        return (
            f"Circuit(n_qubits={self.n_qubits}, level={self.level.name}, "
            f"gates=<{len(self.gates)}>)"
        )

    def gate_counts(self) -> dict[str, int]:
        counts = dict.fromkeys(GATE_KINDS, 0)
        for g in self.gates:
            counts[g.kind] += 1
        return {k: v for k, v in counts.items() if v}


def rotation_matrix(alpha: float) -> np.ndarray:
    """R(alpha): symmetric, orthogonal, involutory 2x2 reflection."""
    if not math.isfinite(alpha):
        raise ValueError("rotation angle must be finite")
    c, s = math.cos(alpha), math.sin(alpha)
    return np.array([[c, s], [s, -c]])


def gate_matrix(g: Gate) -> np.ndarray:
    """Exact matrix of one gate: 2x2 for ROT, 4x4 otherwise."""
    if g.kind == "ROT":
        return rotation_matrix(g.angle)
    if g.kind == "CNOT":
        return np.array(
            [[1.0, 0, 0, 0], [0, 1.0, 0, 0], [0, 0, 0, 1.0], [0, 0, 1.0, 0]]
        )
    if g.kind == "CZ":
        return np.diag([1.0, 1.0, 1.0, -1.0])
    m = np.eye(4)
    m[2:, 2:] = rotation_matrix(g.angle)
    return m


def _embed(matrix: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    """Embed a 2x2 or 4x4 gate matrix into the full 2**n space.

    full[row, col] = matrix[sub_out, sub_in] whenever row and col agree on
    all wires the gate does not touch.
    """
    dim = 1 << n
    k = len(qubits)
    shifts = [n - q for q in qubits]
    cols = np.arange(dim, dtype=np.int64)
    sub_in = np.zeros(dim, dtype=np.int64)
    base = cols.copy()
    for sh in shifts:
        sub_in = (sub_in << 1) | ((cols >> sh) & 1)
        base &= ~(1 << sh)
    full = np.zeros((dim, dim))
    for sub_out in range(1 << k):
        rows = base.copy()
        for j, sh in enumerate(shifts):
            if (sub_out >> (k - 1 - j)) & 1:
                rows |= 1 << sh
        full[rows, cols] = matrix[sub_out, sub_in]
    return full


def unitary_of(circuit: Circuit, max_qubits: int = UNITARY_QUBIT_CAP) -> np.ndarray:
    """Full 2**n x 2**n matrix of the circuit, first gate rightmost.

    Brute-force product of embedded gate matrices; kept independent of the
    simulator backends so the two can cross-check each other.
    """
    n = circuit.n_qubits
    if n > max_qubits:
        raise CapacityError(
            f"unitary oracle capped at {max_qubits} qubits (got {n})"
        )
    u = np.eye(1 << n)
    for g in circuit.gates:
        u = _embed(gate_matrix(g), g.qubits, n) @ u
    return u
