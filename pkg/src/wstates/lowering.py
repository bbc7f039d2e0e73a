"""Unitary-preserving rewrites from composite gates down to ROT + CNOT.

Levels descend COMPOSITE -> CZ_LEVEL -> ELEMENTARY.  Each pass rewrites
gates in place, preserving order; adjacent ROTs are deliberately not
merged, so a fully lowered F gate keeps the 4-plates-plus-CNOT structure
[ROT, ROT, CNOT, ROT, ROT] on its target wire.
"""
from __future__ import annotations

import math

from .gates import CNOT, CZ, Circuit, Gate, Level, ROT


def lower_f(g: Gate) -> list[Gate]:
    """F(c,t,alpha) = ROT(t,alpha/2) CZ(c,t) ROT(t,alpha/2), since
    R(b) Z R(b) = R(2b) on the control=1 block and R(b)**2 = I elsewhere."""
    if g.kind != "F":
        raise TypeError(f"lower_f expects an F gate, got {g.kind}")
    half = g.angle / 2.0
    return [ROT(g.target, half), CZ(g.control, g.target), ROT(g.target, half)]


def lower_cz(g: Gate) -> list[Gate]:
    """CZ(c,t) = ROT(t,pi/4) CNOT(c,t) ROT(t,pi/4), i.e. H X H = Z."""
    if g.kind != "CZ":
        raise TypeError(f"lower_cz expects a CZ gate, got {g.kind}")
    quarter = math.pi / 4
    return [ROT(g.target, quarter), CNOT(g.control, g.target), ROT(g.target, quarter)]


def _rewrite(circuit: Circuit, kind: str, rule, new_level: Level) -> Circuit:
    gates: list[Gate] = []
    for g in circuit.gates:
        if g.kind == kind:
            gates.extend(rule(g))
        else:
            gates.append(g)
    return Circuit(circuit.n_qubits, tuple(gates), new_level)


def lower(circuit: Circuit, target: Level) -> Circuit:
    """Rewrite the circuit down to the target level (pure; idempotent)."""
    if target > circuit.level:
        raise ValueError(
            f"invalid lowering: {circuit.level.name} cannot be raised "
            f"to {target.name}"
        )
    result = circuit
    if result.level == Level.COMPOSITE and target < Level.COMPOSITE:
        result = _rewrite(result, "F", lower_f, Level.CZ_LEVEL)
    if result.level == Level.CZ_LEVEL and target < Level.CZ_LEVEL:
        result = _rewrite(result, "CZ", lower_cz, Level.ELEMENTARY)
    return result
