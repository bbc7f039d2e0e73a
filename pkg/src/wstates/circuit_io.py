"""Reader and writer for the line-oriented "wcircuit v1" text format.

Layout (UTF-8, LF endings):

    wcircuit 1
    qubits <n>
    F <control> <target> <alpha>
    CNOT <control> <target>
    CZ <control> <target>
    ROT <qubit> <alpha>

Gate lines appear in application order with 1-based indices; angles are
decimal radians printed with 17 significant digits so floats round-trip
bit-exactly.  `#` starts a comment anywhere on a line; blank lines are
ignored.  Parsing is strict: unknown keywords, out-of-range indices,
missing or extra fields are hard errors.

The format carries no explicit lowering level; on parse the circuit gets
the most-lowered level consistent with its gate kinds (ELEMENTARY, then
CZ_LEVEL, then COMPOSITE).  Every circuit this package emits round-trips
with its level intact, since composite circuits contain F gates and
cz-level ones contain CZ gates.
"""
from __future__ import annotations

import math

from .errors import CircuitParseError
from .gates import ALLOWED_KINDS, Circuit, Gate, Level

_HEADER = "wcircuit"
_VERSION = "1"
_ARITY = {"F": 3, "CNOT": 2, "CZ": 2, "ROT": 2}


def serialize_circuit(circuit: Circuit) -> str:
    """Render a circuit as wcircuit v1 text (trailing newline included).

    ELEMENTARY circuits annotate each ROT line with the physical
    half-wave-plate angle alpha/2, the knob an experimenter actually sets.
    """
    plate_comments = circuit.level == Level.ELEMENTARY
    lines = [f"{_HEADER} {_VERSION}", f"qubits {circuit.n_qubits}"]
    for g in circuit.gates:
        if g.kind == "F":
            lines.append(f"F {g.control} {g.target} {g.angle:.17g}")
        elif g.kind == "ROT":
            line = f"ROT {g.target} {g.angle:.17g}"
            if plate_comments:
                line += f" # plate_angle_deg={math.degrees(g.angle / 2):.12g}"
            lines.append(line)
        else:
            lines.append(f"{g.kind} {g.control} {g.target}")
    return "\n".join(lines) + "\n"


def _infer_level(kinds: set[str]) -> Level:
    for level in (Level.ELEMENTARY, Level.CZ_LEVEL, Level.COMPOSITE):
        if kinds <= ALLOWED_KINDS[level]:
            return level
    raise CircuitParseError(f"gate kinds {sorted(kinds)} fit no lowering level")


def _parse_index(token: str, n: int, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise CircuitParseError(f"line {lineno}: bad qubit index {token!r}") from None
    if not 1 <= value <= n:
        raise CircuitParseError(
            f"line {lineno}: qubit index {value} outside [1, {n}]"
        )
    return value


def _parse_angle(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise CircuitParseError(f"line {lineno}: bad angle {token!r}") from None
    if not math.isfinite(value):
        raise CircuitParseError(f"line {lineno}: angle must be finite")
    return value


def parse_circuit(text: str) -> Circuit:
    """Parse wcircuit v1 text into a Circuit.  Strict; raises CircuitParseError."""
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))

    if not rows:
        raise CircuitParseError("empty document")
    lineno, header = rows[0]
    if header != [_HEADER, _VERSION]:
        raise CircuitParseError(
            f"line {lineno}: expected '{_HEADER} {_VERSION}' header"
        )
    if len(rows) < 2 or rows[1][1][0] != "qubits":
        raise CircuitParseError("missing 'qubits <n>' line")
    lineno, qubits_row = rows[1]
    if len(qubits_row) != 2:
        raise CircuitParseError(f"line {lineno}: 'qubits' takes one field")
    try:
        n = int(qubits_row[1])
    except ValueError:
        raise CircuitParseError(
            f"line {lineno}: bad qubit count {qubits_row[1]!r}"
        ) from None
    if n < 2:
        raise CircuitParseError(f"line {lineno}: need at least 2 qubits")

    gates = []
    for lineno, tokens in rows[2:]:
        kind = tokens[0]
        if kind not in _ARITY:
            raise CircuitParseError(f"line {lineno}: unknown keyword {kind!r}")
        if len(tokens) - 1 != _ARITY[kind]:
            raise CircuitParseError(
                f"line {lineno}: {kind} takes {_ARITY[kind]} fields, "
                f"got {len(tokens) - 1}"
            )
        try:
            if kind == "ROT":
                gate = Gate(
                    "ROT",
                    _parse_index(tokens[1], n, lineno),
                    None,
                    _parse_angle(tokens[2], lineno),
                )
            else:
                control = _parse_index(tokens[1], n, lineno)
                target = _parse_index(tokens[2], n, lineno)
                angle = _parse_angle(tokens[3], lineno) if kind == "F" else None
                gate = Gate(kind, target, control, angle)
        except CircuitParseError:
            raise
        except ValueError as exc:
            raise CircuitParseError(f"line {lineno}: {exc}") from None
        gates.append(gate)

    level = _infer_level({g.kind for g in gates})
    return Circuit(n, tuple(gates), level)


def load_circuit(path) -> Circuit:
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh.read())


def save_circuit(circuit: Circuit, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_circuit(circuit))
