"""Dense and sparse statevector execution for real-valued circuits.

Dense states are float64 arrays of length 2**n (mode 1 = most significant
bit), good to DENSE_QUBIT_CAP qubits.  Sparse states map basis index ->
amplitude and hold only nonzero entries; the W-preparation family never
exceeds n simultaneous nonzeros, so sparse runs scale to thousands of
qubits.  Amplitudes are real by construction (every gate matrix is real),
so no complex storage exists anywhere.

During a sparse run the engine keeps a private scratch: a (n_qubits x
support) bit matrix plus an amplitude vector.  A CNOT is then one row XOR,
a CZ one masked sign flip, and only the mixing gates (ROT, F) need pair
matching.  States are converted back to plain index->amplitude mappings at
API boundaries; amplitudes below the prune threshold are dropped after
each mixing gate (with this circuit family that only ever removes
numerically-zero residue).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .gates import Circuit, Gate

DENSE_QUBIT_CAP = 24
SPARSE_QUBIT_CAP = 10000
AUTO_DENSE_MAX = 20
PRUNE_THRESHOLD = 1e-15
_NORM_GUARD = 1e-9


def bits_of(index: int, n: int) -> str:
    """Render a basis index as an n-character 0/1 string, mode 1 leftmost."""
    return format(index, f"0{n}b")


def encode_bits(bits: str) -> int:
    """Basis index of an 'H'/'V' (or '0'/'1') string, mode 1 leftmost."""
    index = 0
    for ch in bits:
        if ch in "H0":
            index <<= 1
        elif ch in "V1":
            index = (index << 1) | 1
        else:
            raise ValueError(f"bad polarization character {ch!r}")
    return index


def pick_backend(n: int, auto_threshold: int = AUTO_DENSE_MAX) -> str:
    return "dense" if n <= auto_threshold else "sparse"


@dataclass(frozen=True, slots=True, eq=False, repr=False)
class QuantumState:
    """Real amplitudes over the n-qubit computational basis.

    amplitudes is a dict {basis index: amplitude} for the sparse backend or
    a float64 array of length 2**n for the dense backend.  Instances are
    immutable snapshots: dense arrays are adopted and marked read-only,
    sparse mappings are copied with zero entries dropped.
    """

    n: int
    amplitudes: dict | np.ndarray
    backend: str

    def __post_init__(self):
        if self.backend == "dense":
            arr = np.ascontiguousarray(self.amplitudes, dtype=np.float64)
            if arr.shape != (1 << self.n,):
                raise ValueError("dense amplitude array has wrong length")
            arr.setflags(write=False)
            object.__setattr__(self, "amplitudes", arr)
        elif self.backend == "sparse":
            bound = 1 << self.n
            items = {}
            for k, v in self.amplitudes.items():
                k = int(k)
                if not 0 <= k < bound:
                    raise ValueError(f"basis index {k} does not fit {self.n} qubits")
                if v != 0.0:
                    items[k] = float(v)
            object.__setattr__(self, "amplitudes", items)
        else:
            raise ValueError(f"unknown backend {self.backend!r}")
        if abs(self.norm_squared() - 1.0) > _NORM_GUARD:
            raise ValueError("state is not normalized")

    def __repr__(self):
        return (
            f"QuantumState(n={self.n}, backend={self.backend!r}, "
            f"support={self.support_size()})"
        )

    def amplitude(self, index: int) -> float:
        if self.backend == "dense":
            return float(self.amplitudes[index])
        return self.amplitudes.get(index, 0.0)

    def items(self):
        """Nonzero (basis index, amplitude) pairs."""
        if self.backend == "dense":
            for i in np.flatnonzero(self.amplitudes):
                yield int(i), float(self.amplitudes[i])
        else:
            yield from self.amplitudes.items()

    def support_size(self) -> int:
        if self.backend == "dense":
            return int(np.count_nonzero(self.amplitudes))
        return len(self.amplitudes)

    def norm_squared(self) -> float:
        if self.backend == "dense":
            return float(np.dot(self.amplitudes, self.amplitudes))
        return math.fsum(v * v for v in self.amplitudes.values())

    def to_dense(self, dense_cap: int = DENSE_QUBIT_CAP) -> "QuantumState":
        if self.backend == "dense":
            return self
        if self.n > dense_cap:
            raise CapacityError(
                f"dense storage capped at {dense_cap} qubits (got {self.n})"
            )
        vec = np.zeros(1 << self.n)
        for k, v in self.amplitudes.items():
            vec[k] = v
        return QuantumState(self.n, vec, "dense")

    def to_sparse(self) -> "QuantumState":
        if self.backend == "sparse":
            return self
        return QuantumState(self.n, dict(self.items()), "sparse")


def basis_state(
    n: int, bits: str, backend: str = "auto", dense_cap: int = DENSE_QUBIT_CAP
) -> QuantumState:
    """Computational basis state |bits>, e.g. basis_state(3, "VHH")."""
    if len(bits) != n:
        raise ValueError(f"expected {n} characters, got {len(bits)}")
    index = encode_bits(bits)
    if backend == "auto":
        backend = pick_backend(n)
    if backend == "dense":
        if n > dense_cap:
            raise CapacityError(
                f"dense storage capped at {dense_cap} qubits (got {n})"
            )
        vec = np.zeros(1 << n)
        vec[index] = 1.0
        return QuantumState(n, vec, "dense")
    return QuantumState(n, {index: 1.0}, "sparse")


def w_reference(n: int) -> QuantumState:
    """The n-qubit target: amplitude 1/sqrt(n) on each single-V basis state."""
    if n < 2:
        raise ValueError(f"reference state needs n >= 2, got {n}")
    amp = 1.0 / math.sqrt(n)
    return QuantumState(n, {1 << (n - k): amp for k in range(1, n + 1)}, "sparse")


def fidelity(a: QuantumState, b: QuantumState) -> float:
    """|<a|b>|**2; symmetric, 1 for identical normalized states."""
    if a.n != b.n:
        raise ValueError(f"state sizes differ: {a.n} vs {b.n}")
    if a.backend == "dense" and b.backend == "dense":
        overlap = float(np.dot(a.amplitudes, b.amplitudes))
    else:
        sp, other = (a, b) if a.backend == "sparse" else (b, a)
        if other.backend == "sparse" and len(other.amplitudes) < len(sp.amplitudes):
            sp, other = other, sp
        overlap = math.fsum(
            v * other.amplitude(k) for k, v in sp.amplitudes.items()
        )
    return overlap * overlap


# --- dense engine ---------------------------------------------------------

def _ix(n: int, fixes: tuple[tuple[int, int], ...]):
    idx: list = [slice(None)] * n
    for qubit, bit in fixes:
        idx[qubit - 1] = bit
    return tuple(idx)


def _dense_apply(t: np.ndarray, g: Gate, n: int) -> None:
    kind = g.kind
    if kind == "CNOT":
        i10 = _ix(n, ((g.control, 1), (g.target, 0)))
        i11 = _ix(n, ((g.control, 1), (g.target, 1)))
        tmp = t[i10].copy()
        t[i10] = t[i11]
        t[i11] = tmp
    elif kind == "CZ":
        t[_ix(n, ((g.control, 1), (g.target, 1)))] *= -1.0
    else:  # ROT or F: mix the target-bit pair, F only in the control=1 sector
        if kind == "F":
            i0 = _ix(n, ((g.control, 1), (g.target, 0)))
            i1 = _ix(n, ((g.control, 1), (g.target, 1)))
        else:
            i0 = _ix(n, ((g.target, 0),))
            i1 = _ix(n, ((g.target, 1),))
        c, s = math.cos(g.angle), math.sin(g.angle)
        a0 = t[i0].copy()
        t[i0] = c * a0 + s * t[i1]
        t[i1] = s * a0 - c * t[i1]


def _run_dense(vec: np.ndarray, gates, n: int, check_norm: bool) -> None:
    t = vec.reshape((2,) * n)
    for g in gates:
        _dense_apply(t, g, n)
        if check_norm:
            norm_sq = float(np.dot(vec, vec))
            if abs(norm_sq - 1.0) > 1e-10:
                raise RuntimeError(f"norm drifted to {norm_sq!r} after {g}")


# --- sparse engine --------------------------------------------------------

class _SparseEngine:
    """Run-private scratch: bit matrix (n x capacity) + amplitude vector."""

    def __init__(self, n: int, items: dict, prune: float):
        self.n = n
        self.prune = prune
        self.m = len(items)
        cap = max(2 * self.m, 16)
        self.bits = np.zeros((n, cap), dtype=np.uint8)
        self.amps = np.zeros(cap)
        width = (n + 7) // 8
        pad = 8 * width - n
        for i, (key, val) in enumerate(items.items()):
            raw = np.frombuffer(int(key).to_bytes(width, "big"), dtype=np.uint8)
            self.bits[:, i] = np.unpackbits(raw)[pad:]
            self.amps[i] = val

    def _grow(self, needed: int) -> None:
        cap = self.amps.shape[0]
        if needed <= cap:
            return
        new_cap = max(2 * cap, needed)
        bits = np.zeros((self.n, new_cap), dtype=np.uint8)
        amps = np.zeros(new_cap)
        bits[:, : self.m] = self.bits[:, : self.m]
        amps[: self.m] = self.amps[: self.m]
        self.bits, self.amps = bits, amps

    def _compact(self) -> None:
        m = self.m
        live = np.abs(self.amps[:m]) >= self.prune
        if live.all():
            return
        k = int(live.sum())
        self.bits[:, :k] = self.bits[:, :m][:, live]
        self.amps[:k] = self.amps[:m][live]
        self.m = k

    def _mix(self, control: int | None, target: int, alpha: float) -> None:
        m = self.m
        if control is None:
            idxs = np.arange(m)
        else:
            idxs = np.flatnonzero(self.bits[control - 1, :m])
            if idxs.size == 0:
                return
        c, s = math.cos(alpha), math.sin(alpha)
        sub = self.bits[:, idxs]
        tvals = sub[target - 1].copy()
        sub[target - 1] = 0
        keys = np.ascontiguousarray(sub.T)
        # Sector = all untouched bits; each sector holds at most two rows
        # (target bit 0 and 1), mixed by R(alpha).
        sectors: dict[bytes, list[int]] = {}
        order: list[list[int]] = []
        for j in range(idxs.size):
            key = keys[j].tobytes()
            slot = sectors.get(key)
            if slot is None:
                slot = [-1, -1]
                sectors[key] = slot
                order.append(slot)
            slot[int(tvals[j])] = int(idxs[j])
        appends: list[tuple[int, int, float]] = []
        for i0, i1 in order:
            a0 = self.amps[i0] if i0 >= 0 else 0.0
            a1 = self.amps[i1] if i1 >= 0 else 0.0
            b0 = c * a0 + s * a1
            b1 = s * a0 - c * a1
            if i0 >= 0:
                self.amps[i0] = b0
            elif abs(b0) >= self.prune:
                appends.append((i1, 0, b0))
            if i1 >= 0:
                self.amps[i1] = b1
            elif abs(b1) >= self.prune:
                appends.append((i0, 1, b1))
        if appends:
            self._grow(self.m + len(appends))
            for src, tbit, amp in appends:
                i = self.m
                self.bits[:, i] = self.bits[:, src]
                self.bits[target - 1, i] = tbit
                self.amps[i] = amp
                self.m = i + 1
        self._compact()

    def apply(self, g: Gate) -> None:
        m = self.m
        if g.kind == "CNOT":
            self.bits[g.target - 1, :m] ^= self.bits[g.control - 1, :m]
        elif g.kind == "CZ":
            both = (self.bits[g.control - 1, :m] & self.bits[g.target - 1, :m]) != 0
            if both.any():
                self.amps[:m][both] *= -1.0
        elif g.kind == "ROT":
            self._mix(None, g.target, g.angle)
        else:
            self._mix(g.control, g.target, g.angle)

    def norm_squared(self) -> float:
        a = self.amps[: self.m]
        return float(np.dot(a, a))

    def run(self, gates, check_norm: bool) -> None:
        for g in gates:
            self.apply(g)
            if check_norm:
                norm_sq = self.norm_squared()
                if abs(norm_sq - 1.0) > 1e-10:
                    raise RuntimeError(f"norm drifted to {norm_sq!r} after {g}")

    def to_items(self) -> dict[int, float]:
        m = self.m
        pad = (-self.n) % 8
        packed = np.packbits(self.bits[:, :m], axis=0)
        out = {}
        for i in range(m):
            key = int.from_bytes(packed[:, i].tobytes(), "big") >> pad
            out[key] = float(self.amps[i])
        return out


# --- public execution API -------------------------------------------------

def run(
    circuit: Circuit,
    state: QuantumState,
    *,
    backend: str | None = None,
    dense_cap: int = DENSE_QUBIT_CAP,
    sparse_cap: int = SPARSE_QUBIT_CAP,
    auto_threshold: int = AUTO_DENSE_MAX,
    prune: float = PRUNE_THRESHOLD,
    check_norm: bool = False,
) -> QuantumState:
    """Apply the circuit's gates in list order to the input state.

    backend None keeps the input's backend; "auto" picks dense for
    n <= auto_threshold, sparse above.  Deterministic: identical inputs
    give bit-identical outputs.
    """
    if circuit.n_qubits != state.n:
        raise ValueError(
            f"circuit has {circuit.n_qubits} qubits, state has {state.n}"
        )
    n = state.n
    chosen = backend or state.backend
    if chosen == "auto":
        chosen = pick_backend(n, auto_threshold)
    if chosen == "dense":
        if n > dense_cap:
            raise CapacityError(
                f"dense backend capped at {dense_cap} qubits (got {n})"
            )
        vec = state.to_dense(dense_cap).amplitudes.copy()
        _run_dense(vec, circuit.gates, n, check_norm)
        return QuantumState(n, vec, "dense")
    if chosen != "sparse":
        raise ValueError(f"unknown backend {chosen!r}")
    if n > sparse_cap:
        raise CapacityError(
            f"sparse backend capped at {sparse_cap} qubits (got {n})"
        )
    engine = _SparseEngine(n, dict(state.items()), prune)
    engine.run(circuit.gates, check_norm)
    return QuantumState(n, engine.to_items(), "sparse")


def apply_gate(state: QuantumState, gate: Gate) -> QuantumState:
    """Apply a single gate, staying on the state's backend."""
    if gate.target > state.n or (gate.control is not None and gate.control > state.n):
        raise ValueError(f"gate {gate} exceeds {state.n} qubits")
    if state.backend == "dense":
        vec = state.amplitudes.copy()
        _run_dense(vec, (gate,), state.n, check_norm=False)
        return QuantumState(state.n, vec, "dense")
    engine = _SparseEngine(state.n, state.amplitudes, PRUNE_THRESHOLD)
    engine.apply(gate)
    return QuantumState(state.n, engine.to_items(), "sparse")


def dump_state(state: QuantumState) -> str:
    """Text dump: '<bitstring> <amplitude>' per nonzero entry, sorted by
    descending |amplitude| then bitstring; 17 significant digits."""
    entries = [(bits_of(k, state.n), v) for k, v in state.items()]
    entries.sort(key=lambda e: (-abs(e[1]), e[0]))
    return "".join(f"{b} {v:.17g}\n" for b, v in entries)
