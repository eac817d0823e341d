"""Circuit intermediate representation and reversible-network analyses.

Gates carry explicit control and target sets plus an optional dyadic angle.
JSON accepts either {"name", "qubits": [...]} with positional meaning or
explicit {"controls": [...], "targets": [...]}. Qubit 0 is the most
significant bit of a basis index.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .phase import PI, DyadicPhase, parse_phase
from .exact import DEFAULT_M, ExactMatrix, ExactScalar, mat_mul
from .monomial import MonomialGate
from .diagonal import controlled_phase_gate


class CircuitError(ValueError):
    pass


# name -> (#controls, #targets, takes_angle); None means variadic
_GATE_ARITY = {
    "H": (0, 1, False),
    "S": (0, 1, False),
    "SDG": (0, 1, False),
    "T": (0, 1, False),
    "TDG": (0, 1, False),
    "X": (0, 1, False),
    "Y": (0, 1, False),
    "Z": (0, 1, False),
    "ZROT": (0, 1, True),
    "CNOT": (1, 1, False),
    "CX": (1, 1, False),
    "CZ": (0, 2, False),
    "CS": (0, 2, False),
    "CSDG": (0, 2, False),
    "CCZ": (0, 3, False),
    "CCX": (2, 1, False),
    "TOFFOLI": (2, 1, False),
    "MCX": (None, 1, False),
    "CPHASE": (0, None, True),
    "SWAP": (0, 2, False),
}

PERMUTATION_GATES = {"X", "CNOT", "CX", "CCX", "TOFFOLI", "MCX", "SWAP"}
MCX_GATES = {"X", "CNOT", "CX", "CCX", "TOFFOLI", "MCX"}
CLIFFORD_GATES = {"H", "S", "SDG", "CNOT", "CX", "CZ", "X", "Y", "Z", "SWAP"}
DIAGONAL_GATES = {"S", "SDG", "T", "TDG", "Z", "ZROT", "CZ", "CS", "CSDG", "CCZ", "CPHASE"}
MONOMIAL_GATES = PERMUTATION_GATES | DIAGONAL_GATES | {"Y"}


@dataclass(frozen=True)
class Gate:
    name: str
    controls: tuple[int, ...] = ()
    targets: tuple[int, ...] = ()
    angle: DyadicPhase | None = None

    @classmethod
    def make(cls, name: str, qubits: tuple[int, ...], angle: DyadicPhase | None = None) -> "Gate":
        name = name.upper()
        if name not in _GATE_ARITY:
            raise CircuitError(f"unknown gate name {name!r}")
        nc, nt, takes_angle = _GATE_ARITY[name]
        qubits = tuple(int(q) for q in qubits)
        if name == "MCX":
            if len(qubits) < 1:
                raise CircuitError("MCX needs at least a target")
            controls, targets = qubits[:-1], qubits[-1:]
        elif name == "CPHASE":
            controls, targets = (), qubits
        else:
            if len(qubits) != nc + nt:
                raise CircuitError(f"{name} takes {nc + nt} qubits, got {len(qubits)}")
            controls, targets = qubits[:nc], qubits[nc:]
        if takes_angle:
            if angle is None:
                raise CircuitError(f"{name} requires an angle")
        elif angle is not None:
            raise CircuitError(f"{name} does not take an angle")
        if len(set(controls + targets)) != len(controls + targets):
            raise CircuitError(f"{name} has repeated qubits {qubits}")
        return cls(name, controls, targets, angle)

    def all_qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets

    def support(self) -> frozenset[int]:
        return frozenset(self.controls) | frozenset(self.targets)

    def to_json(self) -> dict:
        out = {"name": self.name, "qubits": list(self.all_qubits())}
        if self.angle is not None:
            out["angle"] = self.angle.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Gate":
        name = str(data["name"]).upper()
        angle = parse_phase(data["angle"]) if "angle" in data else None
        if "qubits" in data:
            return cls.make(name, tuple(data["qubits"]), angle)
        controls = tuple(data.get("controls", ()))
        targets = tuple(data.get("targets", ()))
        return cls.make(name, controls + targets, angle)


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...]

    def __init__(self, n: int, gates):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "gates", tuple(gates))
        for g in self.gates:
            for q in g.all_qubits():
                if not 0 <= q < self.n:
                    raise CircuitError(f"qubit {q} out of range for n={self.n}")

    def to_json(self) -> dict:
        return {"qubits": self.n, "gates": [g.to_json() for g in self.gates]}

    @classmethod
    def from_json(cls, data: dict) -> "Circuit":
        try:
            n = int(data["qubits"])
            gates = [Gate.from_json(g) for g in data["gates"]]
        except KeyError as exc:
            raise CircuitError(f"circuit JSON missing key {exc}") from exc
        return cls(n, gates)


def _bit(n: int, q: int) -> int:
    return 1 << (n - 1 - q)


def gate_monomial(gate: Gate, n: int) -> MonomialGate:
    """The gate as a monomial matrix; raises for non-monomial gates."""
    name = gate.name
    dim = 1 << n
    if name in MCX_GATES:
        cmask = 0
        for q in gate.controls:
            cmask |= _bit(n, q)
        tmask = _bit(n, gate.targets[0])
        perm = tuple(j ^ tmask if (j & cmask) == cmask else j for j in range(dim))
        return MonomialGate.from_perm(perm)
    if name == "SWAP":
        a, b = (_bit(n, q) for q in gate.targets)
        perm = []
        for j in range(dim):
            ja, jb = bool(j & a), bool(j & b)
            if ja != jb:
                perm.append(j ^ a ^ b)
            else:
                perm.append(j)
        return MonomialGate.from_perm(tuple(perm))
    if name == "Y":
        q = _bit(n, gate.targets[0])
        perm = tuple(j ^ q for j in range(dim))
        half_pi = DyadicPhase.make(1, 1)
        phases = tuple(-half_pi if (j & q) else half_pi for j in range(dim))
        return MonomialGate(perm, phases)
    if name in DIAGONAL_GATES:
        return _diagonal_gate(gate, n).to_monomial()
    raise CircuitError(f"gate {name} is not monomial")


def _diagonal_gate(gate: Gate, n: int):
    name = gate.name
    if name == "ZROT":
        # exp(i*theta*Z): phase +theta on |0>, -theta on |1>
        q = _bit(n, gate.targets[0])
        theta = gate.angle
        phases = tuple(-theta if (j & q) else theta for j in range(1 << n))
        from .diagonal import DiagonalGate

        return DiagonalGate(n, phases)
    fixed = {
        "Z": PI,
        "S": DyadicPhase.make(1, 1),
        "SDG": DyadicPhase.make(-1, 1),
        "T": DyadicPhase.make(1, 2),
        "TDG": DyadicPhase.make(-1, 2),
        "CZ": PI,
        "CS": DyadicPhase.make(1, 1),
        "CSDG": DyadicPhase.make(-1, 1),
        "CCZ": PI,
    }
    angle = gate.angle if name == "CPHASE" else fixed[name]
    return controlled_phase_gate(n, gate.targets, angle)


def to_monomial(circuit: Circuit) -> MonomialGate:
    g = MonomialGate.identity(circuit.n)
    for gate in circuit.gates:
        g = gate_monomial(gate, circuit.n).mul(g)
    return g


def gate_matrix(gate: Gate, n: int) -> ExactMatrix:
    if gate.name == "H":
        dim = 1 << n
        q = _bit(n, gate.targets[0])
        inv_r2 = ExactScalar.inv_sqrt2(DEFAULT_M)
        zero = ExactScalar.zero(DEFAULT_M)
        rows = [[zero] * dim for _ in range(dim)]
        for j in range(dim):
            rows[j & ~q][j] = inv_r2
            rows[j | q][j] = -inv_r2 if (j & q) else inv_r2
        return ExactMatrix(rows, DEFAULT_M)
    return gate_monomial(gate, n).to_matrix()


def evaluate_exact(circuit: Circuit) -> ExactMatrix:
    """Exact product of the gate matrices, first gate applied first."""
    if circuit.n > 6:
        raise CircuitError("exact evaluation supports at most 6 qubits")
    out = ExactMatrix.identity(1 << circuit.n, DEFAULT_M)
    for gate in circuit.gates:
        out = mat_mul(gate_matrix(gate, circuit.n), out)
    return out


@dataclass(frozen=True)
class SlicePartition:
    slices: tuple[tuple[int, ...], ...]  # gate indices per slice


def _require_mcx(circuit: Circuit):
    for g in circuit.gates:
        if g.name not in MCX_GATES:
            raise CircuitError(f"gate {g.name} is not a multi-controlled-X gate")


def time_slices(circuit: Circuit) -> SlicePartition:
    """Greedy left-to-right maximal slicing into disjoint-support groups."""
    _require_mcx(circuit)
    slices: list[list[int]] = []
    supports: list[set[int]] = []
    for idx, g in enumerate(circuit.gates):
        sup = set(g.support())
        if slices and not (supports[-1] & sup):
            slices[-1].append(idx)
            supports[-1] |= sup
        else:
            slices.append([idx])
            supports.append(sup)
    return SlicePartition(tuple(tuple(s) for s in slices))


def ct_mismatch(circuit: Circuit, partition: SlicePartition | None = None) -> int:
    """Number of wires carrying a control in one slice and a target in another.

    Each offending wire counts once; this keeps the count monotone under the
    X-string pass-through rewrite (a compensating gate only reuses its parent
    gate's control and target wires, so it can never add a new collision wire).
    """
    _require_mcx(circuit)
    if partition is None:
        partition = time_slices(circuit)
    ctrl_wires = []
    tgt_wires = []
    for sl in partition.slices:
        cs: set[int] = set()
        ts: set[int] = set()
        for idx in sl:
            cs |= set(circuit.gates[idx].controls)
            ts |= set(circuit.gates[idx].targets)
        ctrl_wires.append(cs)
        tgt_wires.append(ts)
    bad: set[int] = set()
    for i, j in combinations(range(len(partition.slices)), 2):
        bad |= ctrl_wires[i] & tgt_wires[j]
        bad |= tgt_wires[i] & ctrl_wires[j]
    return len(bad)


def zero_mismatch_slicing_exists(circuit: Circuit) -> bool:
    """Whether some writing of the circuit slices with zero mismatch.

    Two gates sharing a wire can never share a slice, so a control wire of one
    gate meeting a target wire of another forces a collision in every slicing;
    conversely the greedy slicing of a circuit without such a pair already has
    zero mismatch.
    """
    _require_mcx(circuit)
    controls: set[int] = set()
    targets: set[int] = set()
    for g in circuit.gates:
        controls |= set(g.controls)
        targets |= set(g.targets)
    return not (controls & targets)


def mm0_level_certificate(circuit: Circuit) -> int | None:
    """Certified hierarchy level for zero-mismatch networks, else None.

    With zero mismatch every slice commutes, and the network sits at the level
    of its highest gate: a t-controlled X at level t+1.
    """
    _require_mcx(circuit)
    if not circuit.gates:
        return 1
    if ct_mismatch(circuit) != 0:
        return None
    return max(len(g.controls) + 1 for g in circuit.gates)


def push_x_through(circuit: Circuit, x_wires: int) -> Circuit:
    """Move a leading X string to the back of a multi-controlled-X circuit.

    The input composite is (circuit after X(x_wires)); the output circuit is
    equal as a unitary, with the X string trailing. Passing X through a gate
    whose controls meet the mask leaves compensating gates with controls on
    the un-flipped wires and the same target.
    """
    _require_mcx(circuit)
    n = circuit.n
    out: list[Gate] = []
    for g in circuit.gates:
        hit = tuple(q for q in g.controls if x_wires & _bit(n, q))
        if hit:
            rest = tuple(q for q in g.controls if not (x_wires & _bit(n, q)))
            # inverted-control gate = product over control subsets of the hit wires
            subsets = []
            for size in range(len(hit) - 1, -1, -1):
                subsets.extend(combinations(hit, size))
            for sub in subsets:
                ctrls = rest + sub
                if ctrls:
                    name = {1: "CNOT", 2: "CCX"}.get(len(ctrls), "MCX")
                    out.append(Gate.make(name, ctrls + g.targets))
                else:
                    out.append(Gate.make("X", g.targets))
        out.append(g)
    for q in range(n):
        if x_wires & _bit(n, q):
            out.append(Gate.make("X", (q,)))
    return Circuit(n, out)


def x_string_circuit(n: int, x_wires: int) -> Circuit:
    return Circuit(n, [Gate.make("X", (q,)) for q in range(n) if x_wires & _bit(n, q)])
