"""Bit-packed Pauli strings and stabilizer tableaus.

A Pauli string on n qubits is i^phase_exp * X(x_bits) * Z(z_bits) where the
bit masks index qubits (qubit 0 is the most significant bit of a basis-state
index). Hermitian strings satisfy phase_exp == popcount(x & z) (mod 2).
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

_SIGN_TEXT = {0: "+", 1: "i", 2: "-", 3: "-i"}


class PauliString(NamedTuple):
    n: int
    x: int
    z: int
    phase_exp: int  # power of i, mod 4

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @classmethod
    def from_masks(cls, n: int, x: int, z: int, phase_exp: int = 0) -> "PauliString":
        return cls(n, x, z, phase_exp % 4)

    @classmethod
    def hermitian(cls, n: int, x: int, z: int, sign: int = 1) -> "PauliString":
        """The Hermitian Pauli +/-(letters) with Y on overlapping bits."""
        p = (x & z).bit_count() % 4
        if sign == -1:
            p = (p + 2) % 4
        return cls(n, x, z, p)

    @property
    def is_identity_up_to_phase(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def is_hermitian(self) -> bool:
        return (self.phase_exp - (self.x & self.z).bit_count()) % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for a Hermitian string."""
        d = (self.phase_exp - (self.x & self.z).bit_count()) % 4
        if d == 0:
            return 1
        if d == 2:
            return -1
        raise ValueError(f"{self} is not Hermitian")

    def commutes(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        return ((self.x & other.z).bit_count() + (self.z & other.x).bit_count()) % 2 == 0

    def __mul__(self, other: "PauliString") -> "PauliString":  # type: ignore[override]
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        phase = (self.phase_exp + other.phase_exp + 2 * ((self.z & other.x).bit_count() % 2)) % 4
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z, phase)

    def inverse(self) -> "PauliString":
        # P^-1 = P^dagger for the unitary i^p X Z
        phase = (-self.phase_exp - 2 * ((self.x & self.z).bit_count() % 2)) % 4
        return PauliString(self.n, self.x, self.z, phase)

    def scaled_i(self, power: int) -> "PauliString":
        return PauliString(self.n, self.x, self.z, (self.phase_exp + power) % 4)

    def bits_key(self) -> tuple[int, int]:
        return (self.x, self.z)

    def to_text(self) -> str:
        letters = []
        n_y = 0
        for q in range(self.n):
            bit = 1 << (self.n - 1 - q)
            xb, zb = bool(self.x & bit), bool(self.z & bit)
            if xb and zb:
                letters.append("Y")
                n_y += 1
            elif xb:
                letters.append("X")
            elif zb:
                letters.append("Z")
            else:
                letters.append("I")
        sign = _SIGN_TEXT[(self.phase_exp - n_y) % 4]
        body = "".join(letters)
        return body if sign == "+" else sign + body

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "PauliString":
        s = text.strip()
        phase = 0
        for prefix, p in (("-i", 3), ("+i", 1), ("i", 1), ("-", 2), ("+", 0)):
            if s.startswith(prefix):
                phase = p
                s = s[len(prefix):]
                break
        s = s.upper()
        if not s or any(c not in "IXYZ" for c in s):
            raise ValueError(f"bad Pauli text {text!r}")
        if n is not None and len(s) != n:
            raise ValueError(f"expected {n} qubits, got {len(s)} in {text!r}")
        x = z = 0
        for q, c in enumerate(s):
            bit = 1 << (len(s) - 1 - q)
            if c in "XY":
                x |= bit
            if c in "ZY":
                z |= bit
            if c == "Y":
                phase += 1
        return cls(len(s), x, z, phase % 4)

    def __str__(self) -> str:
        return self.to_text()


def _reduce_vec(v: int, pivots: dict[int, int]) -> int:
    """Reduce v against rows keyed by their highest set bit."""
    while v:
        hb = 1 << (v.bit_length() - 1)
        row = pivots.get(hb)
        if row is None:
            return v
        v ^= row
    return 0


def _independent_rows(paulis: Iterable[PauliString]) -> list[PauliString]:
    """Keep the inputs that are independent over F2 (in input order)."""
    pivots: dict[int, int] = {}
    kept = []
    for p in paulis:
        v = _reduce_vec((p.x << p.n) | p.z, pivots)
        if v:
            pivots[1 << (v.bit_length() - 1)] = v
            kept.append(p)
    return kept


def _row_reduce(vecs: list[int]) -> dict[int, int]:
    pivots: dict[int, int] = {}
    for vec in vecs:
        v = _reduce_vec(vec, pivots)
        if v:
            pivots[1 << (v.bit_length() - 1)] = v
    return pivots


class StabilizerTableau:
    """Independent, pairwise-commuting Hermitian Pauli generators."""

    __slots__ = ("n", "generators", "rank", "_basis")

    def __init__(self, generators: list[PauliString]):
        if not generators:
            raise ValueError("need at least one generator")
        n = generators[0].n
        for g in generators:
            if g.n != n:
                raise ValueError("qubit counts differ")
            if not g.is_hermitian:
                raise ValueError(f"generator {g} is not Hermitian")
            if g.is_identity_up_to_phase:
                raise ValueError("identity is not a valid generator")
        for i, g in enumerate(generators):
            for h in generators[i + 1:]:
                if not g.commutes(h):
                    raise ValueError(f"generators {g} and {h} anticommute")
        if len(_independent_rows(generators)) != len(generators):
            raise ValueError("generators are dependent")
        self.n = n
        self.generators = tuple(generators)
        self.rank = len(generators)
        self._basis = _row_reduce([(g.x << n) | g.z for g in generators])

    def contains_up_to_sign(self, p: PauliString) -> bool:
        return _reduce_vec((p.x << self.n) | p.z, self._basis) == 0

    def __repr__(self) -> str:
        return f"StabilizerTableau({[str(g) for g in self.generators]})"


def canonical_axis(p: PauliString) -> PauliString:
    """The positively signed Hermitian representative with the same bits."""
    return PauliString.hermitian(p.n, p.x, p.z)


def common_stabilizer(axes: list[PauliString]) -> StabilizerTableau | None:
    """Tableau for the group generated by the axes, or None if any anticommute.

    Signs are canonicalized per axis; a rotation about -P equals a rotation
    about P with negated angle, so sign choices are absorbed by callers.
    """
    if not axes:
        return None
    cleaned: list[PauliString] = []
    seen: set[tuple[int, int]] = set()
    for p in axes:
        if p.is_identity_up_to_phase:
            raise ValueError("identity axis not allowed")
        q = canonical_axis(p)
        if q.bits_key() in seen:
            continue
        seen.add(q.bits_key())
        cleaned.append(q)
    for i, g in enumerate(cleaned):
        for h in cleaned[i + 1:]:
            if not g.commutes(h):
                return None
    independent = _independent_rows(cleaned)
    return StabilizerTableau(independent)


def encode_to_z(s: StabilizerTableau):
    """A Clifford circuit (H, S, CNOT) conjugating generator i to +/-Z_i.

    The images are Z-only strings supported on the first `rank` qubits; signs
    stay in the conjugated tableau. Pivots are chosen lowest-index first, so
    the circuit is reproducible.
    """
    from .circuits import Circuit, Gate
    from .clifford import CliffordTableau

    n = s.n
    current = list(s.generators)
    gates: list[Gate] = []

    def emit(name: str, qubits: tuple[int, ...]):
        gates.append(Gate.make(name, qubits))
        t = CliffordTableau.for_gate(name, qubits, n)
        for idx in range(len(current)):
            current[idx] = t.apply(current[idx])

    def bit(q: int) -> int:
        return 1 << (n - 1 - q)

    for i in range(s.rank):
        g = current[i]
        x_support = [q for q in range(n) if g.x & bit(q)]
        if x_support:
            q = x_support[0]
            assert q >= i, "x support below current pivot row"
            for r in x_support[1:]:
                emit("CNOT", (q, r))
            g = current[i]
            if g.z & bit(q):
                emit("S", (q,))
            emit("H", (q,))
            if q != i:
                emit("CNOT", (q, i))
                emit("CNOT", (i, q))
                emit("CNOT", (q, i))
            g = current[i]
            for r in range(n):
                if r != i and g.z & bit(r):
                    emit("CNOT", (r, i))
        else:
            z_high = [q for q in range(i, n) if g.z & bit(q)]
            assert z_high, "dependent generator reached synthesis"
            q = z_high[0]
            for r in range(n):
                if r != q and g.z & bit(r):
                    emit("CNOT", (r, q))
            if q != i:
                emit("CNOT", (q, i))
                emit("CNOT", (i, q))
                emit("CNOT", (q, i))
        g = current[i]
        assert g.x == 0 and g.z == bit(i), f"synthesis failed for generator {i}"
    return Circuit(n, gates)
