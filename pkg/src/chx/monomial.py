"""Generalized permutation (monomial) gates.

A MonomialGate maps basis state j to e^{i*phases[j]} |perm[j]>, with phases
attached to columns. Gates are projective: the constructor fixes the gauge by
zeroing the phase of the column that maps to row 0, so two monomials compare
equal iff they are equal up to a global phase. Basis index bit n-1-q carries
qubit q (qubit 0 is the most significant bit).
"""

from __future__ import annotations

from functools import lru_cache

from .phase import ZERO_PHASE, PI, DyadicPhase
from .pauli import PauliString


class MonomialGate:
    __slots__ = ("n", "perm", "phases", "_hash")

    def __init__(self, perm: tuple[int, ...], phases: tuple[DyadicPhase, ...]):
        dim = len(perm)
        n = dim.bit_length() - 1
        if 1 << n != dim or sorted(perm) != list(range(dim)):
            raise ValueError("perm must be a bijection on 0..2^n-1")
        if len(phases) != dim:
            raise ValueError("phase count must match dimension")
        self.n = n
        self.perm = perm
        j0 = perm.index(0)
        c = phases[j0]
        if not c.is_zero:
            phases = tuple(p - c for p in phases)
        self.phases = phases
        self._hash = hash((perm, phases))

    @classmethod
    def _trusted(cls, n: int, perm: tuple[int, ...], phases: tuple[DyadicPhase, ...]) -> "MonomialGate":
        self = object.__new__(cls)
        self.n = n
        self.perm = perm
        self.phases = phases
        self._hash = hash((perm, phases))
        return self

    @classmethod
    def identity(cls, n: int) -> "MonomialGate":
        dim = 1 << n
        return cls._trusted(n, tuple(range(dim)), (ZERO_PHASE,) * dim)

    @classmethod
    def from_perm(cls, perm) -> "MonomialGate":
        return cls(tuple(perm), (ZERO_PHASE,) * len(perm))

    @classmethod
    def from_diag(cls, phases) -> "MonomialGate":
        return cls(tuple(range(len(phases))), tuple(phases))

    @classmethod
    def from_pauli(cls, p: PauliString) -> "MonomialGate":
        return _pauli_monomial(p.n, p.x, p.z)

    @property
    def is_permutation(self) -> bool:
        return all(p.is_zero for p in self.phases)

    @property
    def is_diagonal(self) -> bool:
        return all(self.perm[j] == j for j in range(len(self.perm)))

    def key(self):
        return (self.perm, self.phases)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialGate):
            return NotImplemented
        return self.perm == other.perm and self.phases == other.phases

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"MonomialGate(perm={self.perm}, phases=({', '.join(map(str, self.phases))}))"

    def mul(self, other: "MonomialGate") -> "MonomialGate":
        """Matrix product self*other (other acts first)."""
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        sperm, sphases = self.perm, self.phases
        operm, ophases = other.perm, other.phases
        perm = tuple(sperm[p] for p in operm)
        phases = [ophases[j] + sphases[operm[j]] for j in range(len(perm))]
        j0 = perm.index(0)
        c = phases[j0]
        if not c.is_zero:
            phases = [p - c for p in phases]
        return MonomialGate._trusted(self.n, perm, tuple(phases))

    def __mul__(self, other: "MonomialGate") -> "MonomialGate":
        return self.mul(other)

    def inverse(self) -> "MonomialGate":
        dim = len(self.perm)
        inv = [0] * dim
        for j, p in enumerate(self.perm):
            inv[p] = j
        perm = tuple(inv)
        phases = [-self.phases[perm[k]] for k in range(dim)]
        j0 = perm.index(0)
        c = phases[j0]
        if not c.is_zero:
            phases = [p - c for p in phases]
        return MonomialGate._trusted(self.n, perm, tuple(phases))

    def split(self) -> tuple["MonomialGate", "MonomialGate"]:
        """Unique factorization into a permutation times a diagonal."""
        dim = len(self.perm)
        perm_part = MonomialGate._trusted(self.n, self.perm, (ZERO_PHASE,) * dim)
        diag_part = MonomialGate.from_diag(self.phases)
        return perm_part, diag_part

    def conjugate_pauli(self, p: PauliString) -> "MonomialGate":
        """self * p * self^dagger, always another monomial gate."""
        return self.mul(MonomialGate.from_pauli(p)).mul(self.inverse())

    def as_pauli_masks(self) -> tuple[int, int] | None:
        """(x_mask, z_mask) if this gate is a Pauli string up to global phase."""
        perm = self.perm
        dim = len(perm)
        mx = perm[0]
        for j in range(dim):
            if perm[j] != j ^ mx:
                return None
        phases = self.phases
        base = phases[0]
        if base != ZERO_PHASE and base != PI:
            return None
        for p in phases:
            if p != ZERO_PHASE and p != PI:
                return None
        # chi(j) = phases[j] - phases[0] must be F2-linear: chi(j) = pi*(mz.j)
        n = self.n
        mz = 0
        for q in range(n):
            bit = 1 << (n - 1 - q)
            if phases[bit] - base == PI:
                mz |= bit
        for j in range(dim):
            expected = (mz & j).bit_count() % 2
            actual = 1 if (phases[j] - base == PI) else 0
            if expected != actual:
                return None
        return (mx, mz)

    def is_pauli(self) -> bool:
        return self.as_pauli_masks() is not None

    def max_phase_level(self) -> int:
        return max((p.log2_den for p in self.phases), default=0)

    def to_matrix(self):
        from .exact import DEFAULT_M, ExactMatrix, ExactScalar

        dim = len(self.perm)
        m = max(DEFAULT_M, self.max_phase_level() + 1)
        zero = ExactScalar.zero(m)
        rows = [[zero] * dim for _ in range(dim)]
        for j in range(dim):
            rows[self.perm[j]][j] = ExactScalar.from_phase(self.phases[j], m)
        return ExactMatrix(rows, m)

    def to_json(self) -> dict:
        return {
            "perm": list(self.perm),
            "phases": [p.to_json() for p in self.phases],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MonomialGate":
        from .phase import parse_phase

        perm = tuple(int(v) for v in data["perm"])
        phases = tuple(parse_phase(p) for p in data["phases"])
        return cls(perm, phases)


@lru_cache(maxsize=1 << 14)
def _pauli_monomial(n: int, x: int, z: int) -> MonomialGate:
    dim = 1 << n
    perm = tuple(j ^ x for j in range(dim))
    phases = tuple(PI if (z & j).bit_count() % 2 else ZERO_PHASE for j in range(dim))
    return MonomialGate(perm, phases)


def xor_perm(n: int, mask: int) -> MonomialGate:
    return _pauli_monomial(n, mask, 0)
