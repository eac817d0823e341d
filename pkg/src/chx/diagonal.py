"""Classification of diagonal gates: Z-rotation decompositions and levels.

A diagonal gate is a gauge-fixed phase vector (phase 0 on basis state 0). Its
Walsh-Hadamard transform gives the unique decomposition into Z-string
rotations; the hierarchy level of the gate is the largest denominator among
the reduced rotation angles.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .phase import ZERO_PHASE, DyadicPhase
from .monomial import MonomialGate


class DiagonalGate:
    __slots__ = ("n", "phases", "_hash")

    def __init__(self, n: int, phases):
        phases = tuple(phases)
        if len(phases) != 1 << n:
            raise ValueError(f"need {1 << n} phases for {n} qubits")
        if not phases[0].is_zero:
            base = phases[0]
            phases = tuple(p - base for p in phases)
        self.n = n
        self.phases = phases
        self._hash = hash(phases)

    @classmethod
    def identity(cls, n: int) -> "DiagonalGate":
        return cls(n, (ZERO_PHASE,) * (1 << n))

    @classmethod
    def from_monomial(cls, g: MonomialGate) -> "DiagonalGate":
        if not g.is_diagonal:
            raise ValueError("monomial gate is not diagonal")
        return cls(g.n, g.phases)

    def to_monomial(self) -> MonomialGate:
        return MonomialGate.from_diag(self.phases)

    def mul(self, other: "DiagonalGate") -> "DiagonalGate":
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        return DiagonalGate(self.n, tuple(a + b for a, b in zip(self.phases, other.phases)))

    def squared(self) -> "DiagonalGate":
        return DiagonalGate(self.n, tuple(p.doubled() for p in self.phases))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagonalGate):
            return NotImplemented
        return self.n == other.n and self.phases == other.phases

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"DiagonalGate({self.n}, ({', '.join(map(str, self.phases))}))"


@dataclass(frozen=True)
class ZRotationDecomposition:
    """theta_j per Z-string mask j, including the mask-0 global term."""

    n: int
    coeffs: dict  # mask -> DyadicPhase

    def reconstruct(self) -> DiagonalGate:
        dim = 1 << self.n
        phases = []
        for x in range(dim):
            acc = ZERO_PHASE
            for j, theta in self.coeffs.items():
                if theta.is_zero:
                    continue
                acc = acc + (-theta if (x & j).bit_count() % 2 else theta)
            phases.append(acc)
        return DiagonalGate(self.n, phases)

    def nonzero_masks(self) -> list[int]:
        return [j for j, theta in sorted(self.coeffs.items()) if not theta.is_zero]


def z_rotation_coeffs(d: DiagonalGate) -> ZRotationDecomposition:
    """theta_j = 2^-n * sum_x (-1)^(x.j) * phase(x), computed exactly."""
    n = d.n
    dim = 1 << n
    k = max(p.log2_den for p in d.phases)
    nums = [p.num << (k - p.log2_den) for p in d.phases]
    h = 1
    while h < dim:
        for i in range(0, dim, h * 2):
            for j in range(i, i + h):
                a, b = nums[j], nums[j + h]
                nums[j], nums[j + h] = a + b, a - b
        h *= 2
    coeffs = {j: DyadicPhase.make(nums[j], k + n) for j in range(dim)}
    return ZRotationDecomposition(n, coeffs)


@dataclass(frozen=True)
class DiagClassification:
    level: int
    witness_mask: int | None
    degenerate: bool
    decomposition: ZRotationDecomposition

    def witness_text(self) -> str | None:
        if self.witness_mask is None:
            return None
        return mask_to_z_text(self.decomposition.n, self.witness_mask)


def mask_to_z_text(n: int, mask: int) -> str:
    return "".join("Z" if mask & (1 << (n - 1 - q)) else "I" for q in range(n))


def ch_level_diag(d: DiagonalGate) -> DiagClassification:
    """Exact hierarchy level of a dyadic diagonal gate.

    The level is the maximum reduced denominator over non-identity rotation
    masks; a gate whose rotations all vanish (identity, or pure Z strings at
    angle pi) degenerates to level 1.
    """
    dec = z_rotation_coeffs(d)
    best = 0
    witness = None
    for j in sorted(dec.coeffs):
        if j == 0:
            continue
        lvl = dec.coeffs[j].level()
        if lvl > best:
            best = lvl
            witness = j
    if best == 0:
        return DiagClassification(1, None, True, dec)
    return DiagClassification(max(best, 1), witness, False, dec)


def in_Dk(d: DiagonalGate, k: int) -> bool:
    """Membership in the level-k diagonal gate group."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return ch_level_diag(d).level <= k


def in_Diag_l(d: DiagonalGate, l: int) -> bool:
    """True iff every entry is a 2^l-th root of unity."""
    if l < 1:
        raise ValueError("l must be >= 1")
    return all(p.log2_den <= l - 1 for p in d.phases)


def order_Dk(n: int, k: int) -> int:
    """Number of gauge-fixed elements of the level-k diagonal group."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    total = 1
    for j in range(min(k - 1, n - 1) + 1):
        total *= (1 << (k - j)) ** comb(n, j + 1)
    return total


def controlled_phase_gate(n: int, qubits: tuple[int, ...], angle: DyadicPhase) -> DiagonalGate:
    """Phase `angle` on basis states where all the listed qubits are 1."""
    mask = 0
    for q in qubits:
        mask |= 1 << (n - 1 - q)
    phases = [angle if (x & mask) == mask else ZERO_PHASE for x in range(1 << n)]
    return DiagonalGate(n, phases)


def generators_Dk(n: int, k: int) -> list[DiagonalGate]:
    """The multi-controlled phase generator family of the level-k group.

    Subset size s contributes the phase pi/2^(k-s) on every s-subset of
    qubits; sizes are truncated at n when n < k.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    gens = []
    for s in range(1, min(k, n) + 1):
        angle = DyadicPhase.make(1, k - s)
        for qubits in combinations(range(n), s):
            gens.append(controlled_phase_gate(n, qubits, angle))
    return gens


def generators_Diag_l(n: int, l: int) -> list[DiagonalGate]:
    """Generators of the diagonal gates with 2^l-th root-of-unity entries."""
    if n < 1 or l < 1:
        raise ValueError("n and l must be >= 1")
    angle = DyadicPhase.make(1, l - 1)
    gens = []
    for s in range(1, n + 1):
        for qubits in combinations(range(n), s):
            gens.append(controlled_phase_gate(n, qubits, angle))
    return gens


def diag_closure(generators: list[DiagonalGate], cap: int = 10**7) -> list[DiagonalGate]:
    """BFS closure of diagonal gates under multiplication."""
    if not generators:
        return []
    n = generators[0].n
    seen = {DiagonalGate.identity(n): None}
    frontier = [DiagonalGate.identity(n)]
    while frontier:
        new = []
        for g in generators:
            for h in frontier:
                prod = g.mul(h)
                if prod not in seen:
                    if len(seen) >= cap:
                        raise RuntimeError(f"diagonal closure exceeded cap {cap}")
                    seen[prod] = None
                    new.append(prod)
        frontier = new
    return list(seen)


def classify_exact_diagonal(matrix) -> DiagClassification | None:
    """Classify a diagonal ExactMatrix; None when some entry ratio is not a
    2-power root of unity (the gate then sits outside the hierarchy)."""
    dim = matrix.dim
    for i in range(dim):
        for j in range(dim):
            if i != j and not matrix.rows[i][j].is_zero:
                raise ValueError("matrix is not diagonal")
    ref = matrix.rows[0][0]
    phases = []
    for i in range(dim):
        entry = matrix.rows[i][i]
        r = None
        from .exact import ExactScalar

        for cand in range(1 << matrix.m):
            if ExactScalar.root(cand, matrix.m) * ref == entry:
                r = cand
                break
        if r is None:
            return None
        phases.append(DyadicPhase.make(r, matrix.m - 1))
    n = dim.bit_length() - 1
    return ch_level_diag(DiagonalGate(n, phases))
