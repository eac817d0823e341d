"""Clifford gates as conjugation tableaus over the Pauli generators.

A tableau stores the image of each X_q and Z_q under conjugation, with exact
signs. Composition, inversion and application to arbitrary Pauli strings are
bit operations; dense matrices never appear here.
"""

from __future__ import annotations

from .monomial import MonomialGate
from .pauli import PauliString, StabilizerTableau


class CliffordTableau:
    __slots__ = ("n", "x_images", "z_images")

    def __init__(self, x_images, z_images):
        self.x_images = tuple(x_images)
        self.z_images = tuple(z_images)
        self.n = self.x_images[0].n
        if len(self.x_images) != self.n or len(self.z_images) != self.n:
            raise ValueError("need n X-images and n Z-images")
        for img in self.x_images + self.z_images:
            if img.n != self.n:
                raise ValueError("image qubit counts differ")
            if not img.is_hermitian:
                raise ValueError(f"image {img} is not Hermitian")
        self._check_symplectic()

    def _check_symplectic(self):
        imgs = self.x_images + self.z_images
        n = self.n
        for i, a in enumerate(imgs):
            for j in range(i + 1, len(imgs)):
                b = imgs[j]
                # X_i and Z_i anticommute; all other basis pairs commute
                should_commute = not (j == i + n)
                if a.commutes(b) != should_commute:
                    raise ValueError("images do not preserve symplectic products")

    @classmethod
    def identity(cls, n: int) -> "CliffordTableau":
        xs = [PauliString(n, 1 << (n - 1 - q), 0, 0) for q in range(n)]
        zs = [PauliString(n, 0, 1 << (n - 1 - q), 0) for q in range(n)]
        return cls(xs, zs)

    @classmethod
    def for_gate(cls, name: str, qubits: tuple[int, ...], n: int) -> "CliffordTableau":
        return _gate_tableau(name.upper(), qubits, n)

    def apply(self, p: PauliString) -> PauliString:
        if p.n != self.n:
            raise ValueError("qubit counts differ")
        out = PauliString(self.n, 0, 0, p.phase_exp)
        for q in range(self.n):
            if p.x & (1 << (self.n - 1 - q)):
                out = out * self.x_images[q]
        for q in range(self.n):
            if p.z & (1 << (self.n - 1 - q)):
                out = out * self.z_images[q]
        return out

    def then(self, later: "CliffordTableau") -> "CliffordTableau":
        """Tableau of (later after self), i.e. the matrix product later*self."""
        return CliffordTableau(
            [later.apply(img) for img in self.x_images],
            [later.apply(img) for img in self.z_images],
        )

    def inverse(self) -> "CliffordTableau":
        n = self.n
        # Solve for preimages of the basis strings over F2, then fix signs.
        rows = []
        for img in self.x_images + self.z_images:
            rows.append((img.x << n) | img.z)
        width = 2 * n
        inv_images = []
        for target_col in range(width):
            target = 1 << (width - 1 - target_col)
            combo = _solve_f2(rows, target)
            x_mask = z_mask = 0
            for idx in range(n):
                if combo & (1 << idx):
                    x_mask |= 1 << (n - 1 - idx)
                if combo & (1 << (n + idx)):
                    z_mask |= 1 << (n - 1 - idx)
            candidate = PauliString.hermitian(n, x_mask, z_mask)
            image = self.apply(candidate)
            want_x = target >> n
            want_z = target & ((1 << n) - 1)
            assert (image.x, image.z) == (want_x, want_z)
            fixed = candidate.scaled_i((-image.phase_exp) % 4)
            inv_images.append(fixed)
        return CliffordTableau(inv_images[:n], inv_images[n:])

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return self.x_images == other.x_images and self.z_images == other.z_images

    def __hash__(self) -> int:
        return hash((self.x_images, self.z_images))

    def is_pauli(self) -> bool:
        """True if this Clifford is itself a Pauli string (up to phase)."""
        n = self.n
        for q in range(n):
            bit = 1 << (n - 1 - q)
            xi, zi = self.x_images[q], self.z_images[q]
            if (xi.x, xi.z) != (bit, 0) or (zi.x, zi.z) != (0, bit):
                return False
        return True

    def is_clifford_permutation(self) -> bool:
        """Membership in <CNOT, X>: X-strings map to unsigned X-strings and
        Z-strings to (possibly signed) Z-strings."""
        for img in self.x_images:
            if img.z != 0 or img.phase_exp % 4 != 0:
                return False
        for img in self.z_images:
            if img.x != 0:
                return False
        return True

    def is_diagonal_clifford(self) -> bool:
        """Commutes with every Z-string and preserves X-masks."""
        n = self.n
        for q in range(n):
            bit = 1 << (n - 1 - q)
            zi = self.z_images[q]
            if (zi.x, zi.z, zi.phase_exp) != (0, bit, 0):
                return False
            if self.x_images[q].x != bit:
                return False
        return True


def _solve_f2(rows: list[int], target: int) -> int:
    """Find a subset of rows XORing to target; returns the subset mask."""
    pivots: dict[int, tuple[int, int]] = {}
    for idx, row in enumerate(rows):
        v, combo = row, 1 << idx
        while v:
            hb = 1 << (v.bit_length() - 1)
            entry = pivots.get(hb)
            if entry is None:
                pivots[hb] = (v, combo)
                v = 0
            else:
                v ^= entry[0]
                combo ^= entry[1]
    v, combo = target, 0
    while v:
        hb = 1 << (v.bit_length() - 1)
        entry = pivots.get(hb)
        if entry is None:
            raise ValueError("target not in row span")
        v ^= entry[0]
        combo ^= entry[1]
    return combo


def _apply_named_gate(t: CliffordTableau, name: str, qubits: tuple[int, ...]) -> CliffordTableau:
    gate = _gate_tableau(name, qubits, t.n)
    return t.then(gate)


_CLIFFORD_GATE_NAMES = {"H", "S", "SDG", "CNOT", "CX", "CZ", "X", "Y", "Z", "SWAP"}


def _gate_tableau(name: str, qubits: tuple[int, ...], n: int) -> CliffordTableau:
    t = CliffordTableau.identity(n)
    xs, zs = list(t.x_images), list(t.z_images)

    def X(q):
        return PauliString(n, 1 << (n - 1 - q), 0, 0)

    def Z(q):
        return PauliString(n, 0, 1 << (n - 1 - q), 0)

    def Y(q):
        return PauliString(n, 1 << (n - 1 - q), 1 << (n - 1 - q), 1)

    if name == "H":
        (q,) = qubits
        xs[q], zs[q] = Z(q), X(q)
    elif name == "S":
        (q,) = qubits
        xs[q] = Y(q)
    elif name == "SDG":
        (q,) = qubits
        xs[q] = Y(q).scaled_i(2)
    elif name == "X":
        (q,) = qubits
        zs[q] = Z(q).scaled_i(2)
    elif name == "Y":
        (q,) = qubits
        xs[q] = X(q).scaled_i(2)
        zs[q] = Z(q).scaled_i(2)
    elif name == "Z":
        (q,) = qubits
        xs[q] = X(q).scaled_i(2)
    elif name in ("CNOT", "CX"):
        c, t_ = qubits
        xs[c] = X(c) * X(t_)
        zs[t_] = Z(c) * Z(t_)
    elif name == "CZ":
        a, b = qubits
        xs[a] = X(a) * Z(b)
        xs[b] = Z(a) * X(b)
    elif name == "SWAP":
        a, b = qubits
        xs[a], xs[b] = X(b), X(a)
        zs[a], zs[b] = Z(b), Z(a)
    else:
        raise ValueError(f"{name} is not a Clifford tableau gate")
    return CliffordTableau(xs, zs)


def from_circuit(circuit) -> CliffordTableau:
    """Tableau of a circuit over {H, S, SDG, CNOT, CZ, X, Y, Z, SWAP}."""
    t = CliffordTableau.identity(circuit.n)
    for gate in circuit.gates:
        name = gate.name.upper()
        if name not in _CLIFFORD_GATE_NAMES:
            raise ValueError(f"gate {gate.name} is not in the Clifford gate set")
        t = _apply_named_gate(t, name, gate.all_qubits())
    return t


def normalizes(c: CliffordTableau, s: StabilizerTableau) -> bool:
    """True iff conjugation by c maps <S> into <S> up to sign."""
    if c.n != s.n:
        raise ValueError("qubit counts differ")
    for g in s.generators:
        if not s.contains_up_to_sign(c.apply(g)):
            return False
    return True


def is_clifford_monomial(g: MonomialGate) -> bool:
    """True iff conjugating every Pauli generator by g yields a Pauli string.

    Checking the 2n generators suffices because the Clifford level is a group.
    """
    n = g.n
    g_inv = g.inverse()
    for q in range(n):
        bit = 1 << (n - 1 - q)
        for masks in ((bit, 0), (0, bit)):
            p = MonomialGate.from_pauli(PauliString(n, masks[0], masks[1], 0))
            if not g.mul(p).mul(g_inv).is_pauli():
                return False
    return True


def clifford_from_z_rotations(n: int, rotations: list[tuple[int, int]]) -> CliffordTableau:
    """Tableau of prod_J exp(i * t_J * pi/4 * Z(J)) given (z_mask, t) pairs.

    An anticommuting Pauli P picks up one factor of (i*Z(J)) per quarter turn:
    exp(i*pi/4*Z) P exp(-i*pi/4*Z) = (i*Z) P when {P, Z} = 0.
    """
    xs = list(CliffordTableau.identity(n).x_images)
    zs = list(CliffordTableau.identity(n).z_images)

    def image(p: PauliString) -> PauliString:
        out = p
        for z_mask, t in rotations:
            rot = PauliString(n, 0, z_mask, 0)
            if not out.commutes(rot):
                for _ in range(t % 4):
                    out = rot.scaled_i(1) * out
        return out

    return CliffordTableau([image(p) for p in xs], [image(p) for p in zs])
