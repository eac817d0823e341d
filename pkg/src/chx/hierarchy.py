"""Exact hierarchy level decisions via fixpoint labeling of conjugation closures.

Level 1 elements are Pauli monomials and level 2 the Clifford monomials; an
element sits at level k >= 3 when every one of its 4^n Pauli conjugates sits
at level k-1. Levels three and up are not groups, so the labeling must sweep
all 4^n conjugators, not just generators. The closure of a monomial gate is
finite: permutation parts stay inside the conjugates of XOR translations and
phase denominators never grow under conjugation, so the fixpoint terminates
and unlabeled elements are exactly the gates outside the hierarchy.

A permutation gate is outside the hierarchy iff its permutation part is, and
the permutation part can be decided on the X-string-only closure; the engine
uses that as a sound shortcut before materializing the full closure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pauli import PauliString
from .monomial import MonomialGate
from .clifford import CliffordTableau, is_clifford_monomial

DEFAULT_MAX_QUBITS = 5
DEFAULT_CLOSURE_CAP = 10**7


class ClosureCapExceeded(RuntimeError):
    def __init__(self, cap: int, size: int):
        super().__init__(f"closure exceeded cap {cap} (at {size} elements)")
        self.cap = cap
        self.size = size


@dataclass(frozen=True)
class LevelVerdict:
    status: str  # "in_ch" | "not_in_ch" | "aborted"
    level: int | None = None
    witness: str | None = None
    closure_size: int = 0
    reason: str | None = None

    @property
    def in_ch(self) -> bool:
        return self.status == "in_ch"

    @property
    def decided(self) -> bool:
        return self.status != "aborted"

    def to_json(self) -> dict:
        out = {"status": self.status, "closure_size": self.closure_size}
        if self.level is not None:
            out["level"] = self.level
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason is not None:
            out["reason"] = self.reason
        return out


@dataclass
class ConjugationClosure:
    elements: dict  # MonomialGate -> index, in discovery order
    edges: dict  # (index, (x_mask, z_mask)) -> index

    @property
    def size(self) -> int:
        return len(self.elements)


def _pauli_masks(n: int) -> list[tuple[int, int]]:
    dim = 1 << n
    return [(mx, mz) for mx in range(dim) for mz in range(dim) if mx or mz]


def _conjugate(h: MonomialGate, h_inv: MonomialGate, mx: int, mz: int) -> MonomialGate:
    p = MonomialGate.from_pauli(PauliString(h.n, mx, mz, 0))
    return h.mul(p).mul(h_inv)


def conjugation_closure(g: MonomialGate, cap: int = DEFAULT_CLOSURE_CAP) -> ConjugationClosure:
    """Full BFS closure of g under conjugation by all nonidentity Paulis."""
    masks = _pauli_masks(g.n)
    elements: dict[MonomialGate, int] = {g: 0}
    edges: dict[tuple[int, tuple[int, int]], int] = {}
    frontier = [g]
    while frontier:
        new = []
        for h in frontier:
            h_idx = elements[h]
            h_inv = h.inverse()
            for mask in masks:
                child = _conjugate(h, h_inv, *mask)
                idx = elements.get(child)
                if idx is None:
                    if len(elements) >= cap:
                        raise ClosureCapExceeded(cap, len(elements))
                    idx = len(elements)
                    elements[child] = idx
                    new.append(child)
                edges[(h_idx, mask)] = idx
        frontier = new
    return ConjugationClosure(elements, edges)


class HierarchyEngine:
    """Level decisions with closure-wide memoization.

    Verdicts for every element of an explored closure are stored, so repeated
    queries (and queries whose closures overlap) amortize. Cached verdicts act
    as boundary labels: the BFS does not re-expand below an element whose
    level is already known.
    """

    def __init__(self, max_qubits: int = DEFAULT_MAX_QUBITS, closure_cap: int = DEFAULT_CLOSURE_CAP):
        self.max_qubits = max_qubits
        self.closure_cap = closure_cap
        self._levels: dict[int, dict[MonomialGate, int | None]] = {}
        self._perm_levels: dict[int, dict[tuple[int, ...], int | None]] = {}

    # -- full monomial engine ------------------------------------------------

    def level(self, g: MonomialGate) -> LevelVerdict:
        if g.n > self.max_qubits:
            return LevelVerdict("aborted", reason=f"n={g.n} exceeds max_qubits={self.max_qubits}")
        perm_part, _ = g.split()
        try:
            perm_verdict = self.perm_level(perm_part)
        except ClosureCapExceeded as exc:
            return LevelVerdict("aborted", reason=str(exc))
        if perm_verdict.status == "aborted":
            return perm_verdict
        if perm_verdict.status == "not_in_ch":
            # a monomial with a permutation part outside the hierarchy is outside
            return LevelVerdict(
                "not_in_ch",
                witness=perm_verdict.witness,
                closure_size=perm_verdict.closure_size,
            )
        try:
            return self._full_fixpoint(g)
        except ClosureCapExceeded as exc:
            return LevelVerdict("aborted", reason=str(exc))

    def _full_fixpoint(self, g: MonomialGate) -> LevelVerdict:
        cache = self._levels.setdefault(g.n, {})
        if g in cache:
            return self._verdict_from_cache(g, cache, closure_size=0)
        masks = _pauli_masks(g.n)
        elements: dict[MonomialGate, int] = {g: 0}
        order: list[MonomialGate] = [g]
        children: list[list[int] | None] = [None]  # None marks cached leaves
        frontier = [0]
        while frontier:
            new = []
            for h_idx in frontier:
                h = order[h_idx]
                if h in cache:
                    continue
                h_inv = h.inverse()
                kids = []
                for mask in masks:
                    child = _conjugate(h, h_inv, *mask)
                    idx = elements.get(child)
                    if idx is None:
                        if len(elements) >= self.closure_cap:
                            raise ClosureCapExceeded(self.closure_cap, len(elements))
                        idx = len(elements)
                        elements[child] = idx
                        order.append(child)
                        children.append(None)
                        new.append(idx)
                    kids.append(idx)
                children[h_idx] = kids
            frontier = new
        # labeling: levels[i] is the exact level or None (outside the hierarchy)
        levels: list[int | None] = [None] * len(order)
        settled = [False] * len(order)
        for i, h in enumerate(order):
            hit = cache.get(h, "miss")
            if hit != "miss":
                levels[i] = hit
                settled[i] = True
            elif h.is_pauli():
                levels[i] = 1
                settled[i] = True
            elif is_clifford_monomial(h):
                levels[i] = 2
                settled[i] = True
        changed = True
        while changed:
            changed = False
            for i in range(len(order)):
                if settled[i] or children[i] is None:
                    continue
                kid_levels = []
                ok = True
                for kid in children[i]:
                    if not settled[kid] or levels[kid] is None:
                        ok = False
                        break
                    kid_levels.append(levels[kid])
                if ok:
                    levels[i] = 1 + max(kid_levels)
                    settled[i] = True
                    changed = True
        for i, h in enumerate(order):
            if h not in cache and children[i] is not None:
                # unsettled elements with explored children are outside the hierarchy
                cache[h] = levels[i] if settled[i] else None
        return self._verdict_from_cache(g, cache, closure_size=len(order), fix=(order, children, levels, settled, masks))

    def _verdict_from_cache(self, g, cache, closure_size, fix=None):
        lvl = cache[g]
        if lvl is None:
            witness = None
            if fix is not None:
                order, children, levels, settled, masks = fix
                for mask, kid in zip(masks, children[0] or []):
                    if not settled[kid] or levels[kid] is None:
                        witness = str(PauliString(g.n, mask[0], mask[1], 0))
                        break
            return LevelVerdict("not_in_ch", witness=witness, closure_size=closure_size)
        witness = None
        if fix is not None and lvl >= 3:
            order, children, levels, settled, masks = fix
            for mask, kid in zip(masks, children[0] or []):
                if levels[kid] == lvl - 1:
                    witness = str(PauliString(g.n, mask[0], mask[1], 0))
                    break
        return LevelVerdict("in_ch", level=lvl, witness=witness, closure_size=closure_size)

    # -- permutation-only engine ----------------------------------------------

    def perm_level(self, g: MonomialGate) -> LevelVerdict:
        if not g.is_permutation:
            raise ValueError("perm_level requires a permutation gate")
        if g.n > self.max_qubits:
            return LevelVerdict("aborted", reason=f"n={g.n} exceeds max_qubits={self.max_qubits}")
        cache = self._perm_levels.setdefault(g.n, {})
        verdict = self._perm_fixpoint(g.perm, g.n, cache)
        return verdict

    def _perm_fixpoint(self, perm: tuple[int, ...], n: int, cache) -> LevelVerdict:
        dim = 1 << n
        masks = list(range(1, dim))
        elements: dict[tuple[int, ...], int] = {perm: 0}
        order = [perm]
        children: list[list[int] | None] = [None]
        frontier = [0]
        while frontier:
            new = []
            for h_idx in frontier:
                h = order[h_idx]
                if h in cache:
                    continue
                inv = [0] * dim
                for j, p in enumerate(h):
                    inv[p] = j
                kids = []
                for m in masks:
                    child = tuple(h[inv[j] ^ m] for j in range(dim))
                    idx = elements.get(child)
                    if idx is None:
                        if len(elements) >= self.closure_cap:
                            raise ClosureCapExceeded(self.closure_cap, len(elements))
                        idx = len(elements)
                        elements[child] = idx
                        order.append(child)
                        children.append(None)
                        new.append(idx)
                    kids.append(idx)
                children[h_idx] = kids
            frontier = new
        levels: list[int | None] = [None] * len(order)
        settled = [False] * len(order)
        for i, h in enumerate(order):
            hit = cache.get(h, "miss")
            if hit != "miss":
                levels[i] = hit
                settled[i] = True
            elif _is_xor_perm(h):
                levels[i] = 1
                settled[i] = True
            elif _is_affine_perm(h, n):
                levels[i] = 2
                settled[i] = True
        changed = True
        while changed:
            changed = False
            for i in range(len(order)):
                if settled[i] or children[i] is None:
                    continue
                kid_levels = []
                ok = True
                for kid in children[i]:
                    if not settled[kid] or levels[kid] is None:
                        ok = False
                        break
                    kid_levels.append(levels[kid])
                if ok:
                    levels[i] = 1 + max(kid_levels)
                    settled[i] = True
                    changed = True
        for i, h in enumerate(order):
            if h not in cache and children[i] is not None:
                cache[h] = levels[i] if settled[i] else None
        lvl = cache[perm]
        if lvl is None:
            witness = None
            for m, kid in zip(masks, children[0] or []):
                if not settled[kid] or levels[kid] is None:
                    witness = str(PauliString(n, m, 0, 0))
                    break
            return LevelVerdict("not_in_ch", witness=witness, closure_size=len(order))
        witness = None
        if lvl >= 3:
            for m, kid in zip(masks, children[0] or []):
                if levels[kid] == lvl - 1:
                    witness = str(PauliString(n, m, 0, 0))
                    break
        return LevelVerdict("in_ch", level=lvl, witness=witness, closure_size=len(order))

    def level_with_clifford_wrap(
        self, c1: CliffordTableau, g: MonomialGate, c2: CliffordTableau
    ) -> LevelVerdict:
        """Level of c1*g*c2: Clifford wrapping is level-neutral."""
        if c1.n != g.n or c2.n != g.n:
            raise ValueError("qubit counts differ")
        return self.level(g)

    def cached_level(self, g: MonomialGate, default="miss"):
        """Memoized level of a closure element from past queries.

        Returns the exact level, None for elements outside the hierarchy, or
        `default` when the element has not been labeled yet.
        """
        return self._levels.get(g.n, {}).get(g, default)


def _is_xor_perm(perm: tuple[int, ...]) -> bool:
    m = perm[0]
    return all(p == j ^ m for j, p in enumerate(perm))


def _is_affine_perm(perm: tuple[int, ...], n: int) -> bool:
    b = perm[0]
    cols = [perm[1 << (n - 1 - q)] ^ b for q in range(n)]
    for j, p in enumerate(perm):
        img = b
        for q in range(n):
            if j & (1 << (n - 1 - q)):
                img ^= cols[q]
        if img != p:
            return False
    return True


_DEFAULT_ENGINE = HierarchyEngine()


def level(g: MonomialGate, engine: HierarchyEngine | None = None) -> LevelVerdict:
    return (engine or _DEFAULT_ENGINE).level(g)


def perm_level(g: MonomialGate, engine: HierarchyEngine | None = None) -> LevelVerdict:
    return (engine or _DEFAULT_ENGINE).perm_level(g)


def level_with_clifford_wrap(c1, g, c2, engine: HierarchyEngine | None = None) -> LevelVerdict:
    return (engine or _DEFAULT_ENGINE).level_with_clifford_wrap(c1, g, c2)
