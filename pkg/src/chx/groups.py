"""Gate-group machinery: closures, canonical forms, and constraint checkers.

A group element in canonical form is Clifford * permutation * (commuting
non-Clifford Pauli rotations). A set of such elements generates a group of
(generalized) semi-Clifford hierarchy gates iff all rotation axes fit in one
stabilizer group, every Clifford part normalizes it, and (in the generalized
case) the permutation parts close into a group of hierarchy permutations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .phase import DyadicPhase
from .pauli import PauliString, canonical_axis, common_stabilizer
from .clifford import CliffordTableau, clifford_from_z_rotations, normalizes
from .monomial import MonomialGate
from .diagonal import DiagonalGate, mask_to_z_text, z_rotation_coeffs
from .hierarchy import ClosureCapExceeded, HierarchyEngine, LevelVerdict


@dataclass(frozen=True)
class GroupElementForm:
    """C * P * prod_j exp(i*angle_j*axis_j), with P a permutation descriptor
    acting on the basis stabilized by the axes' stabilizer group."""

    clifford: CliffordTableau
    perm: MonomialGate
    rotations: tuple[tuple[PauliString, DyadicPhase], ...]
    global_phase: DyadicPhase = DyadicPhase(0, 0)

    def __post_init__(self):
        n = self.clifford.n
        if self.perm.n != n:
            raise ValueError("perm qubit count differs from clifford")
        if not self.perm.is_permutation:
            raise ValueError("perm part must be a pure permutation")
        seen = set()
        for axis, angle in self.rotations:
            if axis.n != n:
                raise ValueError("axis qubit count differs")
            if axis.is_identity_up_to_phase:
                raise ValueError("identity rotation axis not allowed")
            if angle.is_zero:
                raise ValueError("zero rotation angle should be dropped")
            if angle.log2_den <= 2:
                raise ValueError("Clifford-level angles belong in the clifford part")
            key = canonical_axis(axis).bits_key()
            if key in seen:
                raise ValueError("rotations must be combined per axis")
            seen.add(key)

    @property
    def n(self) -> int:
        return self.clifford.n


@dataclass
class GroupClosure:
    elements: list
    order: int
    truncated: bool


def closure(generators: list[MonomialGate], cap: int = 10**6) -> GroupClosure:
    """BFS closure of monomial gates under multiplication (projective)."""
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].n
    ident = MonomialGate.identity(n)
    seen = {ident: None}
    frontier = [ident]
    truncated = False
    while frontier and not truncated:
        new = []
        for g in generators:
            for h in frontier:
                prod = g.mul(h)
                if prod not in seen:
                    if len(seen) >= cap:
                        truncated = True
                        break
                    seen[prod] = None
                    new.append(prod)
            if truncated:
                break
        frontier = new
    return GroupClosure(list(seen), len(seen), truncated)


def matrix_closure(generators: list, cap: int = 10**5) -> GroupClosure:
    """Projective closure of exact matrices (for mixed Clifford products)."""
    from .exact import ExactMatrix, mat_mul

    if not generators:
        raise ValueError("need at least one generator")
    dim = generators[0].dim
    ident = ExactMatrix.identity(dim)
    seen = {ident.canonical_projective(): ident}
    frontier = [ident]
    truncated = False
    while frontier and not truncated:
        new = []
        for g in generators:
            for h in frontier:
                prod = mat_mul(g, h)
                key = prod.canonical_projective()
                if key not in seen:
                    if len(seen) >= cap:
                        truncated = True
                        break
                    seen[key] = prod
                    new.append(prod)
            if truncated:
                break
        frontier = new
    return GroupClosure(list(seen.values()), len(seen), truncated)


def perm_tuple_closure(generators: dict, cap: int = 10**7):
    """Closure of permutation tuples with shortest-lex word tracking.

    `generators` maps label -> permutation tuple; returns (elements dict
    perm -> word, truncated flag). Identity has the empty word.
    """
    if not generators:
        raise ValueError("need at least one generator")
    dim = len(next(iter(generators.values())))
    ident = tuple(range(dim))
    words = {ident: ""}
    frontier = [ident]
    truncated = False
    while frontier and not truncated:
        new = []
        for h in frontier:
            for label, g in generators.items():
                prod = tuple(h[g[j]] for j in range(dim))  # h * g, g applied first
                if prod not in words:
                    if len(words) >= cap:
                        truncated = True
                        break
                    words[prod] = words[h] + label
                    new.append(prod)
            if truncated:
                break
        frontier = new
    return words, truncated


@dataclass
class CheckReport:
    status: str  # "pass" | "fail" | "aborted"
    stabilizer: list[str] | None = None
    failures: list[dict] = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"status": self.status, "failures": self.failures}
        if self.stabilizer is not None:
            out["stabilizer"] = self.stabilizer
        if self.detail:
            out["detail"] = self.detail
        return out


def _collect_axes(elements: list[GroupElementForm]) -> list[PauliString]:
    axes = []
    for el in elements:
        for axis, _angle in el.rotations:
            axes.append(axis)
    return axes


def check_semi_clifford_group(elements: list[GroupElementForm]) -> CheckReport:
    """The group constraints for semi-Clifford generators.

    All rotation axes must fit in a common stabilizer group and every
    element's Clifford part must normalize it (signs ignored: a Clifford may
    flip a rotation's sign, which the angle absorbs).
    """
    axes = _collect_axes(elements)
    if not axes:
        return CheckReport("pass", stabilizer=[], detail={"note": "no non-Clifford rotations"})
    for i, a in enumerate(axes):
        for b in axes[i + 1:]:
            if not a.commutes(b):
                return CheckReport(
                    "fail",
                    failures=[{
                        "kind": "anticommuting_axes",
                        "axes": [str(canonical_axis(a)), str(canonical_axis(b))],
                    }],
                )
    tableau = common_stabilizer(axes)
    assert tableau is not None
    for idx, el in enumerate(elements):
        if not normalizes(el.clifford, tableau):
            bad = next(
                str(g) for g in tableau.generators
                if not tableau.contains_up_to_sign(el.clifford.apply(g))
            )
            return CheckReport(
                "fail",
                stabilizer=[str(g) for g in tableau.generators],
                failures=[{"kind": "normalizer", "element": idx, "generator": bad}],
            )
    return CheckReport("pass", stabilizer=[str(g) for g in tableau.generators])


def _perm_preserves_encoded_stabilizer(perm: tuple[int, ...], n: int, rank: int) -> int | None:
    """Check the permutation maps rotations about the leading-Z stabilizer to
    products of rotations about it: each leading bit of perm^-1 may depend
    only on the leading `rank` bits. Returns an offending generator index or
    None."""
    dim = 1 << n
    inv = [0] * dim
    for j, p in enumerate(perm):
        inv[p] = j
    low_bits = [1 << (n - 1 - q) for q in range(rank, n)]
    for i in range(rank):
        bit = 1 << (n - 1 - i)
        for x in range(dim):
            fx = inv[x] & bit
            for b in low_bits:
                if (inv[x ^ b] & bit) != fx:
                    return i
    return None


def check_gsc_group(
    elements: list[GroupElementForm],
    perm_closure_cap: int = 10**6,
    engine: HierarchyEngine | None = None,
) -> CheckReport:
    """Generalized-semi-Clifford group constraints.

    Beyond the semi-Clifford conditions, the permutation descriptors must
    normalize the stabilizer and must close into a group whose members are
    all hierarchy permutations; membership is checked element by element
    because the permutations above the Clifford level do not form a group
    for free.
    """
    engine = engine or HierarchyEngine()
    base = check_semi_clifford_group(elements)
    if base.status == "fail":
        return base
    rank = 0
    if base.stabilizer:
        axes = _collect_axes(elements)
        tableau = common_stabilizer(axes)
        assert tableau is not None
        rank = tableau.rank
    n = elements[0].n
    for idx, el in enumerate(elements):
        if rank and not el.perm.is_diagonal:
            bad = _perm_preserves_encoded_stabilizer(el.perm.perm, n, rank)
            if bad is not None:
                return CheckReport(
                    "fail",
                    stabilizer=base.stabilizer,
                    failures=[{
                        "kind": "perm_normalizer",
                        "element": idx,
                        "generator": mask_to_z_text(n, 1 << (n - 1 - bad)),
                    }],
                )
    labels = "abcdefghijklmnopqrstuvwxyz"
    gens = {}
    for idx, el in enumerate(elements):
        if not el.perm.is_diagonal:
            label = labels[idx % len(labels)] if idx < len(labels) else f"g{idx}"
            gens[label] = el.perm.perm
    if not gens:
        base.detail["note"] = "no permutation parts; semi-Clifford conditions only"
        return base
    words, truncated = perm_tuple_closure(gens, cap=perm_closure_cap)
    if truncated:
        return CheckReport("aborted", detail={"reason": f"permutation closure exceeded cap {perm_closure_cap}"})
    certified = 0
    for perm, word in words.items():
        verdict = engine.perm_level(MonomialGate.from_perm(perm))
        if verdict.status == "aborted":
            return CheckReport("aborted", detail={"reason": verdict.reason or "level aborted"})
        if not verdict.in_ch:
            return CheckReport(
                "fail",
                stabilizer=base.stabilizer,
                failures=[{
                    "kind": "permutation_not_in_ch",
                    "word": word or "identity",
                    "witness": verdict.witness,
                }],
                detail={"perm_closure_order": len(words)},
            )
        certified += 1
    return CheckReport(
        "pass",
        stabilizer=base.stabilizer,
        detail={"perm_closure_order": len(words), "permutations_certified": certified},
    )


def canonicalize(
    c1: CliffordTableau,
    p: MonomialGate,
    d: DiagonalGate,
    c2: CliffordTableau,
) -> GroupElementForm:
    """Canonical form of c1 * P * D * c2.

    Clifford-level rotation angles of D fold into the Clifford part; the
    remaining rotation axes are the c2-conjugated Z masks with signs absorbed
    into the angles.
    """
    n = c1.n
    if p.n != n or d.n != n or c2.n != n:
        raise ValueError("qubit counts differ")
    if not p.is_permutation:
        raise ValueError("P must be a pure permutation")
    dec = z_rotation_coeffs(d)
    clifford_rotations = []
    rotations = []
    global_phase = dec.coeffs[0]
    c2_inv = c2.inverse()
    for mask in sorted(dec.coeffs):
        theta = dec.coeffs[mask]
        if mask == 0 or theta.is_zero:
            continue
        if theta.log2_den <= 2:
            quarter_turns = theta.num << (2 - theta.log2_den)
            clifford_rotations.append((mask, quarter_turns))
        else:
            image = c2_inv.apply(PauliString(n, 0, mask, 0))
            axis = canonical_axis(image)
            angle = theta.scaled(image.sign)
            rotations.append((axis, angle))
    d_c = clifford_from_z_rotations(n, clifford_rotations)
    total_c = c2.then(d_c).then(c1)
    return GroupElementForm(total_c, p, tuple(rotations), global_phase)


@dataclass
class CosetClass:
    word: str
    perm: tuple[int, ...]
    size: int
    verdict: LevelVerdict

    def to_json(self) -> dict:
        return {
            "word": self.word or "identity",
            "perm": list(self.perm),
            "size": self.size,
            "verdict": self.verdict.to_json(),
        }


@dataclass
class CosetReport:
    classes: list[CosetClass]
    ambient_order: int
    subgroup_order: int
    truncated: bool

    def class_of(self, perm: tuple[int, ...]) -> int | None:
        for i, cls in enumerate(self.classes):
            if perm in cls._members:  # type: ignore[attr-defined]
                return i
        return None

    def to_json(self) -> dict:
        return {
            "ambient_order": self.ambient_order,
            "subgroup_order": self.subgroup_order,
            "truncated": self.truncated,
            "classes": [c.to_json() for c in self.classes],
        }


def classify_double_cosets(
    ambient_generators: dict,
    subgroup_generators: dict,
    cap: int = 10**6,
    engine: HierarchyEngine | None = None,
) -> CosetReport:
    """Partition the ambient closure into subgroup double cosets K*g*K.

    Generators map labels to permutation tuples. Representatives are the
    shortest (then lexicographically least) words over the ambient alphabet;
    each class carries the hierarchy verdict of its representative.
    """
    engine = engine or HierarchyEngine()
    amb_words, amb_trunc = perm_tuple_closure(ambient_generators, cap=cap)
    if amb_trunc:
        raise ClosureCapExceeded(cap, len(amb_words))
    sub_words, sub_trunc = perm_tuple_closure(subgroup_generators, cap=cap)
    if sub_trunc:
        raise ClosureCapExceeded(cap, len(sub_words))
    for perm in subgroup_generators.values():
        if perm not in amb_words:
            raise ValueError("subgroup generator outside ambient closure")
    sub_gens = list(subgroup_generators.values())
    dim = len(next(iter(amb_words)))
    assigned: dict[tuple[int, ...], int] = {}
    classes: list[CosetClass] = []
    for perm in amb_words:  # discovery order = (length, lex) minimal first
        if perm in assigned:
            continue
        class_id = len(classes)
        members = {perm}
        frontier = [perm]
        while frontier:
            new = []
            for x in frontier:
                for k in sub_gens:
                    for prod in (
                        tuple(k[x[j]] for j in range(dim)),  # k * x
                        tuple(x[k[j]] for j in range(dim)),  # x * k
                    ):
                        if prod not in members:
                            members.add(prod)
                            new.append(prod)
            frontier = new
        for m in members:
            assigned[m] = class_id
        verdict = engine.perm_level(MonomialGate.from_perm(perm))
        cls = CosetClass(amb_words[perm], perm, len(members), verdict)
        cls._members = members  # type: ignore[attr-defined]
        classes.append(cls)
    return CosetReport(classes, len(amb_words), len(sub_words), False)


@dataclass
class RecipeFinding:
    severity: str  # "error" | "warning"
    rule: str
    message: str
    where: str

    def to_json(self) -> dict:
        return {"severity": self.severity, "rule": self.rule, "message": self.message, "where": self.where}


def validate_recipe(recipe: dict) -> list[RecipeFinding]:
    """Structural lint of a group-construction recipe.

    The recipe fixes a set of qubits carrying the full Clifford group; the
    remaining qubits carry permutation*diagonal factors. Cross-boundary
    multi-controlled-X gates may only target a single Clifford qubit with all
    controls on non-Clifford qubits.
    """
    n = int(recipe["n"])
    clifford_qubits = set(recipe.get("clifford_qubits", ()))
    assume_full = bool(recipe.get("assume_full_clifford", True))
    findings: list[RecipeFinding] = []

    for idx, gen in enumerate(recipe.get("generators", ())):
        where = f"generator {idx}"
        diag_support = set(gen.get("diag_support", ()))
        diag_level = int(gen.get("diag_level", 1))
        perm_support = set(gen.get("perm_support", ()))
        perm_clifford = bool(gen.get("perm_clifford", True))
        cliff_support = set(gen.get("clifford_support", ()))
        if diag_level >= 3 and diag_support & clifford_qubits:
            findings.append(RecipeFinding(
                "error", "non-clifford-diagonal-on-clifford-qubit",
                f"non-Clifford diagonal factor touches Clifford qubits {sorted(diag_support & clifford_qubits)}",
                where,
            ))
        if not perm_clifford and perm_support & clifford_qubits:
            findings.append(RecipeFinding(
                "error", "non-clifford-permutation-on-clifford-qubit",
                f"non-Clifford permutation factor touches Clifford qubits {sorted(perm_support & clifford_qubits)}",
                where,
            ))
        if cliff_support - clifford_qubits:
            findings.append(RecipeFinding(
                "error", "clifford-factor-outside-clifford-qubits",
                f"unrestricted Clifford factor on non-Clifford qubits {sorted(cliff_support - clifford_qubits)}",
                where,
            ))

    for idx, gate in enumerate(recipe.get("cross_gates", ())):
        where = f"cross gate {idx}"
        controls = set(gate["controls"])
        target = int(gate["target"])
        if target not in clifford_qubits and controls & clifford_qubits:
            findings.append(RecipeFinding(
                "error", "control-on-clifford-target-on-non-clifford",
                "a control on an unrestricted Clifford qubit lets that qubit's gates "
                "propagate phases onto the non-Clifford side",
                where,
            ))
            continue
        support_on_clifford = len(controls & clifford_qubits) + (1 if target in clifford_qubits else 0)
        if len(controls) >= 2:
            if support_on_clifford >= 3:
                findings.append(RecipeFinding(
                    "error", "non-clifford-permutation-fully-on-clifford-qubits",
                    "a multi-controlled X supported on three or more unrestricted Clifford "
                    "qubits generates an infinite group with the Clifford group there",
                    where,
                ))
            elif support_on_clifford == 2:
                severity = "error" if assume_full else "warning"
                findings.append(RecipeFinding(
                    severity, "target-and-control-on-clifford-qubits",
                    "target plus a control on unrestricted Clifford qubits lets Hadamard "
                    "conjugation build a permutation outside the hierarchy; with restricted "
                    "Clifford gates this rule is supported by strong evidence only",
                    where,
                ))
    return findings
