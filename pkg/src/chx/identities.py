"""Built-in exact identity suite and three-Toffoli fixtures.

Letters a, b, c name the 3-qubit Toffolis with target on qubit 0, 1, 2
(controls on the other two). Each identity pins a conjugation-rewrite of a
Toffoli word to its Clifford-reduced form; all are verified as exact matrix
equalities up to a global phase. The suite also certifies the level of the
Toffoli*T composite, whose conjugate by X on the target is the displayed
diagonal-times-X form one level lower.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuits import Circuit, Gate, evaluate_exact, to_monomial
from .exact import equal_up_to_global_phase
from .hierarchy import HierarchyEngine
from .monomial import MonomialGate

TOFFOLI_WORD_LIST = [
    "1", "a", "b", "c", "ab", "ac", "ba", "bc", "ca", "cb",
    "aba", "abc", "aca", "acb", "bac", "bca", "bcb", "cab", "cba",
    "abac", "abca", "abcb", "acab", "acba", "bacb", "bcab", "cabc", "cbac",
    "abcab", "acbac", "bacba", "bcabc", "cabca", "cbacb",
    "abcabc", "acbacb", "bacbac",
]

EXPECTED_CLASS_LABELS = ["a", "ab", "aba", "abc", "abac", "abca", "abcab", "abcabc"]
CLASS_LEVELS = {"a": 3, "aba": 3, "ab": None, "abc": None,
                "abac": None, "abca": None, "abcab": None, "abcabc": None}


def toffoli_gate(target: int) -> Gate:
    controls = tuple(q for q in range(3) if q != target)
    return Gate.make("CCX", controls + (target,))


def letter_gate(letter: str) -> Gate:
    return toffoli_gate("abc".index(letter))


def word_circuit(word: str) -> Circuit:
    """The word as a circuit: letters apply left to right."""
    if word == "1":
        return Circuit(3, [])
    return Circuit(3, [letter_gate(ch) for ch in word])


def word_perm(word: str) -> tuple[int, ...]:
    return to_monomial(word_circuit(word)).perm


def clifford_perm_generators(n: int) -> dict:
    """Labeled generators of the n-qubit Clifford permutation group <CNOT, X>."""
    gens = {}
    idx = 0
    for c in range(n):
        for t in range(n):
            if c != t:
                gens[f"k{idx}"] = _gate_perm(Gate.make("CNOT", (c, t)), n)
                idx += 1
    for q in range(n):
        gens[f"k{idx}"] = _gate_perm(Gate.make("X", (q,)), n)
        idx += 1
    return gens


def _gate_perm(gate: Gate, n: int) -> tuple[int, ...]:
    from .circuits import gate_monomial

    return gate_monomial(gate, n).perm


def toffoli_word_generators() -> dict:
    return {letter: word_perm(letter) for letter in "abc"}


@dataclass
class IdentityCase:
    name: str
    lhs: Circuit
    rhs: Circuit

    def holds(self) -> bool:
        return equal_up_to_global_phase(evaluate_exact(self.lhs), evaluate_exact(self.rhs))


def _g(name, *qubits, angle=None):
    return Gate.make(name, tuple(qubits), angle)


def identity_cases() -> list[IdentityCase]:
    a, b, c = (toffoli_gate(t) for t in range(3))
    cases = [
        IdentityCase(
            # conjugating X on the target through Toffoli*T lands one level down
            "toffoli_t_conjugate_reduction",
            Circuit(3, [_g("CCX", 0, 1, 2), _g("T", 2), _g("X", 2), _g("TDG", 2), _g("CCX", 0, 1, 2)]),
            Circuit(3, [_g("CCX", 0, 1, 2), _g("S", 2), _g("CCX", 0, 1, 2), _g("X", 2)]),
        ),
        IdentityCase(
            "toffoli_t_conjugate_diagonal_form",
            Circuit(3, [_g("CCX", 0, 1, 2), _g("T", 2), _g("X", 2), _g("TDG", 2), _g("CCX", 0, 1, 2)]),
            Circuit(3, [_g("CS", 0, 1), _g("S", 2), _g("CCZ", 0, 1, 2), _g("X", 2)]),
        ),
        IdentityCase(
            # cbc equals the swap of qubits 1,2 controlled on qubit 0
            "aba_class_is_controlled_swap",
            Circuit(3, [c, b, c]),
            Circuit(3, [_g("CNOT", 1, 2), _g("CCX", 0, 2, 1), _g("CNOT", 1, 2)]),
        ),
        IdentityCase(
            # (bc) X0 (bc)^dagger written with Clifford permutations and the word itself
            "ab_class_reduction",
            Circuit(3, [b, c, _g("X", 0), c, b]),
            Circuit(3, [_g("CNOT", 2, 1), _g("X", 0), _g("CNOT", 1, 2), b, c]),
        ),
        IdentityCase(
            "abc_class_reduction",
            Circuit(3, [a, b, c, _g("X", 0), c, b, a]),
            Circuit(
                3,
                [
                    _g("CNOT", 2, 1), _g("CNOT", 2, 0), _g("CNOT", 1, 2), _g("CNOT", 2, 0),
                    b, c,
                    _g("CNOT", 2, 0), _g("CNOT", 1, 0), _g("X", 0),
                ],
            ),
        ),
        IdentityCase(
            # the abc rewrite also settles abca: X0 commutes with a
            "abca_class_reduction",
            Circuit(3, [a, b, c, a, _g("X", 0), a, c, b, a]),
            Circuit(3, [a, b, c, _g("X", 0), c, b, a]),
        ),
        IdentityCase(
            "abac_class_reduction",
            Circuit(3, [b, a, b, c, _g("X", 0), c, b, a, b]),
            Circuit(
                3,
                [
                    _g("X", 0), _g("CNOT", 1, 2), _g("CNOT", 2, 1), _g("SWAP", 0, 2),
                    a, b, c, a,
                    _g("SWAP", 0, 2), _g("CNOT", 2, 0),
                ],
            ),
        ),
        IdentityCase(
            "abcab_class_reduction",
            Circuit(3, [a, b, c, a, b, _g("X", 2), b, a, c, b, a]),
            Circuit(
                3,
                [
                    _g("CNOT", 0, 1), _g("X", 2), _g("CNOT", 1, 0), _g("CNOT", 1, 2), _g("SWAP", 1, 2),
                    b, a, b, c,
                    _g("SWAP", 1, 2), _g("CNOT", 1, 2), _g("CNOT", 1, 0),
                ],
            ),
        ),
        IdentityCase(
            "abcabc_class_reduction",
            Circuit(3, [a, b, c, a, b, c, _g("X", 2), c, b, a, c, b, a]),
            Circuit(3, [a, b, c, a, b, _g("X", 2), b, a, c, b, a]),
        ),
    ]
    return cases


def toffoli_t_composite() -> MonomialGate:
    """The Toffoli followed by T on the target, as one monomial gate."""
    return to_monomial(Circuit(3, [_g("CCX", 0, 1, 2), _g("T", 2)]))


def run_identity_suite(engine: HierarchyEngine | None = None) -> dict:
    engine = engine or HierarchyEngine()
    results = []
    ok = True
    for case in identity_cases():
        holds = case.holds()
        ok = ok and holds
        results.append({"name": case.name, "holds": holds})
    composite = toffoli_t_composite()
    verdict = engine.level(composite)
    level4 = verdict.status == "in_ch" and verdict.level == 4
    ok = ok and level4
    results.append({
        "name": "toffoli_t_composite_level",
        "holds": level4,
        "verdict": verdict.to_json(),
    })
    conjugate = to_monomial(
        Circuit(3, [_g("CCX", 0, 1, 2), _g("T", 2), _g("X", 2), _g("TDG", 2), _g("CCX", 0, 1, 2)])
    )
    cv = engine.level(conjugate)
    holds3 = cv.status == "in_ch" and cv.level == 3
    ok = ok and holds3
    results.append({
        "name": "toffoli_t_conjugate_level",
        "holds": holds3,
        "verdict": cv.to_json(),
    })
    return {"all_hold": ok, "cases": results}
