import pytest

from chx.circuits import Circuit, Gate, to_monomial
from chx.clifford import CliffordTableau, from_circuit
from chx.diagonal import DiagonalGate, controlled_phase_gate
from chx.groups import (
    GroupElementForm,
    canonicalize,
    check_gsc_group,
    check_semi_clifford_group,
    classify_double_cosets,
    closure,
    matrix_closure,
    perm_tuple_closure,
    validate_recipe,
)
from chx.hierarchy import HierarchyEngine
from chx.identities import clifford_perm_generators, toffoli_word_generators, word_perm
from chx.monomial import MonomialGate
from chx.pauli import PauliString
from chx.phase import ZERO_PHASE, DyadicPhase

P = DyadicPhase.make
g = Gate.make


def mono(n, *gates):
    return to_monomial(Circuit(n, [Gate.make(name, qs) for name, qs in gates]))


def test_closure_orders():
    x = mono(1, ("X", (0,)))
    assert closure([x]).order == 2
    t = mono(1, ("T", (0,)))
    result = closure([x, t])
    assert result.order == 16 and not result.truncated


def test_closure_truncation_flag():
    x = mono(1, ("X", (0,)))
    t = mono(1, ("T", (0,)))
    result = closure([x, t], cap=5)
    assert result.truncated and result.order == 5


def test_toffoli_group_order_vs_independent_oracle():
    gens = toffoli_word_generators()
    words, truncated = perm_tuple_closure(gens)
    assert not truncated

    # independent oracle: plain set-based multiplication closure on tuples
    def compose(a, b):
        return tuple(a[b[j]] for j in range(len(a)))

    els = set(gens.values())
    frontier = list(els)
    while frontier:
        new = []
        for a in gens.values():
            for b in frontier:
                c = compose(a, b)
                if c not in els:
                    els.add(c)
                    new.append(c)
        frontier = new
    assert len(words) == len(els | {tuple(range(8))}) == 24


def test_mixed_closure_falls_back_to_matrices():
    from chx.circuits import evaluate_exact

    h = evaluate_exact(Circuit(1, [g("H", (0,))]))
    s = evaluate_exact(Circuit(1, [g("S", (0,))]))
    result = matrix_closure([h, s])
    assert result.order == 24  # single-qubit Clifford group mod phase
    assert not result.truncated


def test_check_sc_examples():
    i2 = CliffordTableau.identity(2)
    id2 = MonomialGate.identity(2)
    cnot = from_circuit(Circuit(2, [g("CNOT", (0, 1))]))
    el1 = GroupElementForm(i2, id2, ((PauliString.from_text("ZI"), P(1, 3)),))
    el2 = GroupElementForm(cnot, id2, ((PauliString.from_text("ZZ"), P(1, 3)),))
    report = check_semi_clifford_group([el1, el2])
    assert report.passed
    assert set(report.stabilizer) == {"ZI", "ZZ"}

    h1 = from_circuit(Circuit(1, [g("H", (0,))]))
    id1 = MonomialGate.identity(1)
    bad = GroupElementForm(h1, id1, ((PauliString.from_text("Z"), P(1, 3)),))
    report = check_semi_clifford_group([bad])
    assert not report.passed and report.failures[0]["kind"] == "normalizer"

    i1 = CliffordTableau.identity(1)
    pair = [
        GroupElementForm(i1, id1, ((PauliString.from_text("X"), P(1, 3)),)),
        GroupElementForm(i1, id1, ((PauliString.from_text("Z"), P(1, 3)),)),
    ]
    report = check_semi_clifford_group(pair)
    assert not report.passed and report.failures[0]["kind"] == "anticommuting_axes"


def test_form_validation():
    i1 = CliffordTableau.identity(1)
    id1 = MonomialGate.identity(1)
    with pytest.raises(ValueError):
        GroupElementForm(i1, id1, ((PauliString.from_text("Z"), P(1, 2)),))  # Clifford angle
    with pytest.raises(ValueError):
        GroupElementForm(i1, id1, ((PauliString.from_text("Z"), ZERO_PHASE),))
    with pytest.raises(ValueError):
        GroupElementForm(
            i1, id1,
            ((PauliString.from_text("Z"), P(1, 3)), (PauliString.from_text("-Z"), P(1, 3))),
        )


def test_gsc_negative_pair():
    i3 = CliffordTableau.identity(3)
    a = MonomialGate.from_perm(word_perm("a"))
    b = MonomialGate.from_perm(word_perm("b"))
    report = check_gsc_group([GroupElementForm(i3, a, ()), GroupElementForm(i3, b, ())])
    assert report.status == "fail"
    assert report.failures[0]["kind"] == "permutation_not_in_ch"
    assert report.failures[0]["word"] == "ab"


def test_gsc_positive_group():
    i3 = CliffordTableau.identity(3)
    id3 = MonomialGate.identity(3)
    elements = []
    for gates in [
        [g("CCX", (0, 1, 2))], [g("CNOT", (0, 1))], [g("CNOT", (1, 0))],
        [g("X", (0,))], [g("X", (1,))],
    ]:
        elements.append(GroupElementForm(i3, to_monomial(Circuit(3, gates)), ()))
    for qs in [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]:
        d = controlled_phase_gate(3, qs, P(1, 2))
        elements.append(canonicalize(i3, id3, d, i3))
    report = check_gsc_group(elements)
    assert report.passed
    assert report.detail["perm_closure_order"] == 384
    assert report.detail["permutations_certified"] == 384


def test_gsc_perm_normalizer_restriction():
    # a permutation that moves the stabilized qubit based on the free qubits
    i3 = CliffordTableau.identity(3)
    ccx_target0 = mono(3, ("CCX", (1, 2, 0)))
    el_rot = GroupElementForm(i3, MonomialGate.identity(3), ((PauliString.from_text("ZII"), P(1, 3)),))
    el_perm = GroupElementForm(i3, ccx_target0, ())
    report = check_gsc_group([el_rot, el_perm])
    assert report.status == "fail"
    assert report.failures[0]["kind"] == "perm_normalizer"


def test_gsc_reduces_to_sc_without_perms():
    i1 = CliffordTableau.identity(1)
    id1 = MonomialGate.identity(1)
    el = GroupElementForm(i1, id1, ((PauliString.from_text("Z"), P(1, 3)),))
    report = check_gsc_group([el])
    assert report.passed and "note" in report.detail


def test_canonicalize_examples():
    i1 = CliffordTableau.identity(1)
    id1 = MonomialGate.identity(1)
    t = DiagonalGate(1, (ZERO_PHASE, P(1, 2)))
    form = canonicalize(i1, id1, t, i1)
    assert [(str(a), str(ang)) for a, ang in form.rotations] == [("Z", "-1/2^3 * pi")]
    assert str(form.global_phase) == "1/2^3 * pi"

    s = DiagonalGate(1, (ZERO_PHASE, P(1, 1)))
    form = canonicalize(i1, id1, s, i1)
    assert form.rotations == ()
    s_tab = from_circuit(Circuit(1, [g("S", (0,))]))
    assert form.clifford == s_tab

    h = from_circuit(Circuit(1, [g("H", (0,))]))
    form = canonicalize(i1, id1, t, h)
    assert [(str(a), str(ang)) for a, ang in form.rotations] == [("X", "-1/2^3 * pi")]
    assert form.clifford == h


def test_canonicalize_splits_diagonal_between_rotations_and_clifford():
    # the rotations, mapped back to the computational frame, must reproduce
    # the non-Clifford content of D; whatever remains must be Clifford-level
    from chx.diagonal import ch_level_diag

    c1 = from_circuit(Circuit(2, [g("H", (0,)), g("CZ", (0, 1))]))
    c2_circ = Circuit(2, [g("CNOT", (1, 0)), g("S", (1,))])
    c2 = from_circuit(c2_circ)
    p = mono(2, ("SWAP", (0, 1)))
    d = DiagonalGate(2, (ZERO_PHASE, P(1, 3), P(1, 1), P(3, 3)))
    form = canonicalize(c1, p, d, c2)
    assert form.perm == p
    sigma = MonomialGate.identity(2)
    for axis, angle in form.rotations:
        img = c2.apply(axis)  # back to a signed Z string in the computational frame
        assert img.x == 0
        rot_phases = []
        for x in range(4):
            sign = -1 if (x & img.z).bit_count() % 2 else 1
            rot_phases.append(angle.scaled(sign * img.sign))
        sigma = sigma.mul(MonomialGate.from_diag(tuple(rot_phases)))
    residual = d.to_monomial().mul(sigma.inverse())
    assert residual.is_diagonal
    assert ch_level_diag(DiagonalGate.from_monomial(residual)).level <= 2


def test_double_coset_partition():
    amb = dict(toffoli_word_generators())
    amb.update(clifford_perm_generators(3))
    sub = clifford_perm_generators(3)
    report = classify_double_cosets(amb, sub, cap=10**6)
    assert report.ambient_order == 40320
    assert report.subgroup_order == 1344
    total = sum(c.size for c in report.classes)
    assert total == report.ambient_order  # partition covers everything
    # identity class is the subgroup itself
    ident_class = report.classes[report.class_of(tuple(range(8)))]
    assert ident_class.size == 1344 and ident_class.word == ""


def test_double_coset_trivial_cases():
    sub = clifford_perm_generators(2)
    report = classify_double_cosets(dict(sub), dict(sub), cap=10**5)
    assert len(report.classes) == 1
    a = {"a": word_perm("a")}
    trivial = {"e": tuple(range(8))}
    report = classify_double_cosets(a, trivial, cap=10**5)
    assert all(c.size == 1 for c in report.classes)


def test_subgroup_outside_ambient_rejected():
    with pytest.raises(ValueError):
        classify_double_cosets({"a": word_perm("a")}, clifford_perm_generators(3), cap=10**5)


def test_validate_recipe():
    ok = validate_recipe({
        "n": 2, "clifford_qubits": [1],
        "generators": [{"diag_support": [0], "diag_level": 3}],
        "cross_gates": [{"controls": [0], "target": 1}],
    })
    assert ok == []

    bad = validate_recipe({
        "n": 2, "clifford_qubits": [1],
        "generators": [{"diag_support": [0], "diag_level": 3}],
        "cross_gates": [{"controls": [1], "target": 0}],
    })
    assert [f.rule for f in bad] == ["control-on-clifford-target-on-non-clifford"]

    toffoli = validate_recipe({
        "n": 3, "clifford_qubits": [1, 2],
        "generators": [{"diag_support": [0], "diag_level": 3}],
        "cross_gates": [{"controls": [0, 1], "target": 2}],
    })
    assert [f.severity for f in toffoli] == ["error"]
    assert toffoli[0].rule == "target-and-control-on-clifford-qubits"

    relaxed = validate_recipe({
        "n": 3, "clifford_qubits": [1, 2], "assume_full_clifford": False,
        "cross_gates": [{"controls": [0, 1], "target": 2}],
    })
    assert [f.severity for f in relaxed] == ["warning"]

    fully_clifford = validate_recipe({
        "n": 4, "clifford_qubits": [1, 2, 3],
        "cross_gates": [{"controls": [1, 2], "target": 3}],
    })
    assert [f.rule for f in fully_clifford] == ["non-clifford-permutation-fully-on-clifford-qubits"]

    misplaced = validate_recipe({
        "n": 2, "clifford_qubits": [1],
        "generators": [{"diag_support": [0, 1], "diag_level": 3}],
    })
    assert [f.rule for f in misplaced] == ["non-clifford-diagonal-on-clifford-qubit"]


def test_sc_pass_closure_stays_in_hierarchy():
    # a passing group's closure contains only hierarchy gates (small case)
    eng = HierarchyEngine()
    x = mono(1, ("X", (0,)))
    t = mono(1, ("T", (0,)))
    for element in closure([x, t]).elements:
        assert eng.level(element).status == "in_ch"
