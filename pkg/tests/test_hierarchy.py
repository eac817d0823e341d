from chx.circuits import Circuit, Gate, to_monomial
from chx.clifford import CliffordTableau, from_circuit, is_clifford_monomial
from chx.diagonal import DiagonalGate, ch_level_diag
from chx.hierarchy import HierarchyEngine, conjugation_closure
from chx.identities import toffoli_t_composite, word_perm
from chx.monomial import MonomialGate
from chx.phase import ZERO_PHASE, DyadicPhase

from conftest import MatrixLevelOracle


def mono(n, *gates):
    return to_monomial(Circuit(n, [Gate.make(name, qs) for name, qs in gates]))


def test_reference_levels():
    eng = HierarchyEngine()
    assert eng.level(mono(1, ("T", (0,)))).level == 3
    assert eng.level(mono(1, ("S", (0,)))).level == 2
    assert eng.level(mono(1, ("X", (0,)))).level == 1
    assert eng.level(mono(2, ("CNOT", (0, 1)))).level == 2
    assert eng.level(mono(3, ("CCX", (0, 1, 2)))).level == 3
    assert eng.level(MonomialGate.identity(2)).level == 1


def test_toffoli_t_composite_is_level_4():
    eng = HierarchyEngine()
    v = eng.level(toffoli_t_composite())
    assert v.status == "in_ch" and v.level == 4


def test_not_in_ch_classes():
    eng = HierarchyEngine()
    for word in ["ab", "abc", "abca", "abac", "abcab", "abcabc"]:
        v = eng.perm_level(MonomialGate.from_perm(word_perm(word)))
        assert v.status == "not_in_ch", word
    for word in ["a", "aba"]:
        v = eng.perm_level(MonomialGate.from_perm(word_perm(word)))
        assert v.status == "in_ch" and v.level == 3


def test_perm_level_examples():
    eng = HierarchyEngine()
    swap = mono(2, ("SWAP", (0, 1)))
    assert eng.perm_level(swap).level == 2
    ccx = mono(3, ("CCX", (0, 1, 2)))
    assert eng.perm_level(ccx).level == 3


def test_perm_level_agrees_with_full_engine(rng):
    eng = HierarchyEngine()
    perms = [
        mono(3, ("CCX", (0, 1, 2))),
        mono(3, ("CCX", (1, 2, 0)), ("CNOT", (0, 1))),
        mono(3, ("CNOT", (0, 2)), ("X", (1,))),
        MonomialGate.from_perm(word_perm("ab")),
        MonomialGate.from_perm(word_perm("abac")),
    ]
    for _ in range(5):
        p = list(range(8))
        rng.shuffle(p)
        perms.append(MonomialGate.from_perm(tuple(p)))
    for g in perms:
        fast = eng.perm_level(g)
        slow = eng.level(g)
        assert fast.status == slow.status
        assert fast.level == slow.level


def test_engine_matches_matrix_oracle_1q():
    eng = HierarchyEngine()
    oracle = MatrixLevelOracle(1)
    angles = [ZERO_PHASE, DyadicPhase.make(1, 1), DyadicPhase.make(1, 2),
              DyadicPhase.make(1, 3), DyadicPhase.make(3, 3), DyadicPhase.make(1, 0)]
    for perm in [(0, 1), (1, 0)]:
        for a in angles:
            g = MonomialGate(perm, (ZERO_PHASE, a))
            got = eng.level(g)
            want = oracle.level(g.to_matrix())
            assert got.level == want, g


def test_engine_matches_matrix_oracle_2q(rng):
    eng = HierarchyEngine()
    oracle = MatrixLevelOracle(2)
    for _ in range(8):
        perm = list(range(4))
        rng.shuffle(perm)
        phases = tuple(DyadicPhase.make(rng.randrange(-8, 8), 3) for _ in range(4))
        g = MonomialGate(tuple(perm), phases)
        got = eng.level(g)
        want = oracle.level(g.to_matrix())
        if want is None:
            assert got.status == "not_in_ch"
        else:
            assert got.level == want


def test_engine_matches_matrix_oracle_3q_key_cases():
    eng = HierarchyEngine()
    oracle = MatrixLevelOracle(3)
    cases = [
        mono(3, ("CCX", (0, 1, 2))),
        toffoli_t_composite(),
        mono(3, ("CCX", (0, 1, 2)), ("T", (2,)), ("X", (2,)), ("TDG", (2,)), ("CCX", (0, 1, 2))),
    ]
    for g in cases:
        want = oracle.level(g.to_matrix())
        got = eng.level(g)
        assert got.level == want


def test_closure_is_closed():
    from chx.pauli import PauliString

    g = mono(3, ("CCX", (0, 1, 2)))
    closure = conjugation_closure(g)
    elems = list(closure.elements)
    for h in elems:
        h_inv = h.inverse()
        for mx in range(8):
            for mz in range(8):
                if mx == 0 and mz == 0:
                    continue
                child = h.mul(MonomialGate.from_pauli(PauliString(3, mx, mz, 0))).mul(h_inv)
                assert child in closure.elements
    # every element is a signed permutation: phases only 0 or pi
    for h in elems:
        assert all(p.log2_den == 0 for p in h.phases)


def test_closure_of_t_stays_diagonal_times_pauli():
    g = mono(1, ("T", (0,)))
    closure = conjugation_closure(g)
    for h in closure.elements:
        perm, diag = h.split()
        assert perm.perm in ((0, 1), (1, 0))


def test_level2_coincides_with_clifford_check(rng):
    eng = HierarchyEngine()
    for _ in range(60):
        n = rng.randrange(1, 3)
        dim = 1 << n
        perm = list(range(dim))
        rng.shuffle(perm)
        phases = tuple(DyadicPhase.make(rng.randrange(-8, 8), 3) for _ in range(dim))
        g = MonomialGate(tuple(perm), phases)
        v = eng.level(g)
        assert (v.status == "in_ch" and v.level <= 2) == is_clifford_monomial(g)


def test_monotone_nesting_on_closure():
    from chx.pauli import PauliString

    eng = HierarchyEngine()
    g = toffoli_t_composite()
    closure = conjugation_closure(g)
    eng.level(g)
    for h in closure.elements:
        lvl = eng.cached_level(h)
        if lvl == "miss" or lvl is None:
            continue
        h_inv = h.inverse()
        for mx in range(8):
            for mz in range(8):
                if mx == mz == 0:
                    continue
                child = h.mul(MonomialGate.from_pauli(PauliString(3, mx, mz, 0))).mul(h_inv)
                child_lvl = eng.cached_level(child)
                assert child_lvl != "miss" and child_lvl is not None
                assert child_lvl <= max(lvl - 1, 1)


def test_clifford_conjugation_invariance(rng):
    eng = HierarchyEngine()
    cliff_monos = [
        mono(2, ("CNOT", (0, 1))),
        mono(2, ("S", (0,))),
        mono(2, ("X", (1,))),
        mono(2, ("CZ", (0, 1))),
    ]
    for _ in range(15):
        dim = 4
        perm = list(range(dim))
        rng.shuffle(perm)
        phases = tuple(DyadicPhase.make(rng.randrange(-8, 8), 3) for _ in range(dim))
        g = MonomialGate(tuple(perm), phases)
        c = rng.choice(cliff_monos)
        conj = c.mul(g).mul(c.inverse())
        v1, v2 = eng.level(g), eng.level(conj)
        assert v1.status == v2.status and v1.level == v2.level


def test_engine_agrees_with_diagonal_module(rng):
    eng = HierarchyEngine()
    for _ in range(50):
        n = rng.randrange(1, 4)
        phases = [ZERO_PHASE] + [
            DyadicPhase.make(rng.randrange(-8, 8), 3) for _ in range((1 << n) - 1)
        ]
        d = DiagonalGate(n, phases)
        assert eng.level(d.to_monomial()).level == ch_level_diag(d).level


def test_clifford_wrap_is_level_neutral():
    eng = HierarchyEngine()
    h = from_circuit(Circuit(1, [Gate.make("H", (0,))]))
    t = mono(1, ("T", (0,)))
    v = eng.level_with_clifford_wrap(h, t, h)
    assert v.level == 3
    i2 = CliffordTableau.identity(2)
    cnot = mono(2, ("CNOT", (0, 1)))
    assert eng.level_with_clifford_wrap(i2, cnot, i2).level == 2
    anyc = from_circuit(Circuit(3, [Gate.make("H", (0,)), Gate.make("CZ", (1, 2))]))
    ab = MonomialGate.from_perm(word_perm("ab"))
    assert eng.level_with_clifford_wrap(anyc, ab, anyc).status == "not_in_ch"


def test_abort_on_cap():
    eng = HierarchyEngine(closure_cap=5)
    g = toffoli_t_composite()
    v = eng.level(g)
    assert v.status == "aborted"


def test_qubit_cap():
    eng = HierarchyEngine(max_qubits=2)
    v = eng.level(mono(3, ("CCX", (0, 1, 2))))
    assert v.status == "aborted"
