import random

from chx.exact import (
    DEFAULT_M,
    ExactMatrix,
    ExactScalar,
    as_monomial,
    equal_up_to_global_phase,
    mat_mul,
)
from chx.phase import DyadicPhase
from chx.circuits import Circuit, Gate, evaluate_exact
from chx.monomial import MonomialGate

from conftest import pauli_matrix, scalar_i


def circ(n, *gates):
    return evaluate_exact(Circuit(n, [Gate.make(name, qs) for name, qs in gates]))


def test_scalar_sqrt2_normalization():
    # (1 + i)/sqrt(2) reduces to the primitive eighth root of unity
    one_plus_i = ExactScalar.one() + scalar_i()
    s = ExactScalar(one_plus_i.coeffs, 1, one_plus_i.m)
    assert s.as_root_of_unity() == 1 << (DEFAULT_M - 3)


def test_scalar_conjugate_is_involution():
    rng = random.Random(5)
    for _ in range(50):
        coeffs = [rng.randrange(-3, 4) for _ in range(1 << (DEFAULT_M - 1))]
        s = ExactScalar(coeffs, rng.randrange(3), DEFAULT_M)
        assert s.conjugate().conjugate() == s


def test_identity_products():
    I2 = ExactMatrix.identity(2)
    assert mat_mul(I2, I2) == I2
    assert circ(1, ("H", (0,)), ("H", (0,))) == I2
    ccx2 = circ(3, ("CCX", (0, 1, 2)), ("CCX", (0, 1, 2)))
    assert ccx2 == ExactMatrix.identity(8)


def test_unitarity():
    for gates in [[("H", (0,))], [("T", (0,))], [("S", (0,))]]:
        assert circ(1, *gates).is_unitary()
    assert circ(2, ("CNOT", (0, 1))).is_unitary()


def test_t_is_a_z_rotation_up_to_phase():
    # T equals exp(-i*pi/8*Z) up to a global eighth-root phase
    t = circ(1, ("T", (0,)))
    m = DEFAULT_M
    zrot = ExactMatrix(
        [
            [ExactScalar.from_phase(DyadicPhase.make(-1, 3), m), ExactScalar.zero(m)],
            [ExactScalar.zero(m), ExactScalar.from_phase(DyadicPhase.make(1, 3), m)],
        ],
        m,
    )
    assert equal_up_to_global_phase(t, zrot)
    assert not equal_up_to_global_phase(t, zrot.dagger())


def test_equal_up_to_global_phase_basic():
    x = pauli_matrix("X")
    z = pauli_matrix("Z")
    assert not equal_up_to_global_phase(x, z)
    s = circ(1, ("S", (0,)))
    assert equal_up_to_global_phase(s, s.scaled(ExactScalar.from_int(-1)))
    # scaling by a non-unit must not compare equal
    assert not equal_up_to_global_phase(s, s.scaled(ExactScalar.from_int(2)))


def test_mat_mul_associative_on_random_unitaries(rng):
    pool = [
        circ(2, ("H", (0,))),
        circ(2, ("CNOT", (0, 1))),
        circ(2, ("T", (1,))),
        circ(2, ("S", (0,)), ("H", (1,))),
        circ(2, ("CZ", (0, 1))),
    ]
    for _ in range(20):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


def test_as_monomial_examples():
    # X tensor T: permutation swapping the first-qubit blocks with T phases
    m = circ(2, ("X", (0,)), ("T", (1,)))
    g = as_monomial(m)
    assert g is not None
    assert g.perm == (2, 3, 0, 1)
    assert [str(p) for p in g.phases] == ["0", "1/2^2 * pi", "0", "1/2^2 * pi"]

    assert as_monomial(circ(1, ("H", (0,)))) is None

    ccz = circ(3, ("CCZ", (0, 1, 2)))
    g = as_monomial(ccz)
    assert g is not None and g.is_diagonal
    assert str(g.phases[7]) == "pi"


def test_monomial_matrix_round_trip(rng):
    for _ in range(40):
        n = rng.randrange(1, 3)
        dim = 1 << n
        perm = list(range(dim))
        rng.shuffle(perm)
        phases = tuple(DyadicPhase.make(rng.randrange(-8, 9), 3) for _ in range(dim))
        g = MonomialGate(tuple(perm), phases)
        assert as_monomial(g.to_matrix()) == g


def test_dimension_guard():
    import pytest

    with pytest.raises(ValueError):
        ExactMatrix.identity(128)
