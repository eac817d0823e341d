"""Shared test helpers: matrix-level brute-force oracles and random samplers.

The level oracle works directly on exact matrices from first principles
(Pauli membership by table lookup, higher levels by recursive conjugation
over all Pauli strings) so it is independent of the closure engine it checks.
"""

from __future__ import annotations

import random
from functools import lru_cache

import pytest

from chx.exact import DEFAULT_M, ExactMatrix, ExactScalar, mat_mul
from chx.pauli import PauliString, StabilizerTableau


def scalar_i(m: int = DEFAULT_M) -> ExactScalar:
    return ExactScalar.root(1 << (m - 2), m)


def _single_pauli(letter: str) -> list[list[ExactScalar]]:
    one, zero = ExactScalar.one(), ExactScalar.zero()
    i = scalar_i()
    return {
        "I": [[one, zero], [zero, one]],
        "X": [[zero, one], [one, zero]],
        "Y": [[zero, -i], [i, zero]],
        "Z": [[one, zero], [zero, -one]],
    }[letter]


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    m = max(a.m, b.m)
    a, b = a.promoted(m), b.promoted(m)
    dim = a.dim * b.dim
    rows = [[None] * dim for _ in range(dim)]
    for i1 in range(a.dim):
        for j1 in range(a.dim):
            for i2 in range(b.dim):
                for j2 in range(b.dim):
                    rows[i1 * b.dim + i2][j1 * b.dim + j2] = a.rows[i1][j1] * b.rows[i2][j2]
    return ExactMatrix(rows, m)


@lru_cache(maxsize=None)
def pauli_matrix(letters: str) -> ExactMatrix:
    out = ExactMatrix(_single_pauli(letters[0]))
    for ch in letters[1:]:
        out = kron(out, ExactMatrix(_single_pauli(ch)))
    return out


@lru_cache(maxsize=None)
def all_pauli_keys(n: int) -> frozenset:
    import itertools

    keys = set()
    for letters in itertools.product("IXYZ", repeat=n):
        keys.add(pauli_matrix("".join(letters)).canonical_projective())
    return frozenset(keys)


@lru_cache(maxsize=None)
def pauli_list(n: int) -> tuple:
    import itertools

    return tuple(
        pauli_matrix("".join(letters)) for letters in itertools.product("IXYZ", repeat=n)
    )


class MatrixLevelOracle:
    """Definition-chasing level computation over exact matrices."""

    def __init__(self, n: int, max_level: int = 7):
        self.n = n
        self.max_level = max_level
        self.cache: dict = {}

    def is_pauli(self, m: ExactMatrix) -> bool:
        return m.canonical_projective() in all_pauli_keys(self.n)

    def is_clifford(self, m: ExactMatrix) -> bool:
        md = m.dagger()
        for p in pauli_list(self.n):
            if not self.is_pauli(mat_mul(mat_mul(m, p), md)):
                return False
        return True

    def level(self, m: ExactMatrix) -> int | None:
        key = m.canonical_projective()
        if key in self.cache:
            return self.cache[key]
        if self.is_pauli(m):
            self.cache[key] = 1
            return 1
        if self.is_clifford(m):
            self.cache[key] = 2
            return 2
        self.cache[key] = None  # cycle guard: treated as undecided
        md = m.dagger()
        worst = 2
        for p in pauli_list(self.n):
            if p.canonical_projective() == ExactMatrix.identity(1 << self.n).canonical_projective():
                continue
            child = mat_mul(mat_mul(m, p), md)
            child_level = self.level(child)
            if child_level is None:
                self.cache[key] = None
                return None
            worst = max(worst, child_level)
            if worst >= self.max_level:
                self.cache[key] = None
                return None
        self.cache[key] = worst + 1
        return worst + 1


def random_hermitian_pauli(n: int, rng: random.Random) -> PauliString:
    while True:
        x, z = rng.randrange(1 << n), rng.randrange(1 << n)
        if x or z:
            return PauliString.hermitian(n, x, z, rng.choice((1, -1)))


def random_stabilizer_tableau(n: int, rank: int, rng: random.Random) -> StabilizerTableau:
    gens: list[PauliString] = []
    while len(gens) < rank:
        p = random_hermitian_pauli(n, rng)
        if not all(p.commutes(g) for g in gens):
            continue
        try:
            tab = StabilizerTableau(gens + [p])
        except ValueError:
            continue
        gens.append(p)
    return StabilizerTableau(gens)


@pytest.fixture
def rng():
    return random.Random(20240817)
