"""Dense exact matrices over Z[zeta, 1/sqrt(2)] with zeta a 2^m-th root of unity.

A scalar is a coefficient vector over the powers zeta^0..zeta^(2^(m-1)-1)
(reduced by zeta^(2^(m-1)) = -1) divided by sqrt(2)^t. Everything is integer
arithmetic, so matrix identities are decided exactly. m defaults to 5 (32nd
roots of unity), enough for pi/16 rotations; it is promoted lazily when a
finer phase is parsed.
"""

from __future__ import annotations

from .phase import DyadicPhase

DEFAULT_M = 5
MAX_DIM = 64  # dimensions beyond 2^6 are out of scope


class ExactScalar:
    """An element (sum_j coeffs[j] * zeta^j) / sqrt(2)^t of the cyclotomic ring."""

    __slots__ = ("coeffs", "t", "m", "_hash")

    def __init__(self, coeffs, t: int, m: int, _normalized: bool = False):
        if not _normalized:
            coeffs, t = _normalize(list(coeffs), t, m)
        self.coeffs = tuple(coeffs)
        self.t = t
        self.m = m
        self._hash = hash((self.coeffs, self.t, self.m))

    @classmethod
    def zero(cls, m: int = DEFAULT_M) -> "ExactScalar":
        return cls((0,) * (1 << (m - 1)), 0, m, _normalized=True)

    @classmethod
    def one(cls, m: int = DEFAULT_M) -> "ExactScalar":
        return cls.root(0, m)

    @classmethod
    def root(cls, r: int, m: int = DEFAULT_M) -> "ExactScalar":
        """zeta^r for the primitive 2^m-th root of unity zeta."""
        half = 1 << (m - 1)
        r %= 2 * half
        coeffs = [0] * half
        if r < half:
            coeffs[r] = 1
        else:
            coeffs[r - half] = -1
        return cls(coeffs, 0, m, _normalized=True)

    @classmethod
    def from_int(cls, value: int, m: int = DEFAULT_M) -> "ExactScalar":
        half = 1 << (m - 1)
        coeffs = [0] * half
        coeffs[0] = value
        return cls(coeffs, 0, m)

    @classmethod
    def inv_sqrt2(cls, m: int = DEFAULT_M) -> "ExactScalar":
        half = 1 << (m - 1)
        coeffs = [0] * half
        coeffs[0] = 1
        return cls(coeffs, 1, m, _normalized=True)

    @classmethod
    def from_phase(cls, phase: DyadicPhase, m: int = DEFAULT_M) -> "ExactScalar":
        """e^{i * phase} as a root of unity; promotes m if the phase is finer."""
        m = max(m, phase.log2_den + 1)
        r = phase.num * (1 << (m - 1 - phase.log2_den))
        return cls.root(r, m)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def promoted(self, m: int) -> "ExactScalar":
        if m == self.m:
            return self
        if m < self.m:
            raise ValueError("cannot demote scalar")
        step = 1 << (m - self.m)
        coeffs = [0] * (1 << (m - 1))
        for j, c in enumerate(self.coeffs):
            coeffs[j * step] = c
        return ExactScalar(coeffs, self.t, m, _normalized=True)

    def _common(self, other: "ExactScalar") -> tuple["ExactScalar", "ExactScalar"]:
        m = max(self.m, other.m)
        return self.promoted(m), other.promoted(m)

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        a, b = self._common(other)
        if a.t < b.t:
            a = a._with_larger_t(b.t)
        elif b.t < a.t:
            b = b._with_larger_t(a.t)
        return ExactScalar([x + y for x, y in zip(a.coeffs, b.coeffs)], a.t, a.m)

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        return self + (-other)

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(tuple(-c for c in self.coeffs), self.t, self.m, _normalized=True)

    def _with_larger_t(self, t: int) -> "ExactScalar":
        # multiply numerator by sqrt(2)^(t - self.t) without renormalizing
        delta = t - self.t
        coeffs = list(self.coeffs)
        if delta // 2:
            factor = 1 << (delta // 2)
            coeffs = [c * factor for c in coeffs]
        if delta % 2:
            coeffs = _mul_sqrt2(coeffs, self.m)
        return ExactScalar(coeffs, t, self.m, _normalized=True)

    def __mul__(self, other: "ExactScalar") -> "ExactScalar":
        a, b = self._common(other)
        half = 1 << (a.m - 1)
        out = [0] * half
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    if bj:
                        k = i + j
                        if k >= half:
                            out[k - half] -= ai * bj
                        else:
                            out[k] += ai * bj
        return ExactScalar(out, a.t + b.t, a.m)

    def conjugate(self) -> "ExactScalar":
        half = 1 << (self.m - 1)
        out = [0] * half
        out[0] = self.coeffs[0]
        for j in range(1, half):
            out[half - j] -= self.coeffs[j]
        return ExactScalar(out, self.t, self.m, _normalized=True)

    def as_root_of_unity(self) -> int | None:
        """Return r if this scalar equals zeta^r exactly, else None."""
        if self.t != 0:
            return None
        r = None
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if r is not None or c not in (1, -1):
                return None
            r = j if c == 1 else j + (1 << (self.m - 1))
        return r

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        a, b = self._common(other)
        return a.t == b.t and a.coeffs == b.coeffs

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        terms = [f"{c}*z^{j}" for j, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"({body})/sqrt2^{self.t}" if self.t else f"({body})"


def _mul_sqrt2(coeffs: list[int], m: int) -> list[int]:
    # sqrt(2) = zeta_8 + zeta_8^{-1} = zeta^q - zeta^{3q} with q = 2^(m-3)
    if m < 3:
        raise ValueError("sqrt(2) needs m >= 3")
    half = 1 << (m - 1)
    q = 1 << (m - 3)
    out = [0] * half
    for j, c in enumerate(coeffs):
        if not c:
            continue
        for shift, sign in ((q, 1), (3 * q, -1)):
            k = j + shift
            s = sign * c
            if k >= half:
                k -= half
                s = -s
            out[k] += s
    return out


def _normalize(coeffs: list[int], t: int, m: int) -> tuple[list[int], int]:
    if all(c == 0 for c in coeffs):
        return [0] * len(coeffs), 0
    while t > 0:
        w = _mul_sqrt2(coeffs, m)
        if any(c % 2 for c in w):
            break
        coeffs = [c // 2 for c in w]
        t -= 1
    return coeffs, t


class ExactMatrix:
    """Dense matrix of ExactScalar entries with a uniform root order 2^m."""

    __slots__ = ("dim", "m", "rows")

    def __init__(self, rows, m: int | None = None):
        rows = [list(r) for r in rows]
        dim = len(rows)
        if dim > MAX_DIM:
            raise ValueError(f"dimension {dim} exceeds supported maximum {MAX_DIM}")
        if any(len(r) != dim for r in rows):
            raise ValueError("matrix must be square")
        if m is None:
            m = max((s.m for r in rows for s in r), default=DEFAULT_M)
        self.m = m
        self.rows = tuple(
            tuple(s.promoted(m) if s.m != m else s for s in r) for r in rows
        )
        self.dim = dim

    @classmethod
    def identity(cls, dim: int, m: int = DEFAULT_M) -> "ExactMatrix":
        one, zero = ExactScalar.one(m), ExactScalar.zero(m)
        return cls([[one if i == j else zero for j in range(dim)] for i in range(dim)], m)

    @classmethod
    def zero(cls, dim: int, m: int = DEFAULT_M) -> "ExactMatrix":
        z = ExactScalar.zero(m)
        return cls([[z] * dim for _ in range(dim)], m)

    def __getitem__(self, idx: tuple[int, int]) -> ExactScalar:
        return self.rows[idx[0]][idx[1]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.dim != other.dim:
            return False
        a, b = self, other
        if a.m != b.m:
            m = max(a.m, b.m)
            a, b = a.promoted(m), b.promoted(m)
        return a.rows == b.rows

    def __hash__(self) -> int:
        return hash((self.dim, self.m, self.rows))

    def promoted(self, m: int) -> "ExactMatrix":
        if m == self.m:
            return self
        return ExactMatrix([[s.promoted(m) for s in r] for r in self.rows], m)

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_mul(self, other)

    def dagger(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.rows[j][i].conjugate() for j in range(self.dim)] for i in range(self.dim)],
            self.m,
        )

    def is_unitary(self) -> bool:
        return mat_mul(self, self.dagger()) == ExactMatrix.identity(self.dim, self.m)

    def scaled(self, scalar: ExactScalar) -> "ExactMatrix":
        return ExactMatrix([[scalar * s for s in r] for r in self.rows])

    def canonical_projective(self) -> "ExactMatrix":
        """A canonical representative of the ray {lambda*M : |lambda| = 1}.

        Scaling by the conjugate of the first nonzero entry maps every member
        of the ray to the same matrix, which makes rays hashable.
        """
        for r in self.rows:
            for s in r:
                if not s.is_zero:
                    return self.scaled(s.conjugate())
        return self

    def __repr__(self) -> str:
        body = "\n".join("  [" + ", ".join(repr(s) for s in r) + "]" for r in self.rows)
        return f"ExactMatrix({self.dim}x{self.dim}, 2^{self.m}-th roots:\n{body}\n)"


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    m = max(a.m, b.m)
    a, b = a.promoted(m), b.promoted(m)
    zero = ExactScalar.zero(m)
    out = [[zero] * a.dim for _ in range(a.dim)]
    for i in range(a.dim):
        arow = a.rows[i]
        orow = out[i]
        for k in range(a.dim):
            aik = arow[k]
            if aik.is_zero:
                continue
            brow = b.rows[k]
            for j in range(a.dim):
                bkj = brow[j]
                if not bkj.is_zero:
                    orow[j] = orow[j] + aik * bkj
    return ExactMatrix(out, m)


def equal_up_to_global_phase(a: ExactMatrix, b: ExactMatrix) -> bool:
    """True iff a = lambda*b for a unit scalar lambda (|lambda| = 1)."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    m = max(a.m, b.m)
    a, b = a.promoted(m), b.promoted(m)
    ref = None
    for i in range(a.dim):
        for j in range(a.dim):
            if not b.rows[i][j].is_zero:
                ref = (i, j)
                break
        if ref:
            break
    if ref is None:
        return all(s.is_zero for r in a.rows for s in r)
    i0, j0 = ref
    aref, bref = a.rows[i0][j0], b.rows[i0][j0]
    if aref.is_zero:
        return False
    # |lambda| = 1  <=>  |a_ref|^2 == |b_ref|^2
    if aref * aref.conjugate() != bref * bref.conjugate():
        return False
    for i in range(a.dim):
        for j in range(a.dim):
            if a.rows[i][j] * bref != b.rows[i][j] * aref:
                return False
    return True


def as_monomial(a: ExactMatrix):
    """Extract a MonomialGate if the matrix is monomial with root-of-unity
    entries after fixing the global phase to make row 0's entry equal 1.

    Returns None otherwise.
    """
    from .monomial import MonomialGate

    dim = a.dim
    n = dim.bit_length() - 1
    if 1 << n != dim:
        return None
    perm = [-1] * dim
    col_of_row = [-1] * dim
    for i in range(dim):
        for j in range(dim):
            if not a.rows[i][j].is_zero:
                if col_of_row[i] != -1 or perm[j] != -1:
                    return None
                col_of_row[i] = j
                perm[j] = i
    if -1 in perm:
        return None
    ref = a.rows[0][col_of_row[0]]
    order = 1 << a.m
    # entry == zeta^r * ref for some r; precompute the candidates once
    candidates = {}
    for r in range(order):
        candidates[ExactScalar.root(r, a.m) * ref] = r
    phases = []
    for j in range(dim):
        entry = a.rows[perm[j]][j]
        r = candidates.get(entry)
        if r is None:
            return None
        phases.append(DyadicPhase.make(r, a.m - 1))
    return MonomialGate(tuple(perm), tuple(phases))
