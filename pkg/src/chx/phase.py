"""Exact arithmetic on dyadic multiples of pi.

An angle a*pi/2^k is stored as the integer pair (num=a, log2_den=k), reduced
so that num is odd (or the phase is exactly zero) and wrapped into the unique
representative modulo 2*pi. Equality of reduced phases therefore coincides
with equality of angles mod 2*pi. Numerators are plain Python integers, so
accumulation (e.g. during Walsh-Hadamard transforms) never overflows.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import NamedTuple


class NonDyadicAngleError(ValueError):
    """Raised when an angle is not an integer multiple of pi/2^k."""


@lru_cache(maxsize=1 << 18)
def _reduce(num: int, log2_den: int) -> tuple[int, int]:
    if num == 0:
        return (0, 0)
    while num % 2 == 0 and log2_den > 0:
        num //= 2
        log2_den -= 1
    if log2_den == 0:
        # multiples of pi: only 0 and pi survive mod 2*pi
        return (num % 2, 0)
    # odd num, wrap into (-2^k, 2^k], period 2^(k+1)
    period = 1 << (log2_den + 1)
    num %= period
    if num > (period >> 1):
        num -= period
    return (num, log2_den)


class DyadicPhase(NamedTuple):
    """The angle num*pi/2^log2_den, canonical modulo 2*pi."""

    num: int
    log2_den: int

    @classmethod
    def make(cls, num: int, log2_den: int) -> "DyadicPhase":
        if log2_den < 0:
            raise ValueError(f"log2_den must be >= 0, got {log2_den}")
        return cls(*_reduce(num, log2_den))

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    def __add__(self, other: "DyadicPhase") -> "DyadicPhase":  # type: ignore[override]
        k = max(self.log2_den, other.log2_den)
        num = (self.num << (k - self.log2_den)) + (other.num << (k - other.log2_den))
        return DyadicPhase(*_reduce(num, k))

    def __neg__(self) -> "DyadicPhase":
        return DyadicPhase(*_reduce(-self.num, self.log2_den))

    def __sub__(self, other: "DyadicPhase") -> "DyadicPhase":  # type: ignore[override]
        return self + (-other)

    def doubled(self) -> "DyadicPhase":
        return DyadicPhase(*_reduce(2 * self.num, self.log2_den))

    def scaled(self, factor: int) -> "DyadicPhase":
        return DyadicPhase(*_reduce(factor * self.num, self.log2_den))

    def level(self) -> int:
        """Hierarchy-level contribution of this angle as a Pauli-rotation angle.

        A reduced rotation angle pi/2^k sits at level k; zero and pi (which
        only produce a global sign) contribute 0.
        """
        return self.log2_den

    def to_json(self) -> dict:
        return {"num": self.num, "log2_den": self.log2_den}

    def __str__(self) -> str:
        if self.num == 0:
            return "0"
        if self.log2_den == 0:
            return "pi" if self.num == 1 else f"{self.num} * pi"
        return f"{self.num}/2^{self.log2_den} * pi"


ZERO_PHASE = DyadicPhase(0, 0)
PI = DyadicPhase(1, 0)


def reduce_phase(num: int, log2_den: int) -> DyadicPhase:
    return DyadicPhase.make(num, log2_den)


def add_phases(a: DyadicPhase, b: DyadicPhase) -> DyadicPhase:
    return a + b


def level_of_phase(a: DyadicPhase) -> int:
    return a.level()


_TEXT_RE = re.compile(
    r"^\s*(?P<sign>[+-])?\s*(?P<num>\d+)?\s*(?:/\s*(?:2\^(?P<k>\d+)|(?P<den>\d+)))?\s*(?:\*\s*)?pi\s*$",
    re.IGNORECASE,
)


def parse_phase(value) -> DyadicPhase:
    """Parse a phase from JSON ({"num", "log2_den"}), text ("a/2^k * pi"), or 0.

    Rational multiples of pi whose denominator is not a power of two are
    rejected with :class:`NonDyadicAngleError`.
    """
    if isinstance(value, DyadicPhase):
        return value
    if isinstance(value, int):
        if value == 0:
            return ZERO_PHASE
        raise NonDyadicAngleError(f"bare integer phase {value!r}; use 0 or 'a/2^k * pi'")
    if isinstance(value, dict):
        try:
            return DyadicPhase.make(int(value["num"]), int(value["log2_den"]))
        except KeyError as exc:
            raise NonDyadicAngleError(f"phase object missing key {exc}") from exc
    if isinstance(value, str):
        text = value.strip()
        if text == "0":
            return ZERO_PHASE
        m = _TEXT_RE.match(text)
        if not m:
            raise NonDyadicAngleError(f"cannot parse phase {value!r}")
        num = int(m.group("num")) if m.group("num") is not None else 1
        if m.group("sign") == "-":
            num = -num
        if m.group("k") is not None:
            return DyadicPhase.make(num, int(m.group("k")))
        if m.group("den") is not None:
            den = int(m.group("den"))
            if den <= 0 or den & (den - 1):
                raise NonDyadicAngleError(f"non-dyadic denominator {den} in {value!r}")
            return DyadicPhase.make(num, den.bit_length() - 1)
        return DyadicPhase.make(num, 0)
    raise NonDyadicAngleError(f"unsupported phase value {value!r}")
