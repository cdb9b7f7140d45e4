"""The equation a1*x + a2*y + a3*z = b over Z_p and the rainbow scan."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Tuple

from .coloring import AffineMap, Coloring
from .zp import DomainError, inverse, is_prime


class EquationParseError(ValueError):
    pass


@dataclass(frozen=True)
class Equation:
    p: int
    a1: int
    a2: int
    a3: int
    b: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise DomainError(f"modulus must be prime, got {self.p}")
        for name in ("a1", "a2", "a3", "b"):
            object.__setattr__(self, name, getattr(self, name) % self.p)
        if self.a1 * self.a2 * self.a3 % self.p == 0:
            raise DomainError("coefficients must all be nonzero mod p")

    @property
    def coeffs(self) -> Tuple[int, int, int]:
        return self.a1, self.a2, self.a3

    @property
    def all_equal(self) -> bool:
        return self.a1 == self.a2 == self.a3

    def scaled(self, lam: int) -> "Equation":
        return Equation(self.p, lam * self.a1, lam * self.a2, lam * self.a3, lam * self.b)

    def with_b(self, b: int) -> "Equation":
        return Equation(self.p, self.a1, self.a2, self.a3, b)

    def evaluate(self, x: int, y: int, z: int) -> int:
        return (self.a1 * x + self.a2 * y + self.a3 * z) % self.p

    def to_text(self) -> str:
        return f"p={self.p};eq={self.a1},{self.a2},{self.a3},{self.b}"

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def parse(cls, text: str) -> "Equation":
        return parse_equation(text)


_EQ_RE = re.compile(r"^\s*p\s*=\s*(-?\d+)\s*;\s*eq\s*=\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*$")


def parse_equation(text: str) -> Equation:
    """Parse ``p=<p>;eq=<a1>,<a2>,<a3>,<b>``; negative entries are reduced mod p."""
    m = _EQ_RE.match(text)
    if not m:
        raise EquationParseError(f"cannot parse equation {text!r}")
    p, a1, a2, a3, b = (int(g) for g in m.groups())
    try:
        return Equation(p, a1, a2, a3, b)
    except DomainError as exc:
        raise EquationParseError(str(exc)) from None


@dataclass(frozen=True)
class SolutionTriple:
    x: int
    y: int
    z: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return self.x, self.y, self.z


def coeff_sum(eq: Equation) -> int:
    return (eq.a1 + eq.a2 + eq.a3) % eq.p


def normalize_b(eq: Equation) -> Tuple[Equation, AffineMap]:
    """Move b to 0 by the translation x -> x - b/(a1+a2+a3).

    A coloring is rainbow-free for ``eq`` iff its image under the returned
    map is rainbow-free for the returned equation.
    """
    a = coeff_sum(eq)
    if a == 0:
        raise DomainError("no translation normal form: coefficient sum is 0")
    t = -eq.b * inverse(a, eq.p)
    return eq.with_b(0), AffineMap(1, t, eq.p)


def solve_z(eq: Equation, x: int, y: int) -> int:
    return (eq.b - eq.a1 * x - eq.a2 * y) * inverse(eq.a3, eq.p) % eq.p


def find_rainbow(eq: Equation, c: Coloring) -> Optional[SolutionTriple]:
    """First rainbow solution in row-major (x, y) order, or None."""
    if c.p != eq.p:
        raise DomainError("equation and coloring live over different moduli")
    p = eq.p
    inv3 = inverse(eq.a3, p)
    labels = c.labels
    for x in range(p):
        lx = labels[x]
        base = eq.b - eq.a1 * x
        for y in range(p):
            ly = labels[y]
            if ly == lx:
                continue
            z = (base - eq.a2 * y) * inv3 % p
            lz = labels[z]
            if lz != lx and lz != ly:
                return SolutionTriple(x, y, z)
    return None


def is_rainbow_free(eq: Equation, c: Coloring) -> bool:
    return find_rainbow(eq, c) is None
