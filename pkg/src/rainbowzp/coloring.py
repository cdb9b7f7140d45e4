"""3-colorings of Z_p and affine maps x -> dx + t acting on them."""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .zp import DomainError, ResidueSet, inverse, is_periodic, is_prime, rset, translate


class Color(enum.IntEnum):
    A = 0
    B = 1
    C = 2


class ColoringParseError(ValueError):
    """Malformed coloring text.  ``code`` tells the failure kinds apart."""

    SYNTAX = "syntax"
    OVERLAP = "overlap"
    OMISSION = "omission"
    OUT_OF_RANGE = "out_of_range"
    EMPTY_CLASS = "empty_class"

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class Coloring:
    """Dense label array: ``labels[x]`` is the color (0, 1, 2) of residue x."""

    p: int
    labels: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise DomainError(f"modulus must be prime, got {self.p}")
        if len(self.labels) != self.p:
            raise DomainError("label array must have length p")
        if any(lab not in (0, 1, 2) for lab in self.labels):
            raise DomainError("labels must be 0, 1 or 2")
        if len(set(self.labels)) != 3:
            raise DomainError("all three color classes must be nonempty")

    @classmethod
    def from_classes(cls, p: int, A: Iterable[int], B: Iterable[int], C: Iterable[int]) -> "Coloring":
        labels: List[Optional[int]] = [None] * p
        for color, members in zip(Color, (A, B, C)):
            for x in members:
                x %= p
                if labels[x] is not None:
                    raise DomainError(f"residue {x} assigned twice")
                labels[x] = int(color)
        if any(lab is None for lab in labels):
            raise DomainError("some residue has no color")
        return cls(p, tuple(labels))  # type: ignore[arg-type]

    def __getitem__(self, x: int) -> int:
        return self.labels[x % self.p]

    def class_of(self, label: Union[Color, int]) -> ResidueSet:
        return tuple(x for x, lab in enumerate(self.labels) if lab == label)

    @property
    def classes(self) -> Tuple[ResidueSet, ResidueSet, ResidueSet]:
        return self.class_of(Color.A), self.class_of(Color.B), self.class_of(Color.C)

    def sorted_by_size(self) -> List[Tuple[Color, ResidueSet]]:
        """Classes by ascending size, ties broken by smallest element."""
        pairs = [(c, self.class_of(c)) for c in Color]
        return sorted(pairs, key=lambda cs: (len(cs[1]), cs[1][0]))

    def sizes(self) -> Tuple[int, int, int]:
        return tuple(len(cls) for cls in self.classes)  # type: ignore[return-value]

    def relabel(self, perm: Sequence[int]) -> "Coloring":
        """Send label i to ``perm[i]``."""
        return Coloring(self.p, tuple(perm[lab] for lab in self.labels))

    def canonical(self) -> "Coloring":
        """Lexicographically least label array over the six relabelings."""
        return min((self.relabel(perm) for perm in itertools.permutations(range(3))), key=lambda c: c.labels)

    def transform(self, m: "AffineMap") -> "Coloring":
        """Image coloring: residue m(x) receives the color of x."""
        labels = [0] * self.p
        for x, lab in enumerate(self.labels):
            labels[m(x)] = lab
        return Coloring(self.p, tuple(labels))

    def to_text(self) -> str:
        parts = [f"p={self.p}"]
        for c in Color:
            parts.append(f"{c.name}=" + ",".join(str(x) for x in self.class_of(c)))
        return ";".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def parse(cls, text: str) -> "Coloring":
        return parse_coloring(text)


_FIELD_RE = re.compile(r"^\s*([A-Za-z]+)\s*=\s*(.*?)\s*$")


def parse_coloring(text: str) -> Coloring:
    """Parse ``p=<p>;A=<list>;B=<list>;C=<list>``."""
    fields: Dict[str, str] = {}
    for chunk in text.strip().split(";"):
        m = _FIELD_RE.match(chunk)
        if not m:
            raise ColoringParseError(ColoringParseError.SYNTAX, f"bad field {chunk!r}")
        key = m.group(1)
        if key in fields:
            raise ColoringParseError(ColoringParseError.SYNTAX, f"duplicate field {key}")
        fields[key] = m.group(2)
    if set(fields) != {"p", "A", "B", "C"}:
        raise ColoringParseError(ColoringParseError.SYNTAX, "expected fields p, A, B, C")
    try:
        p = int(fields["p"])
        members = {c: [int(tok) for tok in fields[c.name].split(",") if tok.strip()] for c in Color}
    except ValueError as exc:
        raise ColoringParseError(ColoringParseError.SYNTAX, str(exc)) from None
    if not is_prime(p):
        raise ColoringParseError(ColoringParseError.SYNTAX, f"modulus {p} is not prime")

    labels: List[Optional[int]] = [None] * p
    for c, xs in members.items():
        if not xs:
            raise ColoringParseError(ColoringParseError.EMPTY_CLASS, f"class {c.name} is empty")
        for x in xs:
            if not 0 <= x < p:
                raise ColoringParseError(ColoringParseError.OUT_OF_RANGE, f"{x} not in [0, {p})")
            if labels[x] is not None:
                raise ColoringParseError(ColoringParseError.OVERLAP, f"{x} appears in more than one class")
            labels[x] = int(c)
    missing = [x for x, lab in enumerate(labels) if lab is None]
    if missing:
        raise ColoringParseError(ColoringParseError.OMISSION, f"residues without a color: {missing}")
    return Coloring(p, tuple(labels))  # type: ignore[arg-type]


EVERY_POINT = "all"


@dataclass(frozen=True)
class AffineMap:
    """x -> d*x + t over Z_p, d nonzero."""

    d: int
    t: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", self.d % self.p)
        object.__setattr__(self, "t", self.t % self.p)
        if self.d == 0:
            raise DomainError("affine map needs d != 0")

    def __call__(self, x: int) -> int:
        return (self.d * x + self.t) % self.p

    def fixed_point(self) -> Union[int, None, str]:
        """The unique fixed point; None for a nontrivial translation, ``EVERY_POINT`` for the identity."""
        if self.d == 1:
            return EVERY_POINT if self.t == 0 else None
        return self.t * inverse(1 - self.d, self.p) % self.p


def apply_affine(m: AffineMap, S: Iterable[int]) -> ResidueSet:
    return rset((m(x) for x in S), m.p)


def fixed_point(m: AffineMap) -> Union[int, None, str]:
    return m.fixed_point()


def is_invariant(m: AffineMap, S: Iterable[int]) -> bool:
    S = rset(S, m.p)
    return apply_affine(m, S) == S


def invariance_shift_equivalence(m: AffineMap, S: Iterable[int]) -> bool:
    """Invariance under m decided through periodicity of a shifted copy of S."""
    if m.d == 1:
        raise DomainError("shift equivalence needs d != 1")
    shifted = translate(S, m.t * inverse(m.d - 1, m.p), m.p)
    return is_periodic(shifted, m.d, m.p)
