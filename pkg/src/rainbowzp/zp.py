"""Arithmetic in Z_p and structural predicates on subsets of Z_p.

Residues are plain ints kept in canonical form ``0 <= r < p``.  Sets of
residues are passed around as sorted tuples so that every output is
reproducible; any iterable of ints is accepted on input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

ResidueSet = Tuple[int, ...]


class DomainError(ValueError):
    """Raised when an operation is called outside its mathematical domain."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class Modulus:
    """A prime modulus p >= 2 (the classifier itself needs p >= 5)."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise DomainError(f"modulus must be prime, got {self.p!r}")

    def __int__(self) -> int:
        return self.p

    def reduce(self, x: int) -> int:
        return x % self.p


def rset(values: Iterable[int], p: int) -> ResidueSet:
    """Canonical sorted tuple of distinct residues mod p."""
    return tuple(sorted({v % p for v in values}))


def inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise DomainError("no inverse of 0")
    return pow(a, -1, p)


def dilate(S: Iterable[int], d: int, p: int) -> ResidueSet:
    return rset((d * x for x in S), p)


def translate(S: Iterable[int], t: int, p: int) -> ResidueSet:
    return rset((x + t for x in S), p)


def negate(S: Iterable[int], p: int) -> ResidueSet:
    return rset((-x for x in S), p)


def nonzero(p: int) -> ResidueSet:
    return tuple(range(1, p))


@dataclass(frozen=True)
class Subgroup:
    """A multiplicative subgroup of Z_p^* together with the generators it came from."""

    p: int
    generators: ResidueSet
    elements: ResidueSet = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x % self.p in self.elements

    def is_full(self) -> bool:
        return self.order == self.p - 1


def subgroup_generated(gens: Iterable[int], p: int) -> Subgroup:
    """Closure of ``{1} ∪ gens`` under multiplication mod p."""
    generators = rset(gens, p)
    if 0 in generators:
        raise DomainError("subgroup generators must be nonzero")
    elements = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = x * g % p
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(p, generators, tuple(sorted(elements)))


def cosets(H: Subgroup) -> List[ResidueSet]:
    """Partition of Z_p^* into cosets of H, ordered by minimal representative."""
    p = H.p
    seen = set()
    out = []
    for r in range(1, p):
        if r in seen:
            continue
        coset = dilate(H.elements, r, p)
        seen.update(coset)
        out.append(coset)
    return out


def is_periodic(S: Iterable[int], d: int, p: int) -> bool:
    """True iff S is invariant under dilation by d."""
    S = rset(S, p)
    return dilate(S, d, p) == S


def is_symmetric(S: Iterable[int], p: int) -> bool:
    S = rset(S, p)
    return negate(S, p) == S


def run_count(S: Iterable[int], p: int) -> int:
    """Number of maximal cyclic runs of consecutive residues in S.

    The empty set and all of Z_p both have zero boundaries and report 0.
    """
    member = [False] * p
    for x in S:
        member[x % p] = True
    return sum(1 for i in range(p) if member[i] and not member[(i + 1) % p])


def _is_cyclic_interval(S: Iterable[int], p: int) -> bool:
    S = rset(S, p)
    return len(S) > 0 and run_count(S, p) <= 1


def is_ap(S: Iterable[int], d: int, p: int) -> bool:
    """True iff S = {a, a+d, ..., a+(|S|-1)d} for some a (d nonzero)."""
    return _is_cyclic_interval(dilate(S, inverse(d, p), p), p)


def ap_difference(S: Iterable[int], p: int) -> ResidueSet:
    """All nonzero d for which S is an arithmetic progression with difference d."""
    S = rset(S, p)
    if not S:
        raise DomainError("ap_difference of the empty set")
    return tuple(d for d in range(1, p) if is_ap(S, d, p))


def is_union_two_aps(S: Iterable[int], d: int, p: int) -> bool:
    """True iff d^{-1}S has at most two maximal cyclic runs."""
    return run_count(dilate(S, inverse(d, p), p), p) <= 2


def is_almost_ap(S: Iterable[int], d: int, p: int) -> bool:
    """AP with difference d, possibly with one term removed."""
    S = rset(S, p)
    if is_ap(S, d, p):
        return True
    members = set(S)
    return any(is_ap(S + (x,), d, p) for x in range(p) if x not in members)


def multiplicative_order(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise DomainError("0 has no multiplicative order")
    k, x = 1, a
    while x != 1:
        x = x * a % p
        k += 1
    return k


def parse_int_list(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    return [int(tok) for tok in text.split(",")]
