"""Sumsets in Z_p and exhaustive checks of the inverse theorems used on them.

Detectors return a concrete common difference rather than a bare boolean
so that callers can re-verify the witness.  Scans are generators that yield
violations as they are found; an empty scan is the passing outcome.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Tuple

from .zp import DomainError, ResidueSet, ap_difference, inverse, is_almost_ap, rset, run_count


@dataclass(frozen=True)
class SumsetWindow:
    X: ResidueSet
    Y: ResidueSet
    sum: ResidueSet

    @property
    def lower(self) -> int:
        return len(self.X) + len(self.Y) - 1

    @property
    def upper(self) -> int:
        return len(self.X) + len(self.Y)


def sumset(X: Iterable[int], Y: Iterable[int], p: int) -> ResidueSet:
    X, Y = rset(X, p), rset(Y, p)
    if not X or not Y:
        raise DomainError("sumset of an empty set")
    present = [False] * p
    for x in X:
        for y in Y:
            present[(x + y) % p] = True
    return tuple(i for i in range(p) if present[i])


def window(X: Iterable[int], Y: Iterable[int], p: int) -> SumsetWindow:
    X, Y = rset(X, p), rset(Y, p)
    return SumsetWindow(X, Y, sumset(X, Y, p))


def cd_check(X: Iterable[int], Y: Iterable[int], p: int) -> bool:
    """Cauchy-Davenport: X + Y is all of Z_p or has at least |X| + |Y| - 1 elements."""
    w = window(X, Y, p)
    return len(w.sum) == p or len(w.sum) >= w.lower


class NoWitness(RuntimeError):
    """A pair met the theorem's hypotheses but no common difference exists."""


def vosper_witness(X: Iterable[int], Y: Iterable[int], p: int) -> Optional[int]:
    """Smallest common AP difference of a critical pair; None if not critical.

    Critical means |X + Y| = |X| + |Y| - 1 <= p - 2.
    """
    w = window(X, Y, p)
    if len(w.X) < 2 or len(w.Y) < 2:
        raise DomainError("vosper_witness needs |X|, |Y| >= 2")
    if not (len(w.sum) == w.lower and w.lower <= p - 2):
        return None
    common = sorted(set(ap_difference(w.X, p)) & set(ap_difference(w.Y, p)))
    if not common:
        raise NoWitness(f"critical pair {w.X}, {w.Y} has no common difference")
    return common[0]


def hr_witness(X: Iterable[int], Y: Iterable[int], p: int) -> Optional[int]:
    """Smallest common almost-AP difference when 7 <= |X+Y| = |X| + |Y| <= p - 4, else None."""
    w = window(X, Y, p)
    if len(w.X) < 3 or len(w.Y) < 3:
        raise DomainError("hr_witness needs |X|, |Y| >= 3")
    if not (len(w.sum) == w.upper and 7 <= w.upper <= p - 4):
        return None
    for d in range(1, p):
        if is_almost_ap(w.X, d, p) and is_almost_ap(w.Y, d, p):
            return d
    raise NoWitness(f"pair {w.X}, {w.Y} has no common almost-AP difference")


def _fails(detector, X, Y, p: int) -> bool:
    try:
        detector(X, Y, p)
    except NoWitness:
        return True
    return False


def _subsets(p: int, sizes: Iterable[int]) -> Iterator[ResidueSet]:
    for k in sizes:
        yield from itertools.combinations(range(p), k)


def scan_cd(p: int, max_size: Optional[int] = None) -> Iterator[Tuple[ResidueSet, ResidueSet]]:
    """Every pair of nonempty subsets (up to max_size) violating Cauchy-Davenport."""
    sizes = range(1, (max_size or p) + 1)
    subsets = list(_subsets(p, sizes))
    for X in subsets:
        for Y in subsets:
            if not cd_check(X, Y, p):
                yield X, Y


def scan_cd_sampled(p: int, samples: int, seed: int = 0) -> Iterator[Tuple[ResidueSet, ResidueSet]]:
    rng = random.Random(seed)
    for _ in range(samples):
        X = rset(rng.sample(range(p), rng.randint(1, p)), p)
        Y = rset(rng.sample(range(p), rng.randint(1, p)), p)
        if not cd_check(X, Y, p):
            yield X, Y


def scan_vosper(p: int, max_size: int = 3) -> Iterator[Tuple[ResidueSet, ResidueSet]]:
    """Critical pairs with 2 <= |X|, |Y| <= max_size lacking a common AP difference."""
    subsets = list(_subsets(p, range(2, max_size + 1)))
    for X in subsets:
        for Y in subsets:
            if _fails(vosper_witness, X, Y, p):
                yield X, Y


def count_critical_pairs(p: int, max_size: int = 3) -> int:
    subsets = list(_subsets(p, range(2, max_size + 1)))
    return sum(1 for X in subsets for Y in subsets if vosper_witness(X, Y, p) is not None)


def _hr_size_pairs(p: int) -> List[Tuple[int, int]]:
    return [(i, n - i) for n in range(7, p - 3) for i in range(3, n - 2)]


def scan_hr(p: int) -> Iterator[Tuple[ResidueSet, ResidueSet]]:
    """Pairs with 7 <= |X+Y| = |X| + |Y| <= p - 4 that are not almost-APs with a common difference."""
    for i, j in _hr_size_pairs(p):
        for X in itertools.combinations(range(p), i):
            for Y in itertools.combinations(range(p), j):
                if _fails(hr_witness, X, Y, p):
                    yield X, Y


def count_hr_pairs(p: int) -> int:
    total = 0
    for i, j in _hr_size_pairs(p):
        for X in itertools.combinations(range(p), i):
            for Y in itertools.combinations(range(p), j):
                if len(sumset(X, Y, p)) == i + j:
                    total += 1
    return total


def lemma43_allowed(p: int) -> ResidueSet:
    """The multipliers {0, +-1, +-2, +-1/2}."""
    h = inverse(2, p)
    return rset((0, 1, -1, 2, -2, h, -h), p)


def iter_lemma43(p: int) -> Iterator[Tuple[ResidueSet, int, int]]:
    """Triples (X, t, d) where X and tX are both unions of at most two APs of
    difference d, 5 <= |X| <= p - 5, yet t is outside {0, +-1, +-2, +-1/2}."""
    if p < 11:
        raise DomainError("the scan needs p >= 11 so that 5 <= |X| <= p - 5 is satisfiable")
    allowed = set(lemma43_allowed(p))
    inverses = {u: inverse(u, p) for u in range(1, p)}
    for X in _subsets(p, range(5, p - 4)):
        # twoap[u]: u*X has at most two runs, i.e. X is a 2-AP union with difference 1/u
        twoap = {u: run_count((u * x for x in X), p) <= 2 for u in range(1, p)}
        for t in range(1, p):
            if t in allowed:
                continue
            for u in range(1, p):
                if twoap[u] and twoap[u * t % p]:
                    yield X, t, inverses[u]
                    break


def lemma43_scan(p: int) -> List[Tuple[ResidueSet, int, int]]:
    return list(iter_lemma43(p))


def containment_violations(
    a: Tuple[int, int, int], b: int, classes: Tuple[ResidueSet, ...], p: int
) -> List[Tuple[Tuple[int, int, int], Tuple[int, int, int]]]:
    """(slots, classes) assignments where a_i X + a_j Y meets -a_k Z + b.

    For a rainbow-free coloring the list is empty.
    """
    out = []
    for i, j, k in itertools.permutations(range(3)):
        for xi, yi, zi in itertools.permutations(range(3)):
            left = sumset((a[i] * x for x in classes[xi]), (a[j] * y for y in classes[yi]), p)
            right = set(rset((-a[k] * z + b for z in classes[zi]), p))
            if right.intersection(left):
                out.append(((i, j, k), (xi, yi, zi)))
    return out


def format_violation(X: Iterable[int], t: int, d: int) -> str:
    return "X=" + ",".join(str(x) for x in X) + f";t={t};d={d}"
