"""Exhaustive ground truth: enumerate 3-colorings and test each by brute force.

Nothing here uses the structure theory.  Labelings are produced as numpy
batches in base-3 counting order (residue 0 is the most significant digit,
so the order is lexicographic on label arrays), and each batch is checked
against every (x, y) pair of the equation at once.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .coloring import Color, Coloring
from .equation import Equation
from .zp import DomainError, inverse

log = logging.getLogger(__name__)

UNFILTERED_LIMIT = 13
FILTERED_LIMIT = 19
_SUFFIX_CELLS = 10


class BudgetError(DomainError):
    """Enumeration larger than the documented desk-scale limits."""


@dataclass(frozen=True)
class EnumerationFilter:
    """Restrictions on the enumerated colorings.

    ``min_class_size``: every class has at least this many elements.
    ``smallest_class_size``: the smallest class has exactly this many.
    ``fixed_class``: (label, residues) -- that label's class is exactly the set.
    ``dedupe_by_relabeling``: only emit the canonical representative of each
    relabeling orbit (label array in first-occurrence order).
    """

    min_class_size: Optional[int] = None
    fixed_class: Optional[Tuple[Color, Tuple[int, ...]]] = None
    dedupe_by_relabeling: bool = False
    smallest_class_size: Optional[int] = None

    def validate(self, p: int) -> None:
        if self.min_class_size is not None and not 1 <= self.min_class_size <= p / 3:
            raise DomainError(f"min_class_size must lie in [1, p/3], got {self.min_class_size}")
        if self.smallest_class_size is not None and not 1 <= self.smallest_class_size <= p / 3:
            raise DomainError(f"smallest_class_size must lie in [1, p/3], got {self.smallest_class_size}")
        if self.fixed_class is not None:
            members = self.fixed_class[1]
            if not members or any(not 0 <= x < p for x in members) or len(set(members)) != len(members):
                raise DomainError("fixed class must be a nonempty set of residues in [0, p)")
            if len(members) > p - 2:
                raise DomainError("fixed class leaves no room for the other two classes")

    @property
    def restricts(self) -> bool:
        return any(v is not None for v in (self.min_class_size, self.fixed_class, self.smallest_class_size))


ANY = EnumerationFilter()


def check_budget(p: int, filt: EnumerationFilter, force: bool = False) -> None:
    if force:
        return
    if p <= UNFILTERED_LIMIT:
        return
    if p <= FILTERED_LIMIT and filt.restricts:
        return
    raise BudgetError(
        f"p={p} exceeds the sweep budget: unfiltered sweeps need p <= {UNFILTERED_LIMIT}, "
        f"filtered sweeps p <= {FILTERED_LIMIT} (use force to override)"
    )


def _digits(n_cells: int, base: int) -> np.ndarray:
    """All base-``base`` strings of length n_cells in counting order, as rows."""
    if n_cells == 0:
        return np.zeros((1, 0), dtype=np.int8)
    grids = np.indices((base,) * n_cells, dtype=np.int8)
    return grids.reshape(n_cells, -1).T.copy()


def _raw_batches(p: int, filt: EnumerationFilter) -> Iterator[np.ndarray]:
    if filt.fixed_class is not None:
        label, members = filt.fixed_class
        label = int(label)
        others = [c for c in range(3) if c != label]
        fixed = set(members)
        free = [x for x in range(p) if x not in fixed]
        lookup = np.array(others, dtype=np.int8)
        # free cells in ascending order keep lexicographic order on full arrays
        prefix_len = max(0, len(free) - 14)
        tail = _digits(len(free) - prefix_len, 2)
        for head in itertools.product(range(2), repeat=prefix_len):
            rows = np.empty((tail.shape[0], p), dtype=np.int8)
            rows[:, sorted(fixed)] = label
            if prefix_len:
                rows[:, free[:prefix_len]] = lookup[list(head)]
            rows[:, free[prefix_len:]] = lookup[tail]
            yield rows
        return
    prefix_len = max(0, p - _SUFFIX_CELLS)
    tail = _digits(p - prefix_len, 3)
    for head in itertools.product(range(3), repeat=prefix_len):
        rows = np.empty((tail.shape[0], p), dtype=np.int8)
        rows[:, :prefix_len] = head
        rows[:, prefix_len:] = tail
        yield rows


def _filter_batch(rows: np.ndarray, filt: EnumerationFilter) -> np.ndarray:
    counts = np.stack([(rows == k).sum(axis=1) for k in range(3)], axis=1)
    smallest = counts.min(axis=1)
    keep = smallest >= 1
    if filt.min_class_size is not None:
        keep &= smallest >= filt.min_class_size
    if filt.smallest_class_size is not None:
        keep &= smallest == filt.smallest_class_size
    if filt.dedupe_by_relabeling:
        first = np.stack([np.argmax(rows == k, axis=1) for k in range(3)], axis=1)
        keep &= (first[:, 0] < first[:, 1]) & (first[:, 1] < first[:, 2])
    return rows[keep]


def label_batches(p: int, filt: EnumerationFilter = ANY, force: bool = False) -> Iterator[np.ndarray]:
    """Surjective labelings passing ``filt``, as int8 arrays of shape (n, p)."""
    filt.validate(p)
    check_budget(p, filt, force)
    for rows in _raw_batches(p, filt):
        kept = _filter_batch(rows, filt)
        if len(kept):
            yield kept


def enumerate_colorings(p: int, filt: EnumerationFilter = ANY, force: bool = False) -> Iterator[Coloring]:
    for rows in label_batches(p, filt, force):
        for row in rows.tolist():
            yield Coloring(p, tuple(row))


def solution_index(eq: Equation) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(x, y, z) for every ordered pair (x, y), z solved from the equation."""
    p = eq.p
    x, y = np.divmod(np.arange(p * p), p)
    z = (eq.b - eq.a1 * x - eq.a2 * y) * inverse(eq.a3, p) % p
    return x, y, z


def rainbow_mask(eq: Equation, rows: np.ndarray, _index=None) -> np.ndarray:
    """Boolean per row: does the labeling contain a rainbow solution?"""
    x, y, z = solution_index(eq) if _index is None else _index
    bits = np.left_shift(np.uint8(1), rows.astype(np.uint8))
    out = np.empty(len(rows), dtype=bool)
    step = max(1, 2_000_000 // max(1, len(x)))
    for lo in range(0, len(rows), step):
        chunk = bits[lo : lo + step]
        combined = chunk[:, x] | chunk[:, y] | chunk[:, z]
        out[lo : lo + step] = (combined == 7).any(axis=1)
    return out


def rainbow_free_batches(eq: Equation, filt: EnumerationFilter = ANY, force: bool = False) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield (rows scanned, rainbow-free rows) per batch."""
    index = solution_index(eq)
    for rows in label_batches(eq.p, filt, force):
        yield len(rows), rows[~rainbow_mask(eq, rows, index)]


def enumerate_rainbow_free(eq: Equation, filt: EnumerationFilter = ANY, force: bool = False) -> List[Coloring]:
    out = []
    for _, rows in rainbow_free_batches(eq, filt, force):
        out.extend(Coloring(eq.p, tuple(r)) for r in rows.tolist())
    return out


def count_rainbow_free(eq: Equation, filt: EnumerationFilter = ANY, force: bool = False) -> Tuple[int, int]:
    """(colorings scanned, rainbow-free count)."""
    scanned = found = 0
    for n, rows in rainbow_free_batches(eq, filt, force):
        scanned += n
        found += len(rows)
    return scanned, found


@dataclass
class OracleReport:
    equation: Equation
    total_colorings_scanned: int
    rainbow_free: List[Coloring]
    mismatches: List[Coloring] = field(default_factory=list)
    classify_verdict: Optional[str] = None
    verdict_consistent: Optional[bool] = None

    @property
    def all_matched_structure(self) -> bool:
        return not self.mismatches

    @property
    def ok(self) -> bool:
        return self.all_matched_structure and self.verdict_consistent is not False

    def to_dict(self, include_colorings: bool = False) -> dict:
        out = {
            "equation": self.equation.to_text(),
            "total_colorings_scanned": self.total_colorings_scanned,
            "rainbow_free_count": len(self.rainbow_free),
            "all_matched_structure": self.all_matched_structure,
            "mismatches": [c.to_text() for c in self.mismatches],
            "classify_verdict": self.classify_verdict,
            "verdict_consistent": self.verdict_consistent,
        }
        if include_colorings:
            out["rainbow_free"] = [c.to_text() for c in self.rainbow_free]
        return out


def cross_validate(eq: Equation, filt: EnumerationFilter = ANY, force: bool = False) -> OracleReport:
    """Match every rainbow-free coloring found against the structure theorems.

    The verdict comparison is only made for unrestricted enumerations, where
    emptiness of the list is the ground-truth verdict.
    """
    from .classify import DelegateToOracle, RAINBOW, classify, match_structure

    scanned = 0
    found: List[Coloring] = []
    for n, rows in rainbow_free_batches(eq, filt, force):
        scanned += n
        found.extend(Coloring(eq.p, tuple(r)) for r in rows.tolist())
    report = OracleReport(eq, scanned, found)
    if eq.p >= 5:
        report.mismatches = [c for c in found if not match_structure(eq, c).matched]
    try:
        result = classify(eq)
    except DelegateToOracle:
        return report
    report.classify_verdict = result.verdict
    if not filt.restricts:
        report.verdict_consistent = (result.verdict == RAINBOW) == (not found)
    for c in report.mismatches:
        log.warning("no structural clause matches %s for %s", c.to_text(), eq.to_text())
    return report


def oracle_verdict(eq: Equation, force: bool = False) -> Tuple[bool, Optional[Coloring]]:
    """(is_rainbow, first rainbow-free coloring) by exhaustive search; any p."""
    for _, rows in rainbow_free_batches(eq, ANY, force):
        if len(rows):
            return False, Coloring(eq.p, tuple(rows[0].tolist()))
    return True, None


def smallest_class_batches(p: int, k: int) -> Iterator[np.ndarray]:
    """Labelings where class A has exactly k elements and no class is smaller.

    Every coloring whose smallest class has size k is a relabeling of one of
    these, so counts of rainbow-free colorings are zero for both or neither.
    """
    rest = p - k
    tail = _digits(rest, 2) + 1
    tail_sizes = (tail == 1).sum(axis=1)
    tail = tail[(tail_sizes >= k) & (rest - tail_sizes >= k)]
    for members in itertools.combinations(range(p), k):
        free = [x for x in range(p) if x not in members]
        rows = np.empty((len(tail), p), dtype=np.int8)
        rows[:, list(members)] = 0
        rows[:, free] = tail
        yield rows


def min_class_scan(eq: Equation, k: int) -> int:
    """Count rainbow-free colorings whose class A is a smallest class, of size exactly k."""
    if eq.all_equal:
        raise DomainError("min_class_scan needs some a_i != a_j")
    if k < 1 or 3 * k > eq.p:
        raise DomainError(f"no 3-coloring of Z_{eq.p} has smallest class of size {k}")
    index = solution_index(eq)
    found = 0
    batch: List[np.ndarray] = []
    pending = 0
    for rows in smallest_class_batches(eq.p, k):
        batch.append(rows)
        pending += len(rows)
        if pending >= 200_000:
            stacked = np.concatenate(batch)
            found += int((~rainbow_mask(eq, stacked, index)).sum())
            batch, pending = [], 0
    if batch:
        stacked = np.concatenate(batch)
        found += int((~rainbow_mask(eq, stacked, index)).sum())
    return found


def singleton_class_colorings(eq: Equation) -> List[Coloring]:
    """All rainbow-free colorings with class A a singleton, over every position of A."""
    out: List[Coloring] = []
    for s in range(eq.p):
        out.extend(enumerate_rainbow_free(eq, EnumerationFilter(fixed_class=(Color.A, (s,))), force=True))
    return out


def fixed_class_filter(label: Color, members) -> EnumerationFilter:
    return EnumerationFilter(fixed_class=(Color(label), tuple(sorted(set(members)))))
