"""Classification of equations and construction of rainbow-free colorings.

For an equation with not all coefficients equal, a rainbow-free coloring
has a singleton class {s} with s*(a1+a2+a3) = b, and the two other classes
are invariant under six affine maps built from coefficient ratios.  The
verdict therefore reduces to the order of the multiplicative group those
ratios generate.  The equation x + y + z = b has two further families of
rainbow-free colorings, handled by ``construct_equal_coeffs``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .coloring import AffineMap, Color, Coloring, is_invariant
from .equation import Equation, coeff_sum, find_rainbow
from .zp import (
    DomainError,
    ResidueSet,
    Subgroup,
    ap_difference,
    cosets,
    dilate,
    inverse,
    multiplicative_order,
    rset,
    subgroup_generated,
    translate,
)

RAINBOW = "rainbow"
NON_RAINBOW = "non-rainbow"

REASON_SUM_ZERO_B_NONZERO = "coeff_sum_zero_b_nonzero"
REASON_FULL_GROUP = "full_dilation_group"
REASON_ALL_EQUAL = "all_coeffs_equal"
REASON_PROPER_SUBGROUP = "proper_subgroup"

CLAUSE_SINGLETON = "MainThm_singleton"
CLAUSE_SYMMETRIC = "EqualCoeffs_singleton_symmetric"
CLAUSE_THREE_APS = "EqualCoeffs_three_APs"
CLAUSE_NONE = "NoMatch"


class DelegateToOracle(DomainError):
    """The closed-form classification is only claimed for p >= 5."""


class ConstructionError(DomainError):
    pass


@dataclass(frozen=True)
class TransformFamily:
    s: int
    maps: Tuple[AffineMap, ...]

    @property
    def dilations(self) -> Tuple[int, ...]:
        return tuple(m.d for m in self.maps)


def transform_family(eq: Equation, s: int) -> TransformFamily:
    p = eq.p
    a1, a2, a3, b = eq.a1, eq.a2, eq.a3, eq.b
    i1, i2, i3 = inverse(a1, p), inverse(a2, p), inverse(a3, p)
    s %= p
    pairs = [
        (-a3 * i1, (b - a2 * s) * i1),
        (-a2 * i1, (b - a3 * s) * i1),
        (-a1 * i2, (b - a3 * s) * i2),
        (-a3 * i2, (b - a1 * s) * i2),
        (-a1 * i3, (b - a2 * s) * i3),
        (-a2 * i3, (b - a1 * s) * i3),
    ]
    return TransformFamily(s, tuple(AffineMap(d, t, p) for d, t in pairs))


def dilation_group(eq: Equation) -> Subgroup:
    return subgroup_generated(transform_family(eq, 0).dilations, eq.p)


def rainbow_criterion_ap3(p: int) -> bool:
    """Whether every 3-coloring of Z_p has a rainbow 3-term AP, via the order of 2."""
    if p < 5:
        raise DomainError("criterion stated for p >= 5")
    k = multiplicative_order(2, p)
    return k == p - 1 or (2 * k == p - 1 and k % 2 == 1)


@dataclass
class ClassificationResult:
    equation: Equation
    verdict: str
    reason: str
    subgroup: Subgroup
    s: Optional[int] = None
    s_free: bool = False
    witness: Optional[Coloring] = None

    @property
    def is_rainbow(self) -> bool:
        return self.verdict == RAINBOW

    def to_dict(self) -> Dict[str, Any]:
        return {
            "equation": self.equation.to_text(),
            "verdict": self.verdict,
            "reason": self.reason,
            "subgroup": {"order": self.subgroup.order, "elements": list(self.subgroup.elements)},
            "s": self.s,
            "s_free": self.s_free,
            "witness": self.witness.to_text() if self.witness else None,
        }


@dataclass
class StructureReport:
    clause: str
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def matched(self) -> bool:
        return self.clause != CLAUSE_NONE

    def to_dict(self) -> Dict[str, Any]:
        return {"clause": self.clause, "params": self.params}


def forced_singleton(eq: Equation, s: Optional[int]) -> Tuple[int, bool]:
    """The singleton value and whether it was a free choice."""
    a = coeff_sum(eq)
    if a == 0:
        if eq.b != 0:
            raise DomainError("no singleton s with s*0 = b != 0")
        return (0 if s is None else s % eq.p), True
    forced = eq.b * inverse(a, eq.p) % eq.p
    if s is not None and s % eq.p != forced:
        raise DomainError(f"s must equal b/(a1+a2+a3) = {forced}")
    return forced, False


def classify(eq: Equation, s: Optional[int] = None, split: Optional[Iterable[int]] = None) -> ClassificationResult:
    """Rainbow/non-rainbow verdict with a witness coloring when one exists.

    ``s`` overrides the singleton when it is a free choice; ``split`` selects
    which cosets go to class B (see ``construct_singleton``).
    """
    if eq.p < 5:
        raise DelegateToOracle(f"p={eq.p}: use the exhaustive oracle for p < 5")
    H = dilation_group(eq)
    if eq.all_equal:
        s0 = 0 if s is None else s % eq.p
        witness = construct_equal_coeffs(eq, "i", s=s0)
        return ClassificationResult(eq, NON_RAINBOW, REASON_ALL_EQUAL, H, s0, True, witness)
    if coeff_sum(eq) == 0 and eq.b != 0:
        return ClassificationResult(eq, RAINBOW, REASON_SUM_ZERO_B_NONZERO, H)
    if H.is_full():
        return ClassificationResult(eq, RAINBOW, REASON_FULL_GROUP, H)
    s0, free = forced_singleton(eq, s)
    witness = construct_singleton(eq, s0, split)
    return ClassificationResult(eq, NON_RAINBOW, REASON_PROPER_SUBGROUP, H, s0, free, witness)


def _invariant_under_family(eq: Equation, s: int, sets: Sequence[ResidueSet]) -> bool:
    family = transform_family(eq, s)
    return all(is_invariant(m, X) for m in family.maps for X in sets)


def _verified(eq: Equation, coloring: Coloring) -> Coloring:
    witness = find_rainbow(eq, coloring)
    if witness is not None:
        raise ConstructionError(f"constructed coloring has rainbow solution {witness.as_tuple()}")
    return coloring


def construct_singleton(eq: Equation, s: int, split: Optional[Iterable[int]] = None) -> Coloring:
    """A = {s}; B and C are unions of cosets of the dilation group, shifted by s.

    ``split`` lists the indices (into ``cosets(H)``, ordered by minimal
    representative) of the cosets sent to B; the rest go to C.  By default
    cosets alternate B, C, B, ...
    """
    p = eq.p
    s %= p
    if s * coeff_sum(eq) % p != eq.b:
        raise DomainError("precondition: s*(a1+a2+a3) must equal b")
    H = dilation_group(eq)
    parts = cosets(H)
    if len(parts) < 2:
        raise ConstructionError("no valid split: the dilation group is all of Z_p^*")
    if split is None:
        in_b = {i for i in range(len(parts)) if i % 2 == 0}
    else:
        in_b = set(split)
        if not in_b <= set(range(len(parts))):
            raise ConstructionError(f"split indices must lie in 0..{len(parts) - 1}")
    if not in_b or len(in_b) == len(parts):
        raise ConstructionError("split must leave both B and C nonempty")
    B = [x for i in sorted(in_b) for x in translate(parts[i], s, p)]
    C = [x for i in range(len(parts)) if i not in in_b for x in translate(parts[i], s, p)]
    coloring = Coloring.from_classes(p, [s], B, C)
    if not _invariant_under_family(eq, s, (rset(B, p), rset(C, p))):
        raise ConstructionError("constructed classes are not invariant under the transform family")
    return _verified(eq, coloring)


def _scaled_b(eq: Equation) -> int:
    return eq.b * inverse(eq.a1, eq.p) % eq.p


def symmetric_pairs(p: int, center: int, s: int) -> List[Tuple[int, ...]]:
    """Blocks closed under reflection about ``center``, excluding s's block.

    The center itself comes first (as a one-element block) unless it is s;
    then the pairs {center + x, center - x} for x = 1..(p-1)/2.
    """
    out: List[Tuple[int, ...]] = [] if center == s else [(center,)]
    for x in range(1, (p - 1) // 2 + 1):
        pair = ((center + x) % p, (center - x) % p)
        if s in pair:
            continue
        out.append(pair)
    return out


def default_cuts(p: int, d: int, b: int) -> Tuple[int, int, int]:
    """Cut points for the most balanced three intervals meeting the sum condition.

    Shifting all cuts by u moves their sum by 3u, so once the interval
    lengths are fixed the shift is solved for directly (p > 3).
    """
    q = p // 3
    lengths = (q, q, p - 2 * q) if p % 3 == 1 else (q, q + 1, p - 2 * q - 1)
    if min(lengths) < 2:
        raise ConstructionError(f"no three-interval split with every class of size >= 2 at p={p}")
    beta = b * inverse(d, p) % p
    l1, l2, _ = lengths
    u = (1 + beta - 2 * l1 - l2) * inverse(3, p) % p
    return u, (u + l1) % p, (u + l1 + l2) % p


def construct_equal_coeffs(
    eq: Equation,
    variant: str = "i",
    *,
    s: int = 0,
    b_pairs: Optional[Iterable[int]] = None,
    free_to: Color = Color.C,
    d: int = 1,
    cuts: Optional[Tuple[int, int, int]] = None,
) -> Coloring:
    """Rainbow-free coloring for a*(x + y + z) = b.

    Variant ``"i"``: A = {s}; the other residues split into blocks closed
    under reflection about c = (b' - s)/2, where b' = b/a.  Blocks listed in
    ``b_pairs`` (indices into ``symmetric_pairs``) go to B, the rest to C;
    by default they alternate.  The element b' - 2s, the mirror image of s,
    goes to ``free_to``.

    Variant ``"ii"``: three arithmetic progressions with difference ``d``;
    d^{-1}A = [t1, t2), d^{-1}B = [t2, t3), d^{-1}C = [t3, t1) cyclically,
    with t1 + t2 + t3 in {1 + b'/d, 2 + b'/d} and every class of size >= 2.
    """
    p = eq.p
    if not eq.all_equal:
        raise DomainError("construct_equal_coeffs needs a1 = a2 = a3")
    if p <= 3:
        raise DomainError("equal-coefficient constructions need p > 3")
    bp = _scaled_b(eq)

    if variant == "i":
        s %= p
        center = (bp - s) * inverse(2, p) % p
        free = (bp - 2 * s) % p
        pairs = symmetric_pairs(p, center, s)
        chosen = set(range(0, len(pairs), 2)) if b_pairs is None else set(b_pairs)
        if not chosen <= set(range(len(pairs))):
            raise ConstructionError(f"pair indices must lie in 0..{len(pairs) - 1}")
        B = [x for i in sorted(chosen) for x in pairs[i]]
        C = [x for i in range(len(pairs)) if i not in chosen for x in pairs[i]]
        if free != s:
            (B if Color(free_to) == Color.B else C).append(free)
        if not B or not C:
            raise ConstructionError("variant i split leaves a class empty")
        return _verified(eq, Coloring.from_classes(p, [s], B, C))

    if variant == "ii":
        d %= p
        if d == 0:
            raise ConstructionError("difference must be nonzero")
        t1, t2, t3 = default_cuts(p, d, bp) if cuts is None else (c % p for c in cuts)
        lengths = ((t2 - t1) % p, (t3 - t2) % p, (t1 - t3) % p)
        if sum(lengths) != p or min(lengths) < 2:
            raise ConstructionError("cut points must be cyclically ordered with every class of size >= 2")
        beta = bp * inverse(d, p) % p
        if (t1 + t2 + t3) % p not in ((1 + beta) % p, (2 + beta) % p):
            raise ConstructionError(
                f"cut sum {(t1 + t2 + t3) % p} not in {{{(1 + beta) % p}, {(2 + beta) % p}}}"
            )
        A = dilate(range(t1, t1 + lengths[0]), d, p)
        B = dilate(range(t2, t2 + lengths[1]), d, p)
        C = dilate(range(t3, t3 + lengths[2]), d, p)
        return _verified(eq, Coloring.from_classes(p, A, B, C))

    raise DomainError(f"unknown variant {variant!r}")


def _interval_start(S: ResidueSet, p: int) -> int:
    members = set(S)
    for x in S:
        if (x - 1) % p not in members:
            return x
    raise DomainError("set has no start point")


def _match_singleton(eq: Equation, c: Coloring) -> Optional[StructureReport]:
    p = eq.p
    a = coeff_sum(eq)
    for label in Color:
        cls = c.class_of(label)
        if len(cls) != 1:
            continue
        s = cls[0]
        if s * a % p != eq.b:
            continue
        others = [c.class_of(o) for o in Color if o != label]
        if _invariant_under_family(eq, s, others):
            return StructureReport(CLAUSE_SINGLETON, {"s": s, "singleton": label.name})
    return None


def _match_symmetric(eq: Equation, c: Coloring) -> Optional[StructureReport]:
    p = eq.p
    bp = _scaled_b(eq)
    for label in Color:
        cls = c.class_of(label)
        if len(cls) != 1:
            continue
        s = cls[0]
        center = (bp - s) * inverse(2, p) % p
        free = (bp - 2 * s) % p
        ok = True
        for other in Color:
            if other == label:
                continue
            rest = [x for x in c.class_of(other) if x != free]
            if rset(rest, p) != rset((2 * center - x for x in rest), p):
                ok = False
                break
        if ok:
            params = {"s": s, "singleton": label.name, "center": center, "free_element": free}
            params["free_element_class"] = Color(c[free]).name
            return StructureReport(CLAUSE_SYMMETRIC, params)
    return None


def _match_three_aps(eq: Equation, c: Coloring) -> Optional[StructureReport]:
    p = eq.p
    bp = _scaled_b(eq)
    classes = c.classes
    common = set(range(1, p))
    for X in classes:
        common &= set(ap_difference(X, p))
    first = c.sorted_by_size()[0][0]
    for d in sorted(common):
        dinv = inverse(d, p)
        starts = {label: _interval_start(dilate(X, dinv, p), p) for label, X in zip(Color, classes)}
        # walk the circle from the smallest class
        order = [first]
        while len(order) < 3:
            last = order[-1]
            end = (starts[last] + len(c.class_of(last))) % p
            order.append(next(lab for lab in Color if starts[lab] == end))
        cuts = [starts[lab] for lab in order]
        beta = bp * dinv % p
        targets = sorted({(1 + beta) % p, (2 + beta) % p})
        total = sum(cuts) % p
        if total in targets:
            return StructureReport(
                CLAUSE_THREE_APS,
                {
                    "d": d,
                    "cuts": cuts,
                    "order": [lab.name for lab in order],
                    "cut_sum": total,
                    "targets": targets,
                    "differences": sorted(common),
                },
            )
    return None


def match_structure(eq: Equation, c: Coloring) -> StructureReport:
    """Which structural description (if any) the coloring instantiates.

    A non-matching report makes no claim about a coloring that was never
    verified rainbow-free.
    """
    if c.p != eq.p:
        raise DomainError("equation and coloring live over different moduli")
    if not eq.all_equal:
        return _match_singleton(eq, c) or StructureReport(CLAUSE_NONE)
    if eq.p <= 3:
        return StructureReport(CLAUSE_NONE)
    if min(c.sizes()) == 1:
        report = _match_symmetric(eq, c) or _match_three_aps(eq, c)
    else:
        report = _match_three_aps(eq, c)
    return report or StructureReport(CLAUSE_NONE)
