"""Shared fixtures and slow-but-obvious reference implementations."""

import itertools

from rainbowzp.coloring import Coloring
from rainbowzp.equation import Equation

EX1_EQ = Equation(13, 1, -4, 3, 0)
EX1 = Coloring.from_classes(13, [0], [1, 3, 4, 9, 10, 12], [2, 5, 6, 7, 8, 11])

EX2_EQ = Equation(17, 1, 8, -2, 3)
EX2_B = (0, 2, 6, 7, 11, 13, 14, 16)
EX2 = Coloring.from_classes(17, [15], EX2_B, sorted(set(range(17)) - set(EX2_B) - {15}))

EX3_EQ = Equation(13, 1, 1, 1, 2)
EX3 = Coloring.from_classes(13, [2, 4, 6, 8], [10, 12, 1, 3], [5, 7, 9, 11, 0])


def all_colorings(p):
    """Every surjective labeling, in base-3 lexicographic order."""
    for labels in itertools.product(range(3), repeat=p):
        if len(set(labels)) == 3:
            yield Coloring(p, labels)


def all_equations(p):
    for a1, a2, a3 in itertools.product(range(1, p), repeat=3):
        for b in range(p):
            yield Equation(p, a1, a2, a3, b)


def brute_rainbow_free(eq, c):
    """Triple loop over Z_p^3, no solving for z."""
    p = eq.p
    for x in range(p):
        for y in range(p):
            for z in range(p):
                if (eq.a1 * x + eq.a2 * y + eq.a3 * z - eq.b) % p == 0:
                    if len({c[x], c[y], c[z]}) == 3:
                        return False
    return True
