"""Small named algebras used throughout the docs and tests.

Element names: L2 and RR2/LR2 use ``0, 1``; M2 and F4R use ``0, a, b, 1``
mapped to indices ``0, 1, 2, 3``.
"""

from __future__ import annotations

from .algebra import Algebra


def chain(k: int, name: str | None = None) -> Algebra:
    """The ``k``-element chain lattice ``0 < 1 < ... < k-1``."""
    meet = [[min(x, y) for y in range(k)] for x in range(k)]
    join = [[max(x, y) for y in range(k)] for x in range(k)]
    return Algebra(k, meet, join, name=name or f"C{k}")


def rectangular(rows: int, cols: int) -> Algebra:
    """The rectangular skew lattice on ``rows x cols`` pairs, row-major indexed.

    ``(l, r) ^ (l', r') = (l, r')`` and ``(l, r) v (l', r') = (l', r)``.
    """
    n = rows * cols
    meet = [[(x // cols) * cols + (y % cols) for y in range(n)] for x in range(n)]
    join = [[(y // cols) * cols + (x % cols) for y in range(n)] for x in range(n)]
    return Algebra(n, meet, join, name=f"Rect{rows}x{cols}")


TRIVIAL = Algebra(1, [[0]], [[0]], name="T1")

L2 = chain(2, "L2")

RR2 = Algebra(2, [[0, 1], [0, 1]], [[0, 0], [1, 1]], name="RR2")
LR2 = Algebra(2, [[0, 0], [1, 1]], [[0, 1], [0, 1]], name="LR2")

# 0 < a, b < 1 with a ^ b = 0, a v b = 1
M2 = Algebra(
    4,
    [[0, 0, 0, 0],
     [0, 1, 0, 1],
     [0, 0, 2, 2],
     [0, 1, 2, 3]],
    [[0, 1, 2, 3],
     [1, 1, 3, 3],
     [2, 3, 2, 3],
     [3, 3, 3, 3]],
    name="M2", names=("0", "a", "b", "1"),
)

# bottom 0, top 1, middle class {a, b} with a^b=b, b^a=a, a v b=a, b v a=b
F4R = Algebra(
    4,
    [[0, 0, 0, 0],
     [0, 1, 2, 1],
     [0, 1, 2, 2],
     [0, 1, 2, 3]],
    [[0, 1, 2, 3],
     [1, 1, 1, 3],
     [2, 2, 2, 3],
     [3, 3, 3, 3]],
    name="F4R", names=("0", "a", "b", "1"),
)

FIXTURES = {"l2": L2, "rr2": RR2, "lr2": LR2, "m2": M2, "f4r": F4R}
