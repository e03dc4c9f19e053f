"""Green's relations, the natural order and preorder, and the natural graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .algebra import Algebra
from .errors import ConsistencyError, GreenMismatch
from .identities import require_skew_lattice

Relation = tuple[tuple[bool, ...], ...]


@dataclass(frozen=True)
class Partition:
    """Equivalence partition of ``0..n-1``; block ids are ordered by least element."""

    n: int
    block_of: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        ids: dict = {}
        block_of = []
        for lab in labels:
            block_of.append(ids.setdefault(lab, len(ids)))
        blocks = [[] for _ in ids]
        for x, b in enumerate(block_of):
            blocks[b].append(x)
        return cls(len(block_of), tuple(block_of), tuple(tuple(b) for b in blocks))

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        labels = [-1] * n
        for i, b in enumerate(blocks):
            for x in b:
                if labels[x] != -1:
                    raise ValueError(f"element {x} appears in two blocks")
                labels[x] = i
        if -1 in labels:
            raise ValueError(f"element {labels.index(-1)} is in no block")
        return cls.from_labels(labels)

    @classmethod
    def from_relation(cls, n: int, related: Callable[[int, int], bool]) -> "Partition":
        """Partition from an equivalence predicate (assumed to be one)."""
        labels = [-1] * n
        k = 0
        for x in range(n):
            if labels[x] == -1:
                for y in range(x, n):
                    if labels[y] == -1 and related(x, y):
                        labels[y] = k
                k += 1
        return cls.from_labels(labels)

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls.from_labels(range(n))

    @classmethod
    def full(cls, n: int) -> "Partition":
        return cls.from_labels([0] * n)

    def same(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def refines(self, other: "Partition") -> bool:
        """True when every block of ``self`` lies inside a block of ``other``."""
        return all(other.same(b[0], x) for b in self.blocks for x in b)

    def meet(self, other: "Partition") -> "Partition":
        return Partition.from_labels(list(zip(self.block_of, other.block_of)))

    def block(self, x: int) -> tuple[int, ...]:
        return self.blocks[self.block_of[x]]

    def __len__(self):
        return len(self.blocks)


def green(a: Algebra, which: str) -> Partition:
    """Green's relation R, L, D or H of a skew lattice.

    R and L are each computed twice, from meet and from the dual condition
    on join, and the two must agree.
    """
    require_skew_lattice(a)
    m, j = a.meet, a.join
    n = a.n
    if which == "R":
        p = Partition.from_relation(n, lambda x, y: m[x][y] == y and m[y][x] == x)
        q = Partition.from_relation(n, lambda x, y: j[x][y] == x and j[y][x] == y)
    elif which == "L":
        p = Partition.from_relation(n, lambda x, y: m[x][y] == x and m[y][x] == y)
        q = Partition.from_relation(n, lambda x, y: j[x][y] == y and j[y][x] == x)
    elif which == "D":
        p = Partition.from_relation(
            n, lambda x, y: m[m[x][y]][x] == x and m[m[y][x]][y] == y)
        q = Partition.from_relation(
            n, lambda x, y: j[j[x][y]][x] == x and j[j[y][x]][y] == y)
    elif which == "H":
        return green(a, "R").meet(green(a, "L"))
    else:
        raise ValueError(f"unknown Green's relation {which!r}")
    if p != q:
        raise GreenMismatch(f"{which} from meet differs from {which} from join")
    _check_equivalence(p, which, a)
    return p


def _check_equivalence(p: Partition, which: str, a: Algebra) -> None:
    # from_relation trusts the predicate; confirm it really was an equivalence
    m = a.meet
    for b in p.blocks:
        for x in b:
            for y in b:
                if which == "R" and not (m[x][y] == y and m[y][x] == x):
                    raise GreenMismatch("R is not transitive")
                if which == "L" and not (m[x][y] == x and m[y][x] == y):
                    raise GreenMismatch("L is not transitive")
                if which == "D" and not (m[m[x][y]][x] == x):
                    raise GreenMismatch("D is not transitive")


@dataclass(frozen=True)
class OrderStructure:
    """``leq[x][y]`` iff x <= y; ``preceq[x][y]`` iff x precedes-or-equals y."""

    leq: Relation
    preceq: Relation
    graph_edges: tuple[tuple[int, int], ...]

    def ge(self, x: int, y: int) -> bool:
        return self.leq[y][x]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs ``(lo, hi)`` with ``lo < hi`` and nothing strictly between."""
        n = len(self.leq)
        out = []
        for lo in range(n):
            for hi in range(n):
                if lo != hi and self.leq[lo][hi] and not any(
                        z not in (lo, hi) and self.leq[lo][z] and self.leq[z][hi]
                        for z in range(n)):
                    out.append((lo, hi))
        return out


def natural_order(a: Algebra) -> OrderStructure:
    require_skew_lattice(a)
    m, j = a.meet, a.join
    n = a.n
    leq = [[False] * n for _ in range(n)]
    preceq = [[False] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            # y >= x iff y ^ x = x = x ^ y, dually y v x = y = x v y
            ge = m[y][x] == x and m[x][y] == x
            if ge != (j[y][x] == y and j[x][y] == y):
                raise ConsistencyError(f"meet and join orders disagree at ({y}, {x})")
            if ge != (m[m[y][x]][y] == x):
                raise ConsistencyError(f"order identity disagrees at ({y}, {x})")
            leq[x][y] = ge
            # x precedes y iff x ^ y ^ x = x, dually y v x v y = y
            pre = m[m[x][y]][x] == x
            if pre != (j[j[y][x]][y] == y):
                raise ConsistencyError(f"meet and join preorders disagree at ({x}, {y})")
            preceq[x][y] = pre
    edges = tuple((x, y) for x in range(n) for y in range(x + 1, n) if leq[x][y] or leq[y][x])
    return OrderStructure(tuple(map(tuple, leq)), tuple(map(tuple, preceq)), edges)


def components(a: Algebra) -> Partition:
    """Connected components of the natural graph."""
    order = natural_order(a)
    n = a.n
    adj: list[list[int]] = [[] for _ in range(n)]
    for x, y in order.graph_edges:
        adj[x].append(y)
        adj[y].append(x)
    labels = [-1] * n
    for s in range(n):
        if labels[s] != -1:
            continue
        labels[s] = s
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if labels[y] == -1:
                    labels[y] = s
                    stack.append(y)
    comp = Partition.from_labels(labels)
    d = green(a, "D")
    for c in comp.blocks:
        if {d.block_of[x] for x in c} != set(range(len(d))):
            raise ConsistencyError(f"component {c} misses a D-class")
    return comp


def compose(n: int, r: Callable[[int, int], bool], s: Callable[[int, int], bool]) -> Relation:
    """Relational composite: x (r;s) z iff some y has x r y and y s z."""
    return tuple(tuple(any(r(x, y) and s(y, z) for y in range(n)) for z in range(n))
                 for x in range(n))


def as_relation(p: Partition) -> Relation:
    return tuple(tuple(p.same(x, y) for y in range(p.n)) for x in range(p.n))
