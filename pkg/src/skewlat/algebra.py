"""Finite algebras with two binary operations, their morphisms and isomorphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import BadShape, IndexOutOfRange, OutOfRangeEntry

Table = tuple[tuple[int, ...], ...]

MEET = "meet"
JOIN = "join"


def _freeze(n: int, table: Sequence[Sequence[int]], op: str) -> Table:
    rows = list(table)
    if len(rows) != n:
        raise BadShape(f"{op} table has {len(rows)} rows, expected {n}")
    out = []
    for i, row in enumerate(rows):
        row = list(row)
        if len(row) != n:
            raise BadShape(f"{op} table row {i} has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise OutOfRangeEntry(op, i, j, v)
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class Algebra:
    """A carrier ``0..n-1`` with a meet table and a join table.

    Nothing beyond closure is assumed; the laws an algebra satisfies are
    decided by :mod:`skewlat.identities`.
    """

    n: int
    meet: Table
    join: Table
    name: Optional[str] = field(default=None, compare=False)
    names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise BadShape(f"carrier size must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "meet", _freeze(self.n, self.meet, MEET))
        object.__setattr__(self, "join", _freeze(self.n, self.join, JOIN))
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != self.n:
                raise BadShape(f"expected {self.n} element names, got {len(names)}")
            object.__setattr__(self, "names", names)

    def table(self, op: str) -> Table:
        if op == MEET:
            return self.meet
        if op == JOIN:
            return self.join
        raise ValueError(f"unknown operation {op!r}")

    def label(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def key(self) -> tuple[Table, Table]:
        return (self.meet, self.join)

    def relabel(self, perm: Sequence[int]) -> "Algebra":
        """Image of this algebra under the bijection ``x -> perm[x]``."""
        n = self.n
        inv = [0] * n
        for x, px in enumerate(perm):
            inv[px] = x
        meet = [[perm[self.meet[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
        join = [[perm[self.join[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
        names = None
        if self.names:
            names = tuple(self.names[inv[i]] for i in range(n))
        return Algebra(n, meet, join, name=self.name, names=names)

    def restrict(self, elements: Iterable[int]) -> tuple["Algebra", tuple[int, ...]]:
        """Subalgebra on a closed subset, renumbered in increasing order.

        Returns the subalgebra and the embedding (new index -> old index).
        """
        elems = tuple(sorted(set(elements)))
        pos = {x: i for i, x in enumerate(elems)}
        try:
            meet = [[pos[self.meet[x][y]] for y in elems] for x in elems]
            join = [[pos[self.join[x][y]] for y in elems] for x in elems]
        except KeyError as exc:
            raise ValueError(f"subset {elems} is not closed under the operations") from exc
        names = tuple(self.names[x] for x in elems) if self.names else None
        return Algebra(len(elems), meet, join, names=names), elems


def new_algebra(n: int, meet: Sequence[Sequence[int]], join: Sequence[Sequence[int]],
                name: Optional[str] = None) -> Algebra:
    return Algebra(n, meet, join, name=name)


def apply(a: Algebra, op: str, x: int, y: int) -> int:
    if not (0 <= x < a.n and 0 <= y < a.n):
        raise IndexOutOfRange(f"({x}, {y}) outside carrier of size {a.n}")
    return a.table(op)[x][y]


def dualize(a: Algebra, kind: str) -> Algebra:
    """Horizontal (argument swap), vertical (meet/join swap) or double dual."""
    if kind == "horizontal":
        meet = [list(col) for col in zip(*a.meet)]
        join = [list(col) for col in zip(*a.join)]
    elif kind == "vertical":
        meet, join = a.join, a.meet
    elif kind == "double":
        return dualize(dualize(a, "horizontal"), "vertical")
    else:
        raise ValueError(f"unknown dual kind {kind!r}")
    return Algebra(a.n, meet, join, name=a.name, names=a.names)


@dataclass(frozen=True)
class Morphism:
    source: Algebra
    target: Algebra
    map: tuple[int, ...]

    def __post_init__(self):
        m = tuple(self.map)
        if len(m) != self.source.n:
            raise BadShape(f"map has {len(m)} entries, source has {self.source.n} elements")
        for x, v in enumerate(m):
            if not 0 <= v < self.target.n:
                raise IndexOutOfRange(f"map({x}) = {v} outside target carrier")
        object.__setattr__(self, "map", m)

    def __call__(self, x: int) -> int:
        return self.map[x]

    def then(self, other: "Morphism") -> "Morphism":
        """Composite ``other ∘ self``."""
        return Morphism(self.source, other.target, tuple(other.map[v] for v in self.map))

    def is_homomorphism(self) -> "HomVerdict":
        return is_homomorphism(self.map, self.source, self.target)


@dataclass(frozen=True)
class HomVerdict:
    holds: bool
    op: Optional[str] = None
    pair: Optional[tuple[int, int]] = None

    def __bool__(self):
        return self.holds


def is_homomorphism(f: Sequence[int], a: Algebra, b: Algebra) -> HomVerdict:
    """Check both operations at every pair; report the first failing pair.

    Pairs are scanned in lexicographic order and meet is tested before join
    at each pair.
    """
    if len(f) != a.n:
        raise BadShape(f"map has {len(f)} entries, source has {a.n} elements")
    for x in range(a.n):
        fx = f[x]
        for y in range(a.n):
            fy = f[y]
            if f[a.meet[x][y]] != b.meet[fx][fy]:
                return HomVerdict(False, MEET, (x, y))
            if f[a.join[x][y]] != b.join[fx][fy]:
                return HomVerdict(False, JOIN, (x, y))
    return HomVerdict(True)


def element_invariants(a: Algebra) -> list[tuple]:
    """Per-element profile preserved by every isomorphism."""
    n, m, j = a.n, a.meet, a.join
    out = []
    for x in range(n):
        dsize = sum(1 for y in range(n) if m[m[x][y]][x] == x and m[m[y][x]][y] == y)
        out.append((
            dsize,
            m[x][x] == x, j[x][x] == x,
            sum(1 for y in range(n) if m[x][y] == m[y][x]),
            sum(1 for y in range(n) if j[x][y] == j[y][x]),
            sum(1 for y in range(n) if m[x][y] == x),
            sum(1 for y in range(n) if m[y][x] == x),
            sum(1 for y in range(n) if j[x][y] == x),
            sum(1 for y in range(n) if j[y][x] == x),
        ))
    return out


def are_isomorphic(a: Algebra, b: Algebra) -> Optional[tuple[int, ...]]:
    """Return a bijection ``f`` with ``f: a -> b`` an isomorphism, or None.

    Backtracking over source elements in index order; candidates are the
    target elements with an equal invariant profile, tried in index order.
    """
    if a.n != b.n:
        return None
    n = a.n
    inv_a, inv_b = element_invariants(a), element_invariants(b)
    if sorted(inv_a) != sorted(inv_b):
        return None
    cands = [[y for y in range(n) if inv_b[y] == inv_a[x]] for x in range(n)]
    f = [-1] * n
    used = [False] * n

    tables = ((a.meet, b.meet), (a.join, b.join))
    # pairs (p, q) with p, q < z whose product is z, per table
    landing = [[[] for _ in range(n)] for _ in tables]
    for t, (ta, _) in enumerate(tables):
        for p in range(n):
            for q in range(n):
                z = ta[p][q]
                if p < z and q < z:
                    landing[t][z].append((p, q))

    def consistent(k: int) -> bool:
        for t, (ta, tb) in enumerate(tables):
            for x in range(k + 1):
                for p, q in ((x, k), (k, x)):
                    z = ta[p][q]
                    if z <= k and f[z] != tb[f[p]][f[q]]:
                        return False
            for p, q in landing[t][k]:
                if f[k] != tb[f[p]][f[q]]:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        for y in cands[k]:
            if used[y]:
                continue
            f[k] = y
            used[y] = True
            if consistent(k) and extend(k + 1):
                return True
            used[y] = False
            f[k] = -1
        return False

    if not extend(0):
        return None
    return tuple(f)


def subalgebra_closure(a: Algebra, seed: Iterable[int]) -> frozenset[int]:
    closed = set(seed)
    for x in closed:
        if not 0 <= x < a.n:
            raise IndexOutOfRange(f"seed element {x} outside carrier")
    frontier = list(closed)
    while frontier:
        new = []
        for x in frontier:
            for y in list(closed):
                for v in (a.meet[x][y], a.meet[y][x], a.join[x][y], a.join[y][x]):
                    if v not in closed:
                        closed.add(v)
                        new.append(v)
        frontier = new
    return frozenset(closed)


def all_bijections(n: int):
    return itertools.permutations(range(n))
