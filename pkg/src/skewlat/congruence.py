"""Congruences: compatibility tests, generated congruences, quotients, image factorisation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .algebra import Algebra, Morphism, is_homomorphism
from .errors import ConsistencyError, NotACongruence, NotAHomomorphism
from .green import Partition, green
from .identities import require_skew_lattice


@dataclass(frozen=True)
class Congruence:
    algebra: Algebra
    partition: Partition

    @property
    def blocks(self):
        return self.partition.blocks


@dataclass(frozen=True)
class CongruenceVerdict:
    holds: bool
    # (x, x', y, op): x ~ x' but x op y and x' op y (or y op x, y op x') are split
    violation: Optional[tuple[int, int, int, str]] = None

    def __bool__(self):
        return self.holds


def is_congruence(a: Algebra, p: Partition) -> CongruenceVerdict:
    """Compatibility with both operations, tested one coordinate at a time.

    Changing one argument at a time suffices: if x~x' and y~y' then
    x*y ~ x'*y ~ x'*y'. The reported violation is the first one in order
    of (x, x', y) with ops tried as meet-left, meet-right, join-left, join-right.
    """
    if p.n != a.n:
        raise ValueError("partition and algebra have different carriers")
    m, j = a.meet, a.join
    same = p.same
    for x in range(a.n):
        for x2 in range(a.n):
            if x2 == x or not same(x, x2):
                continue
            for y in range(a.n):
                if not same(m[x][y], m[x2][y]):
                    return CongruenceVerdict(False, (x, x2, y, "meet-left"))
                if not same(m[y][x], m[y][x2]):
                    return CongruenceVerdict(False, (x, x2, y, "meet-right"))
                if not same(j[x][y], j[x2][y]):
                    return CongruenceVerdict(False, (x, x2, y, "join-left"))
                if not same(j[y][x], j[y][x2]):
                    return CongruenceVerdict(False, (x, x2, y, "join-right"))
    return CongruenceVerdict(True)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # smaller root wins so labels stay stable
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


def least_congruence(a: Algebra, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Smallest congruence containing ``pairs``.

    Union-find seeded with the pairs; every merge of x with x' queues the
    four translates (x*y, x'*y) and (y*x, y*x') for each y and each operation.
    """
    n = a.n
    m, j = a.meet, a.join
    uf = _UnionFind(n)
    work = [(x, y) for x, y in pairs]
    while work:
        x, x2 = work.pop()
        if not uf.union(x, x2):
            continue
        for y in range(n):
            work.append((m[x][y], m[x2][y]))
            work.append((m[y][x], m[y][x2]))
            work.append((j[x][y], j[x2][y]))
            work.append((j[y][x], j[y][x2]))
    # merged classes are closed under translation: each union queued its translates,
    # and translates of transitively linked pairs chain through the queued ones
    part = Partition.from_labels([uf.find(x) for x in range(n)])
    if not is_congruence(a, part):
        raise ConsistencyError("closure did not reach a congruence")
    return Congruence(a, part)


def commutativity_congruence(a: Algebra) -> Congruence:
    """Least congruence identifying x^y with y^x (and x v y with y v x)."""
    require_skew_lattice(a)
    n = a.n
    pairs = [(a.meet[x][y], a.meet[y][x]) for x in range(n) for y in range(n)]
    pairs += [(a.join[x][y], a.join[y][x]) for x in range(n) for y in range(n)]
    c = least_congruence(a, pairs)
    if c.partition != green(a, "D"):
        raise ConsistencyError("commutativity congruence differs from D")
    return c


def quotient(a: Algebra, c: Congruence | Partition) -> tuple[Algebra, Morphism]:
    """Quotient algebra on blocks (ordered by least element) and its projection."""
    p = c.partition if isinstance(c, Congruence) else c
    verdict = is_congruence(a, p)
    if not verdict:
        raise NotACongruence(f"partition is not compatible: {verdict.violation}")
    reps = [b[0] for b in p.blocks]
    k = len(reps)
    meet = [[p.block_of[a.meet[reps[s]][reps[t]]] for t in range(k)] for s in range(k)]
    join = [[p.block_of[a.join[reps[s]][reps[t]]] for t in range(k)] for s in range(k)]
    names = None
    if a.names:
        names = tuple("{" + ",".join(a.names[x] for x in b) + "}" for b in p.blocks)
    q = Algebra(k, meet, join, names=names)
    proj = Morphism(a, q, p.block_of)
    if not proj.is_homomorphism():
        raise ConsistencyError("projection onto quotient is not a homomorphism")
    return q, proj


def kernel(f: Morphism) -> Partition:
    return Partition.from_labels(f.map)


def factor_homomorphism(f: Morphism) -> tuple[Morphism, Morphism]:
    """Split ``f`` into a surjection onto ``source/ker f`` and an injection into ``target``."""
    verdict = is_homomorphism(f.map, f.source, f.target)
    if not verdict:
        raise NotAHomomorphism(f"{verdict.op} not preserved at {verdict.pair}")
    ker = kernel(f)
    q, epi = quotient(f.source, ker)
    mono = Morphism(q, f.target, tuple(f.map[b[0]] for b in ker.blocks))
    if not mono.is_homomorphism() or len(set(mono.map)) != q.n:
        raise ConsistencyError("induced map on the quotient is not an embedding")
    if epi.then(mono).map != f.map:
        raise ConsistencyError("factorisation does not recompose to f")
    return epi, mono


def _set_partitions(n: int) -> Iterator[list[int]]:
    """Restricted growth strings of length n (one per set partition)."""
    labels = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield list(labels)
            return
        for v in range(top + 2):
            labels[i] = v
            yield from rec(i + 1, max(top, v))

    if n == 0:
        yield []
        return
    yield from rec(1, 0)


def all_congruences(a: Algebra) -> list[Partition]:
    """Every congruence, by brute force over all set partitions (small n only)."""
    out = []
    for labels in _set_partitions(a.n):
        p = Partition.from_labels(labels)
        if is_congruence(a, p):
            out.append(p)
    return out
