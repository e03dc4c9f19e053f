"""Coset structure between comparable D-classes.

For D-classes ``A > B`` the cosets of A in B are the sets ``A ^ b ^ A`` and
the cosets of B in A are the sets ``B v a v B``. Each pair (coset of B in A,
coset of A in B) carries the coset bijection ``x -> the unique y <= x``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Algebra
from .errors import ConsistencyError, LevelMismatch, NotComparable, PartitionFailure
from .green import Partition, green, natural_order
from .identities import check_identity, require_skew_lattice

Pairs = frozenset[tuple[int, int]]


@dataclass(frozen=True)
class ClassStructure:
    """D-classes of a skew lattice with the order of its lattice image."""

    algebra: Algebra
    d: Partition
    # above[i][j]: class i >= class j in a/D
    above: tuple[tuple[bool, ...], ...]

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        return self.d.blocks

    def gt(self, i: int, j: int) -> bool:
        return i != j and self.above[i][j]

    def comparable_pairs(self) -> list[tuple[int, int]]:
        k = len(self.classes)
        return [(i, j) for i in range(k) for j in range(k) if self.gt(i, j)]

    def chains3(self) -> list[tuple[int, int, int]]:
        k = len(self.classes)
        return [(i, j, l) for i in range(k) for j in range(k) for l in range(k)
                if self.gt(i, j) and self.gt(j, l)]


def class_structure(a: Algebra) -> ClassStructure:
    require_skew_lattice(a)
    d = green(a, "D")
    reps = [b[0] for b in d.blocks]
    k = len(reps)
    above = tuple(tuple(d.block_of[a.meet[reps[i]][reps[j]]] == j for j in range(k))
                  for i in range(k))
    return ClassStructure(a, d, above)


@dataclass(frozen=True)
class ClassPair:
    upper: tuple[int, ...]
    lower: tuple[int, ...]
    upper_index: int
    lower_index: int


def class_pair(a: Algebra, i: int, j: int, cs: Optional[ClassStructure] = None) -> ClassPair:
    """The pair (class i, class j), which must satisfy class i > class j."""
    cs = cs or class_structure(a)
    k = len(cs.classes)
    if not (0 <= i < k and 0 <= j < k):
        raise NotComparable(f"class indices ({i}, {j}) out of range 0..{k - 1}")
    if not cs.gt(i, j):
        raise NotComparable(f"class {i} is not strictly above class {j}")
    return ClassPair(cs.classes[i], cs.classes[j], i, j)


@dataclass(frozen=True)
class CosetBijection:
    """A partial bijection from an upper D-class to a lower one, as a pair set."""

    upper_class: int
    lower_class: int
    pairs: Pairs

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(x for x, _ in self.pairs)

    @property
    def codomain(self) -> frozenset[int]:
        return frozenset(y for _, y in self.pairs)

    def __call__(self, x: int) -> int:
        for p, q in self.pairs:
            if p == x:
                return q
        raise KeyError(x)

    def __bool__(self):
        return bool(self.pairs)

    def inverse_pairs(self) -> Pairs:
        return frozenset((y, x) for x, y in self.pairs)


def identity_bijection(cls: int, elems) -> CosetBijection:
    return CosetBijection(cls, cls, frozenset((x, x) for x in elems))


@dataclass
class CosetSystem:
    pair: ClassPair
    lower_cosets: tuple[frozenset[int], ...]   # A ^ b ^ A, partitioning B
    upper_cosets: tuple[frozenset[int], ...]   # B v a v B, partitioning A
    bijections: dict[tuple[int, int], CosetBijection]  # (upper coset idx, lower coset idx)
    images: dict[int, frozenset[int]] = field(default_factory=dict)

    def lower_coset_of(self, y: int) -> int:
        return next(i for i, c in enumerate(self.lower_cosets) if y in c)

    def upper_coset_of(self, x: int) -> int:
        return next(i for i, c in enumerate(self.upper_cosets) if x in c)


def _sorted_cosets(sets) -> tuple[frozenset[int], ...]:
    return tuple(sorted(set(sets), key=lambda s: min(s)))


def _check_partition(cosets, carrier, what: str) -> None:
    seen: set[int] = set()
    for c in cosets:
        if seen & c:
            raise PartitionFailure(f"{what} overlap")
        seen |= c
    if seen != set(carrier):
        raise PartitionFailure(f"{what} do not cover the class")


def coset_system(a: Algebra, pair: ClassPair) -> CosetSystem:
    require_skew_lattice(a)
    m, j = a.meet, a.join
    A, B = pair.upper, pair.lower
    order = natural_order(a)
    for x in A:
        for y in B:
            if not order.preceq[y][x] or order.preceq[x][y]:
                raise NotComparable("classes of the pair are not strictly ordered")

    lower = _sorted_cosets(frozenset(m[m[x][b]][x] for x in A) for b in B)
    upper = _sorted_cosets(frozenset(j[j[y][x]][y] for y in B) for x in A)
    _check_partition(lower, B, "cosets of A in B")
    _check_partition(upper, A, "cosets of B in A")

    _check_coset_criterion(a, A, B, lower, m)
    _check_coset_criterion(a, B, A, upper, j)

    images: dict[int, frozenset[int]] = {}
    for x in A:
        img = frozenset(m[m[x][b]][x] for b in B)
        if img != frozenset(b for b in B if order.leq[b][x]):
            raise ConsistencyError(f"image of {x} differs from the elements below it")
        if any(len(img & c) != 1 for c in lower):
            raise PartitionFailure(f"image of {x} is not a transversal")
        images[x] = img
    for y in B:
        img = frozenset(j[j[y][x]][y] for x in A)
        if img != frozenset(x for x in A if order.leq[y][x]):
            raise ConsistencyError(f"image of {y} differs from the elements above it")
        if any(len(img & c) != 1 for c in upper):
            raise PartitionFailure(f"image of {y} is not a transversal")
        images[y] = img

    bijections: dict[tuple[int, int], CosetBijection] = {}
    for ui, U in enumerate(upper):
        for li, V in enumerate(lower):
            pairs = frozenset((x, y) for x in U for y in V if order.leq[y][x])
            f = CosetBijection(pair.upper_index, pair.lower_index, pairs)
            if f.domain != U or f.codomain != V or len(pairs) != len(U):
                raise PartitionFailure(f"coset bijection {ui}->{li} is not a bijection")
            bijections[(ui, li)] = f
    return CosetSystem(pair, lower, upper, bijections, images)


def _check_coset_criterion(a: Algebra, X, Y, cosets, op) -> None:
    """Three equivalent tests for two elements of Y lying in one coset of X."""
    cos_of = {}
    for i, c in enumerate(cosets):
        for y in c:
            cos_of[y] = i
    for y, y2 in itertools.combinations(Y, 2):
        same_coset = frozenset(op[op[x][y]][x] for x in X) == frozenset(
            op[op[x][y2]][x] for x in X)
        all_x = all(op[op[x][y]][x] == op[op[x][y2]][x] for x in X)
        some_x = any(op[op[x][y]][x] == op[op[x][y2]][x] for x in X)
        if not (same_coset == all_x == some_x):
            raise ConsistencyError(f"coset criteria disagree for {y}, {y2}")
        # equal coset sets must also mean the same block of the partition
        if same_coset != (cos_of[y] == cos_of[y2]):
            raise PartitionFailure(f"coset membership inconsistent for {y}, {y2}")


def compose_bijections(f: CosetBijection, g: CosetBijection) -> CosetBijection:
    """Relational composite ``g ∘ f``: first f, then g (possibly empty)."""
    if f.lower_class != g.upper_class:
        raise LevelMismatch(
            f"cannot compose {f.upper_class}->{f.lower_class} with {g.upper_class}->{g.lower_class}")
    gmap = dict(g.pairs)
    pairs = frozenset((x, gmap[y]) for x, y in f.pairs if y in gmap)
    return CosetBijection(f.upper_class, g.lower_class, pairs)


def all_coset_systems(a: Algebra, cs: Optional[ClassStructure] = None
                      ) -> dict[tuple[int, int], CosetSystem]:
    cs = cs or class_structure(a)
    return {(i, j): coset_system(a, ClassPair(cs.classes[i], cs.classes[j], i, j))
            for i, j in cs.comparable_pairs()}


@dataclass(frozen=True)
class CategoricityWitness:
    chain: tuple[int, int, int]
    phi: CosetBijection
    psi: CosetBijection
    composite: CosetBijection
    chi: CosetBijection

    def cosets(self) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
        """The A-coset, B-coset and C-coset the failing composite passes through."""
        return (self.phi.domain, self.phi.codomain & self.psi.domain, self.psi.codomain)


@dataclass(frozen=True)
class CategoricityVerdict:
    categorical: bool
    strictly: bool
    witness: Optional[CategoricityWitness] = None
    # (a, c, middle class) with a > c but nothing of the middle class between
    gap: Optional[tuple[int, int, int]] = None

    @property
    def label(self) -> str:
        if self.strictly:
            return "strictly_categorical"
        return "categorical" if self.categorical else "neither"


def is_categorical(a: Algebra) -> CategoricityVerdict:
    """Test every composite of coset bijections along chains A > B > C.

    A nonempty composite always lies inside one coset bijection A -> C; the
    skew lattice is categorical when it always equals that bijection. It is
    strictly categorical when, moreover, every ``a > c`` along such a chain
    passes through B (so no coset bijection A -> C is missed by composites).
    """
    cs = class_structure(a)
    systems = all_coset_systems(a, cs)
    order = natural_order(a)
    witness = None
    gap = None
    for (i, j, k) in cs.chains3():
        chis = list(systems[(i, k)].bijections.values())
        for phi in systems[(i, j)].bijections.values():
            for psi in systems[(j, k)].bijections.values():
                comp = compose_bijections(phi, psi)
                if not comp:
                    continue
                host = [chi for chi in chis if comp.pairs <= chi.pairs]
                if len(host) != 1:
                    raise ConsistencyError("nonempty composite is not inside one coset bijection")
                if comp.pairs != host[0].pairs and witness is None:
                    witness = CategoricityWitness((i, j, k), phi, psi, comp, host[0])
        if gap is None:
            for x in cs.classes[i]:
                for z in cs.classes[k]:
                    if order.leq[z][x] and not any(
                            order.leq[y][x] and order.leq[z][y] for y in cs.classes[j]):
                        gap = (x, z, j)
                        break
                if gap:
                    break
    categorical = witness is None
    return CategoricityVerdict(categorical, categorical and gap is None, witness, gap)


def sub_inclusions(a: Algebra, cs: Optional[ClassStructure] = None) -> list[str]:
    """Check ``A^c^A ⊆ B^c^B`` and ``C v a v C ⊆ B v a v B`` on every chain A > B > C.

    Returns a list of failure descriptions (empty when all inclusions hold).
    """
    cs = cs or class_structure(a)
    m, j = a.meet, a.join
    failures = []
    for (i, jj, k) in cs.chains3():
        A, B, C = cs.classes[i], cs.classes[jj], cs.classes[k]
        for c in C:
            if not {m[m[x][c]][x] for x in A} <= {m[m[y][c]][y] for y in B}:
                failures.append(f"A^{c}^A not in B^{c}^B on chain {(i, jj, k)}")
        for x in A:
            if not {j[j[z][x]][z] for z in C} <= {j[j[y][x]][y] for y in B}:
                failures.append(f"Cv{x}vC not in Bv{x}vB on chain {(i, jj, k)}")
    return failures


def composition_inclusions(a: Algebra) -> list[str]:
    """For a > b > c: the composite of the bijections through (a,b) and (b,c)
    lies inside the bijection through (a,c)."""
    cs = class_structure(a)
    systems = all_coset_systems(a, cs)
    order = natural_order(a)
    failures = []

    def through(sys_: CosetSystem, x: int, y: int) -> CosetBijection:
        return sys_.bijections[(sys_.upper_coset_of(x), sys_.lower_coset_of(y))]

    for (i, j, k) in cs.chains3():
        for x in cs.classes[i]:
            for y in cs.classes[j]:
                if not order.leq[y][x]:
                    continue
                for z in cs.classes[k]:
                    if not order.leq[z][y]:
                        continue
                    phi = through(systems[(i, j)], x, y)
                    psi = through(systems[(j, k)], y, z)
                    chi = through(systems[(i, k)], x, z)
                    if not compose_bijections(phi, psi).pairs <= chi.pairs:
                        failures.append(f"composite through {x}>{y}>{z} escapes its bijection")
    return failures


def normality_cover_check(a: Algebra) -> bool:
    """Every element of an upper class is above exactly one element of each lower class."""
    cs = class_structure(a)
    order = natural_order(a)
    normal = True
    for i, j in cs.comparable_pairs():
        for x in cs.classes[i]:
            if sum(1 for y in cs.classes[j] if order.leq[y][x]) != 1:
                normal = False
                break
        if not normal:
            break
    if normal != check_identity(a, "S25").holds:
        raise ConsistencyError("covering characterisation of normality disagrees with S25")
    return normal


def order_from_cosets(a: Algebra, pair: ClassPair) -> frozenset[tuple[int, int]]:
    """Union of all coset bijections between the two classes, as (upper, lower) pairs."""
    sys_ = coset_system(a, pair)
    out: set[tuple[int, int]] = set()
    for f in sys_.bijections.values():
        out |= f.pairs
    return frozenset(out)


@dataclass(frozen=True)
class Reconstruction:
    meet: dict[tuple[int, int], int]
    join: dict[tuple[int, int], int]
    agrees: bool
    mismatches: tuple[tuple[str, int, int], ...] = ()


def _rectangular_ops(a: Algebra, cls):
    """Meet and join on one D-class rebuilt from its R- and L-classes.

    ``x ^ y`` is the element R-related to x and L-related to y; ``x v y`` is
    R-related to y and L-related to x.
    """
    m, j = a.meet, a.join

    def r_rel(x, y):
        return m[x][y] == y and m[y][x] == x

    def l_rel(x, y):
        return m[x][y] == x and m[y][x] == y

    meet, join = {}, {}
    for x in cls:
        for y in cls:
            mm = [z for z in cls if r_rel(x, z) and l_rel(y, z)]
            jj = [z for z in cls if r_rel(y, z) and l_rel(x, z)]
            if len(mm) != 1 or len(jj) != 1:
                raise ConsistencyError("class is not rectangular")
            meet[(x, y)] = mm[0]
            join[(x, y)] = jj[0]
    return meet, join


def reconstruct_operations(a: Algebra, pair: ClassPair) -> Reconstruction:
    """Rebuild meet and join on ``A ∪ B`` from coset bijections and rectangular structure.

    For x in A, y in B let y' be the partner of x in the coset of A containing y,
    and x' the partner of y in the coset of B containing x. Then
    ``x^y = y'^y``, ``y^x = y^y'``, ``x v y = x v x'``, ``y v x = x' v x``.
    """
    sys_ = coset_system(a, pair)
    A, B = pair.upper, pair.lower
    meet_a, join_a = _rectangular_ops(a, A)
    meet_b, join_b = _rectangular_ops(a, B)
    meet = {**meet_a, **meet_b}
    join = {**join_a, **join_b}
    for x in A:
        ux = sys_.upper_coset_of(x)
        for y in B:
            ly = sys_.lower_coset_of(y)
            f = sys_.bijections[(ux, ly)]
            down = f(x)
            up = next(p for p, q in f.pairs if q == y)
            meet[(x, y)] = meet_b[(down, y)]
            meet[(y, x)] = meet_b[(y, down)]
            join[(x, y)] = join_a[(x, up)]
            join[(y, x)] = join_a[(up, x)]
    mismatches = []
    for (x, y), v in sorted(meet.items()):
        if a.meet[x][y] != v:
            mismatches.append(("meet", x, y))
    for (x, y), v in sorted(join.items()):
        if a.join[x][y] != v:
            mismatches.append(("join", x, y))
    return Reconstruction(meet, join, not mismatches, tuple(mismatches))


def shape(a: Algebra) -> str:
    """primitive, skew_chain, diamond or other, read off the lattice image."""
    cs = class_structure(a)
    k = len(cs.classes)
    comparable = all(cs.above[i][j] or cs.above[j][i] for i in range(k) for j in range(k))
    if k == 2:
        return "primitive"
    if k > 2 and comparable:
        return "skew_chain"
    if k == 4:
        # exactly one incomparable pair, with a top and a bottom class
        incomparable = [(i, j) for i in range(k) for j in range(i + 1, k)
                        if not (cs.above[i][j] or cs.above[j][i])]
        if len(incomparable) == 1:
            return "diamond"
    return "other"
