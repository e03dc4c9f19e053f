"""The D-class, component and fibered-product decompositions of a skew lattice."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import Algebra, Morphism, is_homomorphism, subalgebra_closure
from .congruence import is_congruence, quotient
from .errors import (ComponentNotCongruence, ConsistencyError, NotAHomomorphism,
                     RectangularityFailure, TargetMismatch)
from .green import Partition, components, green, natural_order
from .identities import PropertyProfile, check_identity, classify, require_skew_lattice


@dataclass
class Decomposition:
    kind: str
    # (subalgebra, embedding new index -> old index); empty for "second"
    parts: list[tuple[Algebra, tuple[int, ...]]]
    quotient: Algebra
    quotient_profile: PropertyProfile
    partition: Optional[Partition] = None
    factors: dict[str, Algebra] = field(default_factory=dict)
    projections: dict[str, Morphism] = field(default_factory=dict)
    product: Optional[Algebra] = None
    pairs: tuple[tuple[int, int], ...] = ()
    witness: Optional[Morphism] = None


def _parts(a: Algebra, p: Partition) -> list[tuple[Algebra, tuple[int, ...]]]:
    out = []
    for block in p.blocks:
        if subalgebra_closure(a, block) != frozenset(block):
            raise ConsistencyError(f"block {block} is not a subalgebra")
        out.append(a.restrict(block))
    return out


def _is_rectangular_subset(a: Algebra, elems) -> bool:
    m = a.meet
    return all(m[m[x][y]][x] == x for x in elems for y in elems)


def first_decomposition(a: Algebra) -> Decomposition:
    """D-classes as maximal rectangular subalgebras over the maximal lattice image."""
    require_skew_lattice(a)
    d = green(a, "D")
    parts = _parts(a, d)
    for (sub, emb) in parts:
        if not check_identity(sub, "RECT"):
            raise RectangularityFailure(f"D-class {emb} is not rectangular")
        # maximality: adding any outside element breaks rectangularity
        for x in range(a.n):
            if x not in emb and _is_rectangular_subset(a, emb + (x,)):
                raise RectangularityFailure(f"D-class {emb} extends by {x}")
    q, _ = quotient(a, d)
    prof = classify(q)
    if not prof.lattice:
        raise ConsistencyError("S/D is not a lattice")
    return Decomposition("first", parts, q, prof, partition=d)


def component_decomposition(a: Algebra) -> Decomposition:
    """Connected components over the maximal rectangular image."""
    require_skew_lattice(a)
    comp = components(a)
    if not is_congruence(a, comp):
        raise ComponentNotCongruence("component partition is not a congruence")
    parts = _parts(a, comp)
    q, _ = quotient(a, comp)
    prof = classify(q)
    if not prof.rectangular:
        raise ConsistencyError("quotient by components is not rectangular")
    for sub, _emb in parts:
        if len(components(sub)) != 1:
            raise ConsistencyError("component is not connected as a subalgebra")
    return Decomposition("component", parts, q, prof, partition=comp)


def fibered_product(b: Algebra, c: Algebra, p: Morphism, q: Morphism
                    ) -> tuple[Algebra, tuple[tuple[int, int], ...]]:
    """Pairs ``(x, y)`` with ``p(x) = q(y)``, componentwise operations.

    Returns the algebra and its carrier as the lexicographically sorted pair list.
    """
    if p.source != b or q.source != c:
        raise TargetMismatch("morphism sources do not match the factors")
    if p.target != q.target:
        raise TargetMismatch("morphisms have different targets")
    for f in (p, q):
        v = is_homomorphism(f.map, f.source, f.target)
        if not v:
            raise NotAHomomorphism(f"{v.op} not preserved at {v.pair}")
    pairs = tuple((x, y) for x in range(b.n) for y in range(c.n) if p.map[x] == q.map[y])
    index = {pr: i for i, pr in enumerate(pairs)}
    meet = [[index[(b.meet[x][x2], c.meet[y][y2])] for (x2, y2) in pairs] for (x, y) in pairs]
    join = [[index[(b.join[x][x2], c.join[y][y2])] for (x2, y2) in pairs] for (x, y) in pairs]
    return Algebra(len(pairs), meet, join), pairs


def second_decomposition(a: Algebra) -> Decomposition:
    """``a`` as the fibered product of ``a/L`` and ``a/R`` over ``a/D``.

    The isomorphism is the pair map ``x -> (L-class of x, R-class of x)``.
    """
    require_skew_lattice(a)
    lp, rp, dp = green(a, "L"), green(a, "R"), green(a, "D")
    a_l, proj_l = quotient(a, lp)
    a_r, proj_r = quotient(a, rp)
    a_d, proj_d = quotient(a, dp)
    # induced maps a/L -> a/D and a/R -> a/D through block representatives
    to_d_l = Morphism(a_l, a_d, tuple(dp.block_of[blk[0]] for blk in lp.blocks))
    to_d_r = Morphism(a_r, a_d, tuple(dp.block_of[blk[0]] for blk in rp.blocks))
    prod, pairs = fibered_product(a_l, a_r, to_d_l, to_d_r)
    index = {pr: i for i, pr in enumerate(pairs)}
    pair_map = tuple(index[(lp.block_of[x], rp.block_of[x])] for x in range(a.n))
    if len(set(pair_map)) != a.n:
        raise ConsistencyError("pair map is not injective (H is not trivial)")
    if prod.n != a.n:
        raise ConsistencyError("fibered product has the wrong size")
    witness = Morphism(a, prod, pair_map)
    if not witness.is_homomorphism():
        raise ConsistencyError("pair map is not a homomorphism")
    prof_l, prof_r = classify(a_l), classify(a_r)
    if not prof_l.right_handed or not prof_r.left_handed:
        raise ConsistencyError("a/L must be right-handed and a/R left-handed")
    return Decomposition(
        "second", [], a_d, classify(a_d),
        factors={"L": a_l, "R": a_r, "D": a_d},
        projections={"L": proj_l, "R": proj_r, "D": proj_d, "L->D": to_d_l, "R->D": to_d_r},
        product=prod, pairs=pairs, witness=witness,
    )


def order_check(a: Algebra) -> None:
    """Every D-class is an antichain of the natural order."""
    order = natural_order(a)
    d = green(a, "D")
    for block in d.blocks:
        for x in block:
            for y in block:
                if x != y and order.leq[x][y]:
                    raise ConsistencyError(f"{x} <= {y} inside one D-class")
