"""Identity catalog, exhaustive identity checking and the property profile."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, fields
from typing import Iterable, Optional

from .algebra import Algebra
from .errors import ConsistencyError, NotASkewLattice
from .terms import Term, compile_term, dual_term, format_term, parse_equation, variables


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term
    code: Optional[str] = None

    @classmethod
    def parse(cls, text: str, code: Optional[str] = None) -> "Identity":
        lhs, rhs = parse_equation(text)
        return cls(lhs, rhs, code)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(sorted(variables(self.lhs) | variables(self.rhs)))

    def dual(self) -> "Identity":
        code = f"D({self.code})" if self.code else None
        return Identity(dual_term(self.lhs), dual_term(self.rhs), code)

    def __str__(self):
        return f"{format_term(self.lhs)} = {format_term(self.rhs)}"


_CATALOG_SOURCE = [
    ("S1", "x ^ (y ^ z) = (x ^ y) ^ z"),
    ("S2", "x v (y v z) = (x v y) v z"),
    ("S3", "(y ^ x) v x = x"),
    ("S4", "x ^ (x v y) = x"),
    ("S5", "(y v x) ^ x = x"),
    ("S6", "x v (x ^ y) = x"),
    ("S7", "x ^ y = y ^ x"),
    ("S8", "x v y = y v x"),
    ("S9", "(x ^ y) v x = x"),
    ("S10", "x ^ (y v x) = x"),
    ("S11", "(x v y) ^ x = x"),
    ("S12", "x v (y ^ x) = x"),
    ("S13", "x ^ y ^ (x v y v x) = (x v y v x) ^ y ^ x"),
    ("S14", "x v y v (x ^ y ^ x) = (x ^ y ^ x) v y v x"),
    ("S15", "x ^ y ^ x = y ^ x"),
    ("S16", "x v y v x = x v y"),
    ("S17", "x ^ y ^ x = x ^ y"),
    ("S18", "x v y v x = y v x"),
    ("S19", "x ^ (y v z) ^ x = (x ^ y ^ x) v (x ^ z ^ x)"),
    ("S20", "x v (y ^ z) v x = (x v y v x) ^ (x v z v x)"),
    ("S21", "x ^ (y v z) = (x ^ y) v (x ^ z)"),
    ("S22", "(x v y) ^ z = (x ^ z) v (y ^ z)"),
    ("S23", "x v (y ^ z) = (x v y) ^ (x v z)"),
    ("S24", "(x ^ y) v z = (x v z) ^ (y v z)"),
    ("S25", "x ^ y ^ z ^ w = x ^ z ^ y ^ w"),
    ("S26", "x v y v z v w = x v z v y v w"),
    ("REG_MEET", "x ^ y ^ x ^ z ^ x = x ^ y ^ z ^ x"),
    ("REG_JOIN", "x v y v x v z v x = x v y v z v x"),
    ("RECT", "x ^ y ^ x = x"),
    ("IDEM_MEET", "x ^ x = x"),
    ("IDEM_JOIN", "x v x = x"),
]

CATALOG: dict[str, Identity] = {
    code: Identity.parse(text, code) for code, text in _CATALOG_SOURCE
}

GROUPS: dict[str, tuple[str, ...]] = {
    "SKEW": ("S1", "S2", "S3", "S4", "S5", "S6"),
    "LATTICE": ("S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8"),
    "REG": ("REG_MEET", "REG_JOIN"),
    "IDEM": ("IDEM_MEET", "IDEM_JOIN"),
}

SKEW_AXIOMS = tuple(CATALOG[c] for c in GROUPS["SKEW"])


def identity(spec: str | Identity) -> Identity:
    """Look up a catalog code or parse an inline ``"<term> = <term>"``."""
    if isinstance(spec, Identity):
        return spec
    key = spec.strip()
    if key in CATALOG:
        return CATALOG[key]
    return Identity.parse(key)


def identity_list(specs: str | Iterable[str | Identity] | None) -> list[Identity]:
    """Expand a comma list / iterable of codes, ranges (``S1-S6``) and groups."""
    if specs is None:
        return []
    if isinstance(specs, str):
        specs = _split_specs(specs)
    out: list[Identity] = []
    for spec in specs:
        if isinstance(spec, Identity):
            out.append(spec)
            continue
        spec = spec.strip()
        if spec in GROUPS:
            out.extend(CATALOG[c] for c in GROUPS[spec])
        elif "-" in spec and "=" not in spec:
            lo, hi = (p.strip() for p in spec.split("-", 1))
            if not (lo.startswith("S") and hi.startswith("S")):
                raise ValueError(f"bad identity range {spec!r}")
            out.extend(CATALOG[f"S{k}"] for k in range(int(lo[1:]), int(hi[1:]) + 1))
        else:
            out.append(identity(spec))
    return out


def _split_specs(text: str) -> list[str]:
    # inline equations may not contain commas, so a plain split is enough
    return [part for part in (p.strip() for p in text.split(",")) if part]


@dataclass(frozen=True)
class Verdict:
    holds: bool
    counterexample: Optional[dict[int, int]] = None
    lhs_value: Optional[int] = None
    rhs_value: Optional[int] = None

    def __bool__(self):
        return self.holds


def check_identity(a: Algebra, ident: Identity | str) -> Verdict:
    """Exhaustively evaluate ``ident`` over all assignments.

    Assignments run in lexicographic order with the lowest-numbered variable
    most significant, so the reported counterexample is the least one.
    """
    ident = identity(ident)
    vs = ident.variables
    f, g = compile_term(ident.lhs), compile_term(ident.rhs)
    m, j = a.meet, a.join
    width = (max(vs) + 1) if vs else 0
    vals = [0] * width
    for combo in itertools.product(range(a.n), repeat=len(vs)):
        for v, e in zip(vs, combo):
            vals[v] = e
        left, right = f(m, j, vals), g(m, j, vals)
        if left != right:
            return Verdict(False, dict(zip(vs, combo)), left, right)
    return Verdict(True)


def satisfies(a: Algebra, idents: Iterable[Identity | str]) -> bool:
    return all(check_identity(a, i).holds for i in idents)


def first_failure(a: Algebra, idents: Iterable[Identity | str]) -> Optional[tuple[Identity, Verdict]]:
    for i in idents:
        i = identity(i)
        v = check_identity(a, i)
        if not v.holds:
            return i, v
    return None


def is_skew_lattice(a: Algebra) -> bool:
    return satisfies(a, SKEW_AXIOMS)


def require_skew_lattice(a: Algebra) -> None:
    bad = first_failure(a, SKEW_AXIOMS)
    if bad is not None:
        ident, verdict = bad
        raise NotASkewLattice(
            f"{ident.code} fails at {format_assignment(verdict.counterexample)}")


def format_assignment(asg: Optional[dict[int, int]], a: Optional[Algebra] = None) -> str:
    from .terms import var_name
    if not asg:
        return "{}"
    label = a.label if a is not None else str
    return ", ".join(f"{var_name(v)}={label(e)}" for v, e in sorted(asg.items()))


@dataclass
class PropertyProfile:
    skew_lattice: bool = False
    lattice: bool = False
    right_handed: bool = False
    left_handed: bool = False
    lower_symmetric: bool = False
    upper_symmetric: bool = False
    symmetric: bool = False
    middle_distributive: bool = False
    bidistributive: bool = False
    normal: bool = False
    conormal: bool = False
    regular: bool = False
    rectangular: bool = False
    skew_star: bool = False
    # structural flags; None when the algebra is not a skew lattice
    categorical: Optional[bool] = None
    strictly_categorical: Optional[bool] = None
    connected: Optional[bool] = None
    primitive: Optional[bool] = None
    skew_chain: Optional[bool] = None
    diamond: Optional[bool] = None

    def items(self):
        return [(f.name, getattr(self, f.name)) for f in fields(self)]


# profile flag -> catalog codes that define it
EQUATIONAL_FLAGS: dict[str, tuple[str, ...]] = {
    "skew_lattice": GROUPS["SKEW"],
    "lattice": GROUPS["LATTICE"],
    "right_handed": ("S15", "S16"),
    "left_handed": ("S17", "S18"),
    "lower_symmetric": ("S13",),
    "upper_symmetric": ("S14",),
    "symmetric": ("S13", "S14"),
    "middle_distributive": ("S19", "S20"),
    "bidistributive": ("S21", "S22", "S23", "S24"),
    "normal": ("S25",),
    "conormal": ("S26",),
    "regular": GROUPS["REG"],
    "rectangular": ("RECT",),
    "skew_star": ("S1", "S2", "S9", "S10", "S11", "S12"),
}


def classify(a: Algebra) -> PropertyProfile:
    results = {code: check_identity(a, ident).holds for code, ident in CATALOG.items()}
    prof = PropertyProfile(**{
        flag: all(results[c] for c in codes) for flag, codes in EQUATIONAL_FLAGS.items()
    })
    # the varieties below are defined relative to S1-S6
    if not prof.skew_lattice:
        for flag in EQUATIONAL_FLAGS:
            if flag not in ("skew_lattice", "regular", "skew_star"):
                setattr(prof, flag, False)
        return prof

    from . import cosets, green
    d = green.green(a, "D")
    if prof.right_handed != (green.green(a, "R") == d):
        raise ConsistencyError("S15/S16 disagree with R = D")
    if prof.left_handed != (green.green(a, "L") == d):
        raise ConsistencyError("S17/S18 disagree with L = D")
    if prof.normal != cosets.normality_cover_check(a):
        raise ConsistencyError("S25 disagrees with the covering characterisation")

    cat = cosets.is_categorical(a)
    prof.categorical = cat.categorical
    prof.strictly_categorical = cat.strictly
    prof.connected = len(green.components(a).blocks) == 1
    sh = cosets.shape(a)
    prof.primitive = sh == "primitive"
    prof.skew_chain = sh in ("primitive", "skew_chain")
    prof.diamond = sh == "diamond"
    return prof


def center(a: Algebra) -> frozenset[int]:
    """Elements commuting with everything under both operations."""
    require_skew_lattice(a)
    m, j = a.meet, a.join
    z = frozenset(x for x in range(a.n)
                  if all(m[x][y] == m[y][x] and j[x][y] == j[y][x] for y in range(a.n)))
    from .algebra import subalgebra_closure
    from .green import green
    if subalgebra_closure(a, z) != z:
        raise ConsistencyError("center is not closed under the operations")
    singletons = frozenset(b[0] for b in green(a, "D").blocks if len(b) == 1)
    if z != singletons:
        raise ConsistencyError("center differs from the union of singleton D-classes")
    return z

