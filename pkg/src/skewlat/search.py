"""Finite model search: canonical forms, a propagating backtracker, enumeration.

The engine fills the meet table row-major, then the join table row-major;
under a skeleton, cells with the fewest allowed values go first. Every ground instance of every required identity is compiled into a small
checker that either confirms the instance, reports a conflict, deduces the
one missing outer cell, or names the cell it is waiting on (its watch).
Isomorph rejection during enumeration uses the least-number heuristic;
exact duplicates are removed afterwards by :func:`canonical_form`.
"""

from __future__ import annotations

import functools
import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .algebra import Algebra
from .errors import BudgetExceeded, SizeLimit
from .identities import (CATALOG, Identity, PropertyProfile, check_identity, classify,
                         identity_list)
from .terms import MEET, Op, Var

log = logging.getLogger(__name__)

CANONICAL_LIMIT = 9
AUTO = "auto"


# ---------------------------------------------------------------------------
# canonical form


def canonical_labeling(a: Algebra) -> tuple[int, ...]:
    """Permutation ``perm`` (old -> new) whose relabeling is lexicographically least.

    Keys are compared as (meet table row-major, join table row-major). New
    labels are handed out on first appearance, so only the choices of which
    element takes each still-unused label in row 0 are branched on.
    """
    n = a.n
    if n > CANONICAL_LIMIT:
        raise SizeLimit(f"canonical form is limited to n <= {CANONICAL_LIMIT}, got {n}")
    m = a.meet
    best_key: list = [None]
    best_perm: list = [None]
    nn = n * n
    pi = [0] * n          # new -> old
    sigma = [-1] * n      # old -> new
    cur = [0] * nn

    def finish(count: int, equal: bool) -> bool:
        jkey = tuple(sigma[a.join[pi[i]][pi[j]]] for i in range(n) for j in range(n))
        key = (tuple(cur), jkey)
        if best_key[0] is None or key < best_key[0]:
            best_key[0] = key
            best_perm[0] = tuple(sigma)
            return True
        return False

    def rec(p: int, count: int, equal: bool) -> bool:
        # equal: prefix cur[:p] equals best meet prefix (False means strictly less)
        if p == nn:
            return finish(count, equal)
        i, j = divmod(p, n)
        if j >= count:
            # label j is unused: try every unlabelled element for it
            updated = False
            for u in range(n):
                if sigma[u] != -1:
                    continue
                pi[j] = u
                sigma[u] = j
                if rec(p, j + 1, equal):
                    updated = True
                    equal = True
                sigma[u] = -1
            return updated
        v = m[pi[i]][pi[j]]
        added = False
        if sigma[v] == -1:
            sigma[v] = count
            pi[count] = v
            count += 1
            added = True
        val = sigma[v]
        cur[p] = val
        result = False
        if equal and best_key[0] is not None:
            b = best_key[0][0][p]
            if val > b:
                if added:
                    sigma[v] = -1
                return False
            result = rec(p + 1, count, val == b)
        else:
            result = rec(p + 1, count, False if best_key[0] is not None else equal)
        if added:
            sigma[v] = -1
        return result

    rec(0, 0, True)
    return best_perm[0]


def canonical_form(a: Algebra) -> Algebra:
    """Lexicographically least relabeling of ``a`` (names are dropped)."""
    perm = canonical_labeling(a)
    c = a.relabel(perm)
    return Algebra(c.n, c.meet, c.join)


def canonical_key(a: Algebra) -> bytes:
    c = canonical_form(a)
    return bytes(v for row in c.meet for v in row) + bytes(v for row in c.join for v in row)


def table_bytes(a: Algebra) -> bytes:
    return bytes(v for row in a.meet for v in row) + bytes(v for row in a.join for v in row)


# ---------------------------------------------------------------------------
# skeletons


@dataclass(frozen=True)
class Skeleton:
    """Prescribed D-classes: sizes, the lattice they form, and a rectangular shape each.

    Elements are numbered class by class. ``lattice`` is a lattice on the
    class indices; ``shapes[i] = (rows, cols)`` fixes class i as the
    rectangular skew lattice on rows x cols.
    """

    sizes: tuple[int, ...]
    lattice: Algebra
    shapes: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def class_of(self) -> list[int]:
        out = []
        for i, s in enumerate(self.sizes):
            out += [i] * s
        return out

    def handedness(self) -> Optional[str]:
        """"right" if every class is a single row, "left" if a single column."""
        if all(r == 1 for r, _ in self.shapes):
            return "right"
        if all(c == 1 for _, c in self.shapes):
            return "left"
        return None

    def describe(self) -> str:
        shapes = ",".join(f"{r}x{c}" for r, c in self.shapes)
        return f"{Layout(self.sizes, self.lattice).describe()} [{shapes}]"


def _chain_lattice(k: int) -> Algebra:
    # class 0 on top
    meet = [[max(i, j) for j in range(k)] for i in range(k)]
    join = [[min(i, j) for j in range(k)] for i in range(k)]
    return Algebra(k, meet, join)


def _factor_pairs(s: int) -> list[tuple[int, int]]:
    return [(r, s // r) for r in range(1, s + 1) if s % r == 0]


def _diamond_lattice() -> Algebra:
    # 0 = top, 1 and 2 incomparable, 3 = bottom
    meet = [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]]
    join = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]]
    return Algebra(4, meet, join)


@dataclass(frozen=True)
class Layout:
    """Class sizes together with the lattice the classes form (shapes left open)."""

    sizes: tuple[int, ...]
    lattice: Algebra

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def is_chain(self) -> bool:
        k = len(self.sizes)
        return all(self.lattice.meet[i][j] in (i, j) for i in range(k) for j in range(k))

    def describe(self) -> str:
        if self.is_chain() and self.lattice == _chain_lattice(len(self.sizes)):
            return ">".join(map(str, self.sizes))
        if self.lattice == _diamond_lattice():
            j, a, b, m = self.sizes
            return f"{j};{a},{b};{m}"
        return f"classes {self.sizes}"

    def variants(self) -> Iterator[Skeleton]:
        """Every assignment of rectangular shapes to the classes, in a fixed order."""
        for shapes in itertools.product(*(_factor_pairs(s) for s in self.sizes)):
            yield Skeleton(self.sizes, self.lattice, shapes)


def chain_layout(sizes: Sequence[int]) -> Layout:
    return Layout(tuple(sizes), _chain_lattice(len(sizes)))


def diamond_layout(top: int, left: int, right: int, bottom: int) -> Layout:
    return Layout((top, left, right, bottom), _diamond_lattice())


def parse_skeleton(spec: str) -> Layout:
    """``"2>4>2"`` (chain, top class first) or ``"J;A,B;M"`` (diamond)."""
    try:
        if ";" in spec:
            top, mid, bottom = spec.split(";")
            left, right = mid.split(",")
            layout = diamond_layout(int(top), int(left), int(right), int(bottom))
        else:
            layout = chain_layout([int(p) for p in spec.split(">")])
    except ValueError:
        raise ValueError(f"bad skeleton {spec!r}; expected e.g. '2>4>2' or '1;2,2;1'") from None
    if any(s < 1 for s in layout.sizes):
        raise ValueError(f"bad skeleton {spec!r}; class sizes must be positive")
    return layout


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of n, fewest parts first, then lexicographic."""
    for k in range(1, n + 1):
        for cuts in itertools.combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


# ---------------------------------------------------------------------------
# the engine

DONE = -1
CONFLICT = -2


def _compile_checker(ident: Identity, n: int) -> Callable:
    """Compile one identity into ``chk(V, args)`` over the flat cell array ``V``.

    Cell of ``x op y`` is ``op_offset + x*n + y`` (meet offset 0, join n*n).
    Returns DONE, CONFLICT, a cell to watch (``0 <= c < N``), two cells to
    watch (``N + c1*N + c2``), or a deduction ``-3 - (cell*n + value)``.
    """
    nn = n * n
    N = 2 * nn
    vs = ident.variables
    lines = ["def chk(V, a):"]
    if vs:
        lines.append(f"    {', '.join(f'a{v}' for v in vs)}, = a")

    def side(term, tag: str) -> list[str]:
        out: list[str] = []
        if isinstance(term, Var):
            return [f"    {tag}v = a{term.index}; {tag}c = -1; {tag}t = 0"]
        nodes: list = []

        def post(t):
            if isinstance(t, Var):
                return f"a{t.index}"
            left = post(t.left)
            right = post(t.right)
            name = f"{tag}{len(nodes)}"
            nodes.append((name, t.op, left, right))
            return name

        post(term)
        out.append(f"    {tag}v = -1; {tag}c = -1; {tag}t = 0")
        indent = "    "
        for k, (name, op, left, right) in enumerate(nodes):
            off = 0 if op == MEET else nn
            top = 1 if k == len(nodes) - 1 else 0
            out.append(f"{indent}{name}c = {off} + {left}*{n} + {right}")
            out.append(f"{indent}{name} = V[{name}c]")
            out.append(f"{indent}if {name} < 0:")
            out.append(f"{indent}    {tag}c = {name}c; {tag}t = {top}")
            out.append(f"{indent}else:")
            indent += "    "
        out.append(f"{indent}{tag}v = {nodes[-1][0]}")
        return out

    lines += side(ident.lhs, "L")
    lines += side(ident.rhs, "R")
    lines += [
        "    if Lv >= 0:",
        "        if Rv >= 0:",
        f"            return {DONE} if Lv == Rv else {CONFLICT}",
        "        if Rt:",
        f"            return -3 - (Rc*{n} + Lv)",
        "        return Rc",
        "    if Rv >= 0:",
        "        if Lt:",
        f"            return -3 - (Lc*{n} + Rv)",
        "        return Lc",
        f"    return {N} + Lc*{N} + Rc",
    ]
    ns: dict = {}
    exec("\n".join(lines), ns)
    return ns["chk"]


class _Engine:
    """Backtracking search over both operation tables of an n-element algebra."""

    def __init__(self, n: int, satisfy: Sequence[Identity], *,
                 skeleton: Optional[Skeleton] = None, lnh: bool = True,
                 propagate: bool = True, idempotent: Optional[bool] = None):
        self.n = n
        nn = n * n
        self.nn = nn
        self.N = 2 * nn
        self.propagate_enabled = propagate
        full = (1 << n) - 1
        self.allowed = [full] * self.N
        self.value = [-1] * self.N
        preset: dict[int, int] = {}
        codes = {i.code for i in satisfy}
        if idempotent is None:
            # idempotency is derivable from the absorption laws
            idempotent = {"S3", "S4", "S5", "S6"} <= codes
        if idempotent:
            for x in range(n):
                preset[x * n + x] = x
                preset[nn + x * n + x] = x
        self.lnh = lnh and skeleton is None
        if skeleton is not None:
            if skeleton.n != n:
                raise ValueError(f"skeleton sizes sum to {skeleton.n}, not {n}")
            self._apply_skeleton(skeleton, preset)
            # handedness is decided class by class, so one-sided shapes imply
            # the handedness identities; adding them only strengthens propagation
            hand = skeleton.handedness()
            if hand is not None and idempotent:
                extra = ("S15", "S16") if hand == "right" else ("S17", "S18")
                satisfy = list(satisfy) + [CATALOG[c] for c in extra if c not in codes]
        self.preset = preset

        # ground instances
        self.checks: list[Callable] = []
        self.args: list[tuple[int, ...]] = []
        for ident in satisfy:
            chk = _compile_checker(ident, n)
            k = len(ident.variables)
            width = max(ident.variables) + 1 if ident.variables else 0
            for combo in itertools.product(range(n), repeat=k):
                args = [0] * width
                for v, e in zip(ident.variables, combo):
                    args[v] = e
                self.checks.append(chk)
                self.args.append(tuple(args))
        self.watches: list[set[int]] = [set() for _ in range(self.N)]
        self.order = [c for c in range(self.N) if c not in preset]
        if skeleton is not None:
            # most constrained cells first; the row-major order LNH relies on is off anyway
            self.order.sort(key=lambda c: bin(self.allowed[c]).count("1"))
        self.nodes = 0

    def _apply_skeleton(self, sk: Skeleton, preset: dict[int, int]) -> None:
        n, nn = self.n, self.nn
        cls = sk.class_of()
        members = [[x for x in range(n) if cls[x] == i] for i in range(len(sk.sizes))]
        masks = [sum(1 << x for x in mem) for mem in members]
        for x in range(n):
            for y in range(n):
                cx, cy = cls[x], cls[y]
                self.allowed[x * n + y] = masks[sk.lattice.meet[cx][cy]]
                self.allowed[nn + x * n + y] = masks[sk.lattice.join[cx][cy]]
        for i, mem in enumerate(members):
            rows, cols = sk.shapes[i]
            if rows * cols != len(mem):
                raise ValueError(f"shape {rows}x{cols} does not fit class of size {len(mem)}")
            for s, x in enumerate(mem):
                for t, y in enumerate(mem):
                    preset[x * n + y] = mem[(s // cols) * cols + (t % cols)]
                    preset[nn + x * n + y] = mem[(t // cols) * cols + (s % cols)]
        for c, mask in enumerate(self.allowed):
            if mask & (mask - 1) == 0 and c not in preset:
                preset[c] = mask.bit_length() - 1

    # -- assignment and propagation ------------------------------------------------

    def _assign(self, c: int, v: int, trail: list[int], queue: list[int]) -> bool:
        cur = self.value[c]
        if cur >= 0:
            return cur == v
        if not (self.allowed[c] >> v) & 1:
            return False
        self.value[c] = v
        trail.append(c)
        queue.append(c)
        return True

    def _run_checks(self, ids: Iterable[int], trail: list[int], queue: list[int]) -> bool:
        V = self.value
        N = self.N
        n = self.n
        checks, args, watches = self.checks, self.args, self.watches
        deduce = self.propagate_enabled
        for i in ids:
            r = checks[i](V, args[i])
            if r >= 0:
                if r < N:
                    watches[r].add(i)
                else:
                    r -= N
                    watches[r // N].add(i)
                    watches[r % N].add(i)
            elif r == DONE:
                continue
            elif r == CONFLICT:
                return False
            else:
                t = -3 - r
                c, v = divmod(t, n)
                if deduce:
                    if not self._assign(c, v, trail, queue):
                        return False
                else:
                    watches[c].add(i)
        return True

    def _propagate(self, trail: list[int], queue: list[int]) -> bool:
        qi = 0
        while qi < len(queue):
            c = queue[qi]
            qi += 1
            ids = self.watches[c]
            if ids and not self._run_checks(list(ids), trail, queue):
                return False
        return True

    def _undo(self, trail: list[int], mark: int) -> None:
        V = self.value
        while len(trail) > mark:
            V[trail.pop()] = -1

    # -- search --------------------------------------------------------------------

    def solutions(self, deadline: Optional[float] = None,
                  first_values: Optional[Sequence[int]] = None) -> Iterator[Algebra]:
        """Yield every completed table pair, in deterministic search order.

        ``first_values`` restricts the values tried at the first decision
        (used to split the search between workers).
        """
        trail: list[int] = []
        queue: list[int] = []
        for c, v in sorted(self.preset.items()):
            if not self._assign(c, v, trail, queue):
                return
        queue.clear()
        if not self._run_checks(range(len(self.checks)), trail, queue):
            return
        if not self._propagate(trail, queue):
            return
        root_mdn = -1
        n = self.n
        for c in trail:
            if c not in self.preset:
                x, y = divmod(c % self.nn, n)
                root_mdn = max(root_mdn, x, y, self.value[c])
        yield from self._search(0, root_mdn, trail, deadline, first_values, True)

    def first_choices(self) -> list[int]:
        """Candidate values at the first decision point (after root propagation)."""
        trail: list[int] = []
        queue: list[int] = []
        for c, v in sorted(self.preset.items()):
            if not self._assign(c, v, trail, queue):
                return []
        queue.clear()
        ok = self._run_checks(range(len(self.checks)), trail, queue) and self._propagate(trail, queue)
        choices: list[int] = []
        if ok:
            mdn = -1
            for c in trail:
                if c not in self.preset:
                    x, y = divmod(c % self.nn, self.n)
                    mdn = max(mdn, x, y, self.value[c])
            pos = 0
            while pos < len(self.order) and self.value[self.order[pos]] >= 0:
                pos += 1
            if pos < len(self.order):
                choices = self._candidates(self.order[pos], mdn)
            else:
                choices = [-1]
        self._undo(trail, 0)
        self.watches = [set() for _ in range(self.N)]
        return choices

    def _candidates(self, c: int, mdn: int) -> list[int]:
        n = self.n
        top = n - 1
        if self.lnh:
            x, y = divmod(c % self.nn, n)
            top = min(n - 1, max(mdn, x, y) + 1)
        mask = self.allowed[c]
        return [v for v in range(top + 1) if (mask >> v) & 1]

    def _search(self, pos: int, mdn: int, trail: list[int], deadline: Optional[float],
                first_values: Optional[Sequence[int]], first: bool) -> Iterator[Algebra]:
        order, V = self.order, self.value
        while pos < len(order) and V[order[pos]] >= 0:
            pos += 1
        if pos == len(order):
            yield self._solution()
            return
        self.nodes += 1
        if deadline is not None and (self.nodes & 255) == 0 and time.monotonic() > deadline:
            raise BudgetExceeded("search budget exhausted")
        c = order[pos]
        n, nn = self.n, self.nn
        x, y = divmod(c % nn, n)
        values = self._candidates(c, mdn)
        if first and first_values is not None:
            values = [v for v in values if v in first_values]
        for v in values:
            mark = len(trail)
            queue: list[int] = []
            ok = self._assign(c, v, trail, queue) and self._propagate(trail, queue)
            if ok:
                new_mdn = max(mdn, x, y, v)
                if self.lnh:
                    for cc in trail[mark + 1:]:
                        xx, yy = divmod(cc % nn, n)
                        new_mdn = max(new_mdn, xx, yy, V[cc])
                yield from self._search(pos + 1, new_mdn, trail, deadline, None, False)
            self._undo(trail, mark)

    def _solution(self) -> Algebra:
        n, nn, V = self.n, self.nn, self.value
        meet = [V[r * n:(r + 1) * n] for r in range(n)]
        join = [V[nn + r * n:nn + (r + 1) * n] for r in range(n)]
        return Algebra(n, meet, join)


# ---------------------------------------------------------------------------
# queries and catalogs


@dataclass
class ModelQuery:
    n: int
    satisfy: list[Identity] = field(default_factory=list)
    falsify: list[Identity] = field(default_factory=list)
    # a Layout, a string such as "2>4>2", or "auto" to sweep general_layouts(n)
    skeleton: Optional[Layout | str] = None
    # profile flag -> required value, e.g. {"categorical": False}
    structural: dict[str, bool] = field(default_factory=dict)
    limit: Optional[int] = None
    budget: Optional[float] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        self.satisfy = identity_list(self.satisfy)
        self.falsify = identity_list(self.falsify)
        if isinstance(self.skeleton, str):
            if self.skeleton != AUTO:
                self.skeleton = parse_skeleton(self.skeleton)
        elif self.skeleton is not None and not isinstance(self.skeleton, Layout):
            self.skeleton = chain_layout(self.skeleton)
        if isinstance(self.skeleton, Layout) and self.skeleton.n != self.n:
            raise ValueError(f"skeleton {self.skeleton.describe()} does not sum to {self.n}")

    def describe(self) -> str:
        def codes(ids):
            return ",".join(i.code or str(i) for i in ids) or "-"
        parts = [f"n={self.n}", f"satisfy={codes(self.satisfy)}", f"falsify={codes(self.falsify)}"]
        if self.skeleton:
            sk = self.skeleton
            parts.append("skeleton=" + (sk if isinstance(sk, str) else sk.describe()))
        if self.structural:
            parts.append("structural=" + ",".join(f"{k}:{v}" for k, v in sorted(self.structural.items())))
        return " ".join(parts)


@dataclass
class CatalogEntry:
    algebra: Algebra
    profile: PropertyProfile
    provenance: str


@dataclass
class Catalog:
    entries: list[CatalogEntry]
    query: str

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def algebras(self) -> list[Algebra]:
        return [e.algebra for e in self.entries]


def _accepts(a: Algebra, satisfy, falsify, structural) -> bool:
    # re-verified with the identity checker, independently of the engine
    for ident in satisfy:
        if not check_identity(a, ident).holds:
            raise AssertionError(f"engine emitted a model violating {ident.code or ident}")
    for ident in falsify:
        if check_identity(a, ident).holds:
            return False
    if structural:
        prof = classify(a)
        for flag, want in structural.items():
            if getattr(prof, flag) != want:
                return False
    return True


def _enumerate_branch(n: int, satisfy: list[Identity], falsify: list[Identity],
                      first_values: Optional[list[int]], deadline: Optional[float],
                      lnh: bool, propagate: bool) -> dict[bytes, Algebra]:
    eng = _Engine(n, satisfy, lnh=lnh, propagate=propagate)
    found: dict[bytes, Algebra] = {}
    for sol in eng.solutions(deadline, first_values):
        if not _accepts(sol, satisfy, falsify, {}):
            continue
        canon = canonical_form(sol)
        found.setdefault(table_bytes(canon), canon)
    return found


def enumerate_models(n: int, constraints: Iterable[Identity | str] = "SKEW", *,
                     falsify: Iterable[Identity | str] = (), budget: Optional[float] = None,
                     workers: int = 1, lnh: bool = True, propagate: bool = True) -> Catalog:
    """All models of size ``n`` up to isomorphism, sorted by canonical table bytes."""
    satisfy = identity_list(constraints)
    fals = identity_list(falsify)
    deadline = time.monotonic() + budget if budget is not None else None
    query = ModelQuery(n, satisfy, fals)
    found: dict[bytes, Algebra] = {}
    if workers <= 1:
        found = _enumerate_branch(n, satisfy, fals, None, deadline, lnh, propagate)
    else:
        choices = _Engine(n, satisfy, lnh=lnh, propagate=propagate).first_choices()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_enumerate_branch, n, satisfy, fals, [v], deadline, lnh, propagate)
                       for v in choices]
            for fut in futures:
                for k, v in fut.result().items():
                    found.setdefault(k, v)
    entries = [CatalogEntry(found[k], classify(found[k]), query.describe()) for k in sorted(found)]
    return Catalog(entries, "enumerate " + query.describe())


def _skeletons_for(q: ModelQuery) -> Iterator[Optional[Skeleton]]:
    if q.skeleton is not None:
        yield from q.skeleton.variants()
    else:
        yield None


def _find_in(q: ModelQuery, skeleton: Optional[Skeleton], deadline: Optional[float],
             first_values: Optional[list[int]] = None) -> Optional[Algebra]:
    eng = _Engine(q.n, q.satisfy, skeleton=skeleton, lnh=skeleton is None)
    for sol in eng.solutions(deadline, first_values):
        if _accepts(sol, q.satisfy, q.falsify, q.structural):
            return sol
    return None


def find_model(q: ModelQuery, workers: int = 1) -> Optional[Algebra]:
    """First model (in deterministic search order) meeting the query.

    Returns None when the search space is exhausted; raises
    :class:`BudgetExceeded` when the time budget runs out first.
    """
    if q.skeleton == AUTO:
        found = search_layouts(q, general_layouts(q.n), workers)
        return found[0] if found else None
    deadline = time.monotonic() + q.budget if q.budget is not None else None
    for sk in _skeletons_for(q):
        if sk is not None:
            log.info("trying skeleton %s", sk.describe())
        if workers <= 1:
            found = _find_in(q, sk, deadline)
        else:
            found = _find_parallel(q, sk, deadline, workers)
        if found is not None:
            return found
    return None


def _find_parallel(q, sk, deadline, workers) -> Optional[Algebra]:
    choices = _Engine(q.n, q.satisfy, skeleton=sk, lnh=sk is None).first_choices()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_find_in, q, sk, deadline, [v]) for v in choices]
        # earliest branch wins, so the answer matches the sequential search
        for fut in futures:
            res = fut.result()
            if res is not None:
                for other in futures:
                    other.cancel()
                return res
    return None


def chain_layouts(n: int, min_classes: int = 2) -> Iterator[Layout]:
    """Chain layouts of total size n, fewest classes first, then lexicographic sizes."""
    for sizes in compositions(n):
        if len(sizes) >= min_classes:
            yield chain_layout(sizes)


def diamond_layouts(n: int) -> Iterator[Layout]:
    """Diamond layouts of total size n; the two middle classes unordered (left <= right)."""
    for top in range(1, n):
        for bottom in range(1, n - top):
            rest = n - top - bottom
            for left in range(1, rest // 2 + 1):
                yield diamond_layout(top, left, rest - left, bottom)


def _ideals(preds: list[frozenset[int]]) -> list[frozenset[int]]:
    """Down-closed subsets of a poset given by strict down-sets, in a fixed order."""
    out = [frozenset()]
    for p, below in enumerate(preds):
        out += [ideal | {p} for ideal in out if below <= ideal]
    return out


@functools.lru_cache(maxsize=None)
def distributive_lattices(k: int) -> tuple[Algebra, ...]:
    """Distributive lattices on k elements up to isomorphism, in canonical order.

    Built as lattices of down-sets of posets, the posets grown one maximal
    point at a time; growth stops once a poset has more than k down-sets.
    """
    found: dict[bytes, Algebra] = {}

    def grow(preds: list[frozenset[int]]):
        ideals = _ideals(preds)
        if len(ideals) > k:
            return
        if len(ideals) == k:
            index = {ideal: i for i, ideal in enumerate(ideals)}
            meet = [[index[p & q] for q in ideals] for p in ideals]
            join = [[index[p | q] for q in ideals] for p in ideals]
            lat = canonical_form(Algebra(k, meet, join))
            found.setdefault(table_bytes(lat), lat)
            return
        for ideal in ideals:
            grow(preds + [ideal])

    grow([])
    return tuple(found[key] for key in sorted(found))


@functools.lru_cache(maxsize=None)
def _automorphisms(lat: Algebra) -> tuple[tuple[int, ...], ...]:
    out = []
    for perm in itertools.permutations(range(lat.n)):
        if lat.relabel(perm) == lat:
            out.append(perm)
    return tuple(out)


def lattice_layouts(n: int, classes: int, chains: bool = False) -> Iterator[Layout]:
    """Layouts over every distributive lattice with the given number of classes.

    Non-chain lattices only unless ``chains`` is set. Size assignments that
    differ by a lattice automorphism are produced once.
    """
    for lat in distributive_lattices(classes):
        is_chain = all(lat.meet[i][j] in (i, j) for i in range(classes) for j in range(classes))
        if is_chain != chains:
            continue
        autos = _automorphisms(lat)
        for sizes in compositions(n):
            if len(sizes) != classes:
                continue
            # perm maps old class -> new class, so class perm[i] receives sizes[i]
            images = []
            for perm in autos:
                moved = [0] * classes
                for i, p in enumerate(perm):
                    moved[p] = sizes[i]
                images.append(tuple(moved))
            if sizes == min(images):
                yield Layout(sizes, lat)


def general_layouts(n: int) -> Iterator[Layout]:
    """Non-chain layouts by increasing class count, then chain layouts likewise."""
    for k in range(4, n):
        yield from lattice_layouts(n, k)
    yield from chain_layouts(n)


def search_layouts(q: ModelQuery, layouts: Iterable[Layout], workers: int = 1,
                   one_sided_first: bool = True) -> Optional[tuple[Algebra, Skeleton]]:
    """Try each layout, each with every rectangular shape per class.

    With ``one_sided_first`` the whole layout list is swept twice: first with
    single-row shapes only, then single-column shapes, then every mixed shape.
    Every shape is eventually tried, so handedness is never assumed; the
    order only reflects that identities are inherited by one-sided images.
    Raises :class:`BudgetExceeded` if the query budget runs out.
    """
    deadline = time.monotonic() + q.budget if q.budget is not None else None
    layouts = list(layouts)
    for layout in layouts:
        if layout.n != q.n:
            raise ValueError(f"layout {layout.describe()} does not sum to {q.n}")

    def sweeps() -> Iterator[Skeleton]:
        if not one_sided_first:
            for layout in layouts:
                yield from layout.variants()
            return
        for hand in ("right", "left"):
            for layout in layouts:
                for sk in layout.variants():
                    if sk.handedness() == hand:
                        yield sk
        for layout in layouts:
            for sk in layout.variants():
                if sk.handedness() is None:
                    yield sk

    for sk in sweeps():
        log.info("trying skeleton %s", sk.describe())
        if workers <= 1:
            found = _find_in(q, sk, deadline)
        else:
            found = _find_parallel(q, sk, deadline, workers)
        if found is not None:
            return found, sk
    return None


DEFAULT_SKEW = [CATALOG[c] for c in ("S1", "S2", "S3", "S4", "S5", "S6")]
