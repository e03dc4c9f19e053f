"""Command-line front end.

Exit codes: 0 success or property holds, 1 property fails or no model,
2 usage or parse error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import skwfile
from .algebra import Algebra, are_isomorphic
from .congruence import commutativity_congruence, quotient
from .cosets import (all_coset_systems, class_pair, class_structure, coset_system,
                     is_categorical, shape)
from .decompose import component_decomposition, first_decomposition, second_decomposition
from .errors import BudgetExceeded, NotComparable, SkewLatticeError, TermSyntaxError
from .green import green, natural_order
from .identities import (EQUATIONAL_FLAGS, CATALOG, check_identity, classify, format_assignment,
                         identity_list, is_skew_lattice)
from .search import ModelQuery, enumerate_models, find_model

OK, FAILS, USAGE, BUDGET = 0, 1, 2, 3

TICK, CROSS = "✓", "✗"


class UsageError(Exception):
    pass


def _load(path: str) -> Algebra:
    try:
        return skwfile.read(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except (skwfile.SkwFormatError, SkewLatticeError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _set(a: Algebra, elems) -> str:
    return "{" + ",".join(a.label(x) for x in sorted(elems)) + "}"


def _blocks(a: Algebra, blocks) -> str:
    return " ".join(_set(a, b) for b in blocks)


def _require_skew(a: Algebra, out) -> bool:
    if is_skew_lattice(a):
        return True
    for code in ("S1", "S2", "S3", "S4", "S5", "S6"):
        v = check_identity(a, code)
        if not v:
            out.append(f"not a skew lattice: {code} fails at {format_assignment(v.counterexample, a)}")
            break
    return False


# -- commands -------------------------------------------------------------------


def cmd_check(args, out) -> int:
    a = _load(args.file)
    prof = classify(a)
    for flag, value in prof.items():
        if value is None:
            continue
        line = f"{flag.replace('_', ' ')}: {TICK if value else CROSS}"
        if not value and flag in EQUATIONAL_FLAGS:
            for code in EQUATIONAL_FLAGS[flag]:
                v = check_identity(a, code)
                if not v:
                    line += f" ({code} fails at {format_assignment(v.counterexample, a)})"
                    break
        out.append(line)
    if prof.skew_lattice:
        out.append(f"shape: {shape(a)}")
    return OK if prof.skew_lattice else FAILS


def cmd_green(args, out) -> int:
    a = _load(args.file)
    if not _require_skew(a, out):
        return FAILS
    for which in ("R", "L", "D", "H"):
        out.append(f"{which}: {_blocks(a, green(a, which).blocks)}")
    return OK


def cmd_order(args, out) -> int:
    a = _load(args.file)
    if not _require_skew(a, out):
        return FAILS
    order = natural_order(a)
    n = a.n
    out.append("natural order (x > y):")
    for x in range(n):
        below = [y for y in range(n) if y != x and order.leq[y][x]]
        if below:
            out.append(f"  {a.label(x)} > {', '.join(a.label(y) for y in below)}")
    out.append("covers (lower < upper):")
    for lo, hi in order.covers():
        out.append(f"  {a.label(lo)} < {a.label(hi)}")
    out.append("natural graph edges: " + " ".join(
        f"{a.label(x)}-{a.label(y)}" for x, y in order.graph_edges))
    return OK


def cmd_quotient(args, out) -> int:
    a = _load(args.file)
    if not _require_skew(a, out):
        return FAILS
    if args.by == "commutativity":
        part = commutativity_congruence(a).partition
    else:
        part = green(a, args.by)
    q, _ = quotient(a, part)
    out.append(f"# blocks: {_blocks(a, part.blocks)}")
    out.append(skwfile.dumps(q).rstrip("\n"))
    return OK


def cmd_decompose(args, out) -> int:
    a = _load(args.file)
    if not _require_skew(a, out):
        return FAILS
    if args.kind == "second":
        dec = second_decomposition(a)
        for key in ("L", "R", "D"):
            out.append(f"a/{key}: {dec.factors[key].n} elements, blocks "
                       f"{_blocks(a, green(a, key).blocks)}")
        out.append("pair map:")
        for x in range(a.n):
            lcls, rcls = dec.pairs[dec.witness.map[x]]
            out.append(f"  {a.label(x)} -> (L{lcls}, R{rcls})")
        out.append(f"fibered product has {dec.product.n} elements; pair map is an isomorphism")
        return OK
    dec = first_decomposition(a) if args.kind == "first" else component_decomposition(a)
    out.append(f"parts: {_blocks(a, [emb for _, emb in dec.parts])}")
    prof = dec.quotient_profile
    kind = "lattice" if prof.lattice else ("rectangular" if prof.rectangular else "quotient")
    out.append(f"quotient: {dec.quotient.n} elements ({kind})")
    out.append(skwfile.dumps(dec.quotient).rstrip("\n"))
    return OK


def _describe_system(a: Algebra, sys_, out) -> None:
    p = sys_.pair
    out.append(f"pair: class {p.upper_index} {_set(a, p.upper)} > class {p.lower_index} {_set(a, p.lower)}")
    out.append(f"  lower cosets: {_blocks(a, sys_.lower_cosets)}")
    out.append(f"  upper cosets: {_blocks(a, sys_.upper_cosets)}")
    for x in p.upper:
        out.append(f"  image of {a.label(x)}: {_set(a, sys_.images[x])}")
    for (ui, li), bij in sorted(sys_.bijections.items()):
        mapping = ", ".join(f"{a.label(x)}->{a.label(y)}" for x, y in sorted(bij.pairs))
        out.append(f"  bijection {_set(a, sys_.upper_cosets[ui])} -> "
                   f"{_set(a, sys_.lower_cosets[li])}: {mapping if mapping else 'empty'}")


def cmd_cosets(args, out) -> int:
    a = _load(args.file)
    if not _require_skew(a, out):
        return FAILS
    cs = class_structure(a)
    out.append("classes: " + " ".join(f"{i}:{_set(a, c)}" for i, c in enumerate(cs.classes)))
    if args.pair is not None:
        try:
            pair = class_pair(a, args.pair[0], args.pair[1], cs)
        except NotComparable as exc:
            raise UsageError(str(exc)) from None
        _describe_system(a, coset_system(a, pair), out)
        return OK
    systems = all_coset_systems(a, cs)
    if not systems:
        out.append("no comparable class pairs")
    for key in sorted(systems):
        _describe_system(a, systems[key], out)
    return OK


def cmd_categorical(args, out) -> int:
    a = _load(args.file)
    if not _require_skew(a, out):
        return FAILS
    v = is_categorical(a)
    out.append(v.label)
    if v.witness is not None:
        w = v.witness
        a_cos, b_cos, c_cos = w.cosets()
        i, j, k = w.chain
        out.append(f"chain of classes: {i} > {j} > {k}")
        out.append(f"cosets: {_set(a, a_cos)} -> {_set(a, b_cos)} -> {_set(a, c_cos)}")

        def pairs(b):
            return ", ".join(f"{a.label(x)}->{a.label(y)}" for x, y in sorted(b.pairs)) or "empty"

        out.append(f"phi: {pairs(w.phi)}")
        out.append(f"psi: {pairs(w.psi)}")
        out.append(f"psi o phi: {pairs(w.composite)}")
        out.append(f"coset bijection containing it: {pairs(w.chi)}")
    if v.gap is not None and v.categorical:
        x, z, mid = v.gap
        out.append(f"empty composite: {a.label(x)} > {a.label(z)} with nothing between in class {mid}")
    return OK if v.categorical else FAILS


def cmd_iso(args, out) -> int:
    a, b = _load(args.file1), _load(args.file2)
    f = are_isomorphic(a, b)
    if f is None:
        out.append("not isomorphic")
        return FAILS
    out.append("isomorphic")
    out.append(", ".join(f"{a.label(x)}->{b.label(f[x])}" for x in range(a.n)))
    return OK


def _dot_id(a: Algebra, x: int) -> str:
    return f'"{a.label(x)}"'


def cmd_dot(args, out) -> int:
    a = _load(args.file)
    if not _require_skew(a, out):
        return FAILS
    order = natural_order(a)
    d = green(a, "D")
    out.append("graph skew_lattice {")
    out.append("  rankdir=BT;")
    out.append("  node [shape=circle];")
    for x in range(a.n):
        out.append(f"  {_dot_id(a, x)};")
    for lo, hi in sorted(order.covers()):
        out.append(f"  {_dot_id(a, lo)} -- {_dot_id(a, hi)};")
    for x in range(a.n):
        for y in range(x + 1, a.n):
            if d.same(x, y):
                out.append(f"  {_dot_id(a, x)} -- {_dot_id(a, y)} [style=dashed];")
    out.append("}")
    return OK


def _identities(text: Optional[str]):
    try:
        return identity_list(text) if text else []
    except (TermSyntaxError, KeyError, ValueError) as exc:
        raise UsageError(f"bad identity list {text!r}: {exc}") from None


def cmd_enumerate(args, out) -> int:
    satisfy = _identities(args.satisfy) if args.satisfy else identity_list("SKEW")
    falsify = _identities(args.falsify)
    try:
        cat = enumerate_models(args.size, satisfy, falsify=falsify, workers=args.workers,
                               budget=args.budget)
    except BudgetExceeded:
        out.append("budget exceeded")
        return BUDGET
    text = skwfile.dumps_catalog(cat.query, cat.algebras)
    out.append(f"{len(cat)} models ({cat.query})")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.append(text.rstrip("\n"))
    return OK


def cmd_find(args, out) -> int:
    try:
        q = ModelQuery(args.size, _identities(args.satisfy), _identities(args.falsify),
                       skeleton=args.skeleton, budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        model = find_model(q, workers=args.workers)
    except BudgetExceeded:
        out.append(f"budget exceeded after {args.budget} s; no conclusion")
        return BUDGET
    if model is None:
        out.append("no model: search exhausted")
        return FAILS
    for ident in q.satisfy:
        if not check_identity(model, ident):
            raise AssertionError("model violates a required identity")
    text = skwfile.dumps(model)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"# {q.describe()}\n" + text)
        out.append(f"model written to {args.out}")
    else:
        out.append(f"# {q.describe()}")
        out.append(text.rstrip("\n"))
    return OK


# -- parser ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="skewlat", description="Finite skew lattice workbench.")
    p.add_argument("-v", "--verbose", action="store_true", help="log search progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.set_defaults(func=func)
        return sp

    with_file("check", cmd_check, "property report")
    with_file("green", cmd_green, "Green's relations")
    with_file("order", cmd_order, "natural partial order")
    sp = with_file("quotient", cmd_quotient, "quotient by a congruence")
    sp.add_argument("--by", choices=["D", "L", "R", "commutativity"], required=True)
    sp = with_file("decompose", cmd_decompose, "structural decompositions")
    sp.add_argument("--kind", choices=["first", "component", "second"], required=True)
    sp = with_file("cosets", cmd_cosets, "coset structure of comparable classes")
    sp.add_argument("--pair", nargs=2, type=int, metavar=("I", "J"))
    with_file("categorical", cmd_categorical, "categoricity test")
    with_file("dot", cmd_dot, "diagram in DOT format")
    sp = sub.add_parser("iso", help="isomorphism test")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.set_defaults(func=cmd_iso)

    for name, func in (("enumerate", cmd_enumerate), ("find", cmd_find)):
        sp = sub.add_parser(name, help=f"{name} models")
        sp.add_argument("--size", type=int, required=True)
        sp.add_argument("--satisfy", required=(name == "find"))
        sp.add_argument("--falsify", required=(name == "find"))
        sp.add_argument("--budget", type=float)
        sp.add_argument("--out")
        sp.add_argument("--workers", type=int, default=1)
        sp.set_defaults(func=func)
        if name == "find":
            sp.add_argument("--skeleton", help="'2>4>2', 'J;A,B;M', or 'auto'")
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out: list[str] = []
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            logging.basicConfig(level=logging.INFO, stream=stderr, format="%(message)s")
        if getattr(args, "size", 1) < 1:
            raise UsageError("--size must be positive")
        code = args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return USAGE
    except TermSyntaxError as exc:
        print(f"error: {exc}", file=stderr)
        return USAGE
    if out:
        stdout.write("\n".join(out) + "\n")
    return code


def main() -> None:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    sys.exit(run())
