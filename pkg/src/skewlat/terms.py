"""Terms over {meet, join}: syntax tree, parser, printer, evaluation, duals.

Grammar::

    identity := term '=' term
    term     := atom (op atom)*        # left-associative
    atom     := var | '(' term ')'
    op       := '^' | 'v'              # also accepts '∧' and '∨'
    var      := 'x' | 'y' | 'z' | 'w' | 'x' digits

Both operators share one precedence level, so a chain may not mix them:
``x ^ y v z`` is rejected and must be parenthesised.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Mapping, Union

from .errors import TermSyntaxError, UnboundVariable

MEET = "meet"
JOIN = "join"
_OP_SYMBOL = {MEET: "^", JOIN: "v"}
_ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3}
_ALIAS_NAMES = "xyzw"


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return var_name(self.index)


@dataclass(frozen=True)
class Op:
    op: str
    left: "Term"
    right: "Term"

    def __str__(self):
        return format_term(self)


Term = Union[Var, Op]


def meet(left: Term, right: Term) -> Op:
    return Op(MEET, left, right)


def join(left: Term, right: Term) -> Op:
    return Op(JOIN, left, right)


def var_name(i: int) -> str:
    return _ALIAS_NAMES[i] if i < 4 else f"x{i}"


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return var_name(t.index)
    sym = _OP_SYMBOL[t.op]
    # left operand of the same operator needs no parentheses (left-assoc)
    left = format_term(t.left)
    if isinstance(t.left, Op) and t.left.op != t.op:
        left = f"({left})"
    right = format_term(t.right)
    if isinstance(t.right, Op):
        right = f"({right})"
    return f"{left} {sym} {right}"


def variables(t: Term) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset((t.index,))
    return variables(t.left) | variables(t.right)


def size(t: Term) -> int:
    """Number of operation nodes."""
    if isinstance(t, Var):
        return 0
    return 1 + size(t.left) + size(t.right)


def dual_term(t: Term) -> Term:
    """Swap meet and join throughout; variables are fixed."""
    if isinstance(t, Var):
        return t
    return Op(JOIN if t.op == MEET else MEET, dual_term(t.left), dual_term(t.right))


def eval_term(a, t: Term, asg: Mapping[int, int]) -> int:
    """Evaluate ``t`` bottom-up in algebra ``a`` under variable assignment ``asg``."""
    if isinstance(t, Var):
        try:
            return asg[t.index]
        except (KeyError, IndexError):
            raise UnboundVariable(f"variable {var_name(t.index)} is not assigned") from None
    x = eval_term(a, t.left, asg)
    y = eval_term(a, t.right, asg)
    return (a.meet if t.op == MEET else a.join)[x][y]


@functools.lru_cache(maxsize=None)
def compile_term(t: Term) -> Callable:
    """Compile ``t`` into ``f(meet_table, join_table, values)``.

    ``values`` is indexed by variable index. Used on the hot path of
    identity checking; :func:`eval_term` is the reference evaluator.
    """
    counter = [0]
    lines: list[str] = []

    def emit(node: Term) -> str:
        if isinstance(node, Var):
            return f"v[{node.index}]"
        a = emit(node.left)
        b = emit(node.right)
        counter[0] += 1
        name = f"t{counter[0]}"
        table = "m" if node.op == MEET else "j"
        lines.append(f"    {name} = {table}[{a}][{b}]")
        return name

    result = emit(t)
    src = "def f(m, j, v):\n" + "\n".join(lines) + f"\n    return {result}\n"
    ns: dict = {}
    exec(src, ns)
    return ns["f"]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise TermSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def op(self) -> str | None:
        c = self.peek()
        if c in ("^", "∧"):
            return MEET
        if c in ("v", "∨"):
            return JOIN
        return None

    def term(self) -> Term:
        left = self.atom()
        chain_op = None
        while True:
            op = self.op()
            if op is None:
                return left
            if chain_op is not None and op != chain_op:
                self.error("mixed operators need parentheses")
            chain_op = op
            self.pos += 1
            left = Op(op, left, self.atom())

    def atom(self) -> Term:
        c = self.peek()
        if c == "(":
            self.pos += 1
            t = self.term()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return t
        if c == "x":
            start = self.pos
            self.pos += 1
            digits = ""
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                digits += self.text[self.pos]
                self.pos += 1
            if digits:
                return Var(int(digits))
            if self._glued():
                self.error("bad variable name", start)
            return Var(0)
        if c in _ALIASES:
            start = self.pos
            self.pos += 1
            if self._glued():
                self.error("bad variable name", start)
            return Var(_ALIASES[c])
        if c == "":
            self.error("unexpected end of input")
        self.error(f"unexpected character {c!r}")

    def _glued(self) -> bool:
        # "xvy" reads as x v y; any other letter or digit glued to a name is an error
        if self.pos >= len(self.text):
            return False
        c = self.text[self.pos]
        return c.isalnum() and c != "v"

    def end(self):
        if self.peek() != "":
            self.error(f"unexpected trailing input {self.peek()!r}")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.end()
    return t


def parse_equation(text: str) -> tuple[Term, Term]:
    p = _Parser(text)
    lhs = p.term()
    if p.peek() != "=":
        p.error("expected '='")
    p.pos += 1
    rhs = p.term()
    p.end()
    return lhs, rhs
