"""Reading and writing the line-oriented ``.skw`` algebra format.

::

    skw 1
    <n>
    <n rows of the meet table>
    <blank line>
    <n rows of the join table>
    names:            # optional
    <index> <name>

``#`` starts a comment anywhere on a line. A catalog file is a header
comment followed by records separated by ``---`` lines.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .algebra import Algebra
from .errors import SkewLatticeError


class SkwFormatError(SkewLatticeError, ValueError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


def _strip(line: str) -> str:
    i = line.find("#")
    return (line if i < 0 else line[:i]).strip()


def loads(text: str, first_line: int = 1) -> Algebra:
    lines = [(first_line + k, _strip(raw)) for k, raw in enumerate(text.splitlines())]
    content = [(no, s) for no, s in lines if s]
    pos = 0

    def take(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(content):
            last = lines[-1][0] if lines else first_line
            raise SkwFormatError(f"unexpected end of input, expected {what}", last)
        item = content[pos]
        pos += 1
        return item

    no, head = take("header")
    if head.split() != ["skw", "1"]:
        raise SkwFormatError(f"expected header 'skw 1', got {head!r}", no)
    no, size = take("carrier size")
    try:
        n = int(size)
    except ValueError:
        raise SkwFormatError(f"carrier size must be an integer, got {size!r}", no) from None
    if n < 1:
        raise SkwFormatError("carrier size must be positive", no)

    def table(what: str):
        rows = []
        for r in range(n):
            no, row = take(f"{what} row {r}")
            try:
                vals = [int(v) for v in row.split()]
            except ValueError:
                raise SkwFormatError(f"non-integer entry in {what} row {r}", no) from None
            if len(vals) != n:
                raise SkwFormatError(f"{what} row {r} has {len(vals)} entries, expected {n}", no)
            for v in vals:
                if not 0 <= v < n:
                    raise SkwFormatError(f"{what} entry {v} out of range 0..{n - 1}", no)
            rows.append(vals)
        return rows

    meet = table("meet")
    join = table("join")
    names: Optional[list[str]] = None
    if pos < len(content):
        no, tag = take("names section")
        if tag != "names:":
            raise SkwFormatError(f"unexpected content {tag!r}", no)
        names = [str(i) for i in range(n)]
        while pos < len(content):
            no, entry = take("name entry")
            parts = entry.split(None, 1)
            if len(parts) != 2 or not parts[0].isdigit() or not 0 <= int(parts[0]) < n:
                raise SkwFormatError(f"bad name entry {entry!r}", no)
            names[int(parts[0])] = parts[1]
    return Algebra(n, meet, join, names=tuple(names) if names else None)


def dumps(a: Algebra) -> str:
    out = ["skw 1", str(a.n)]
    out += [" ".join(map(str, row)) for row in a.meet]
    out.append("")
    out += [" ".join(map(str, row)) for row in a.join]
    if a.names:
        out.append("names:")
        out += [f"{i} {name}" for i, name in enumerate(a.names)]
    return "\n".join(out) + "\n"


def read(path) -> Algebra:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write(path, a: Algebra) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(a))


def dumps_catalog(header: str, algebras: Iterable[Algebra]) -> str:
    parts = [dumps(a) for a in algebras]
    return f"# {header}\n" + "---\n".join(parts)


def loads_catalog(text: str) -> tuple[str, list[Algebra]]:
    lines = text.splitlines()
    header = ""
    if lines and lines[0].startswith("#"):
        header = lines[0][1:].strip()
    records: list[list[str]] = [[]]
    starts = [1]
    for no, line in enumerate(lines, 1):
        if _strip(line) == "---":
            records.append([])
            starts.append(no + 1)
        else:
            records[-1].append(line)
    out = []
    for start, rec in zip(starts, records):
        if any(_strip(x) for x in rec):
            out.append(loads("\n".join(rec), first_line=start))
    return header, out
