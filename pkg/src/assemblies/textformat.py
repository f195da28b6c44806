"""The ``.sgt`` plain-text Cayley table format.

::

    # comment
    kind: semigroup          # or: group
    elements: a b
    table:
    a a
    b b

Row ``i``, column ``j`` holds the product of element ``i`` by element ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .core import GroupTable, SemigroupTable, as_group
from .errors import NotAssociative, ValidationError

KINDS = ("semigroup", "group")


class ParseError(ValidationError):
    """Malformed table text.  ``category`` is one of ``unknown name``,
    ``wrong arity``, ``duplicate name``, ``missing section``, ``bad kind``,
    ``invalid name`` or ``not a group``."""

    def __init__(self, category: str, message: str, line: int | None = None, column: int | None = None,
                 source: str | None = None):
        self.category = category
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if line is not None:
            where = f"{source or '<text>'}:{line}"
            if column is not None:
                where += f":{column}"
            where += ": "
        super().__init__(f"{where}{category}: {message}")


@dataclass(frozen=True)
class TableDocument:
    kind: str
    table: SemigroupTable


def _significant_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield lineno, line


def _tokens(line: str):
    """Whitespace-separated tokens with 1-based columns."""
    col = 0
    n = len(line)
    while col < n:
        while col < n and line[col].isspace():
            col += 1
        if col >= n:
            break
        start = col
        while col < n and not line[col].isspace():
            col += 1
        yield start + 1, line[start:col]


def _header(lines, key: str, source):
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError("missing section", f"expected '{key}:'", source=source) from None
    head, sep, rest = line.partition(":")
    if not sep or head.strip() != key:
        raise ParseError("missing section", f"expected '{key}:'", lineno, 1, source)
    return lineno, rest, len(head) + 2


def parse_document(text: str, source: str | None = None) -> TableDocument:
    lines = _significant_lines(text)

    lineno, rest, _ = _header(lines, "kind", source)
    kind = rest.strip()
    if kind not in KINDS:
        raise ParseError("bad kind", f"kind must be one of {', '.join(KINDS)}, got {kind!r}", lineno, source=source)

    lineno, rest, offset = _header(lines, "elements", source)
    names: list[str] = []
    seen: dict[str, int] = {}
    for col, tok in _tokens(rest):
        if tok in seen:
            raise ParseError("duplicate name", f"element {tok!r} declared twice", lineno, col + offset - 1, source)
        seen[tok] = len(names)
        names.append(tok)
    if not names:
        raise ParseError("wrong arity", "no elements declared", lineno, source=source)

    lineno, rest, _ = _header(lines, "table", source)
    if rest.strip():
        raise ParseError("wrong arity", "nothing may follow 'table:' on its line", lineno, source=source)

    n = len(names)
    rows = []
    last = lineno
    for lineno, line in lines:
        last = lineno
        toks = list(_tokens(line))
        if len(rows) == n:
            raise ParseError("wrong arity", f"more than {n} table rows", lineno, toks[0][0], source)
        if len(toks) != n:
            raise ParseError("wrong arity", f"row has {len(toks)} entries, expected {n}", lineno,
                             toks[min(len(toks), n) - 1][0] if toks else 1, source)
        row = []
        for col, tok in toks:
            if tok not in seen:
                raise ParseError("unknown name", f"undeclared element {tok!r}", lineno, col, source)
            row.append(seen[tok])
        rows.append(row)
    if len(rows) != n:
        raise ParseError("wrong arity", f"table has {len(rows)} rows, expected {n}", last, source=source)

    try:
        table = SemigroupTable.from_rows(rows, names)
    except ValueError as exc:
        raise ParseError("invalid name", str(exc), source=source) from None
    return TableDocument(kind, table)


def parse_table(text: str, source: str | None = None, *, check: bool = True) -> SemigroupTable:
    """Parse and, with ``check``, validate associativity (and the group axioms
    for ``kind: group``)."""
    doc = parse_document(text, source)
    if check:
        if doc.table.associativity_witness is not None:
            raise NotAssociative(doc.table, doc.table.associativity_witness)
        if doc.kind == "group" and as_group(doc.table) is None:
            raise ParseError("not a group", "table declared as group fails the group axioms", source=source)
    return doc.table


def parse_group(text: str, source: str | None = None) -> GroupTable:
    t = parse_table(text, source)
    g = as_group(t)
    if g is None:
        raise ParseError("not a group", "table fails the group axioms", source=source)
    return g


def read_table(path: str | Path) -> SemigroupTable:
    path = Path(path)
    return parse_table(path.read_text(encoding="utf-8"), str(path))


def read_group(path: str | Path) -> GroupTable:
    path = Path(path)
    return parse_group(path.read_text(encoding="utf-8"), str(path))


def render_table(t: SemigroupTable, kind: str | None = None) -> str:
    if kind is None:
        kind = "group" if as_group(t) is not None else "semigroup"
    width = max(len(n) for n in t.names)
    lines = [f"kind: {kind}", "elements: " + " ".join(t.names), "table:"]
    for row in t.table:
        lines.append(" ".join(t.names[v].ljust(width) for v in row).rstrip())
    return "\n".join(lines) + "\n"


def write_table(t: SemigroupTable, path: str | Path, kind: str | None = None) -> None:
    Path(path).write_text(render_table(t, kind), encoding="utf-8")


def split_names(text: str) -> list[str]:
    """Split on commas outside ``()``/``{}``/``[]``, so composite names such as
    ``(a,b)`` or ``{0,2}`` stay whole."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    return [s for s in out if s]
