"""The ``kei v1`` text format.

::

    kei v1
    n 3
    row 0: 0 2 1
    row 1: 2 1 0
    row 2: 1 0 2
    label 0 a

``#`` starts a comment, blank lines are ignored, ``label`` lines are
optional and may appear anywhere after the ``n`` line.
"""

from __future__ import annotations

from pathlib import Path

from .algebra import KeiTable
from .errors import FormatError, MalformedTableError

MAGIC = "kei v1"


def dumps(k: KeiTable, legend: dict[int, str] | None = None) -> str:
    lines = [MAGIC, f"n {k.n}"]
    for x, row in enumerate(k.rows()):
        lines.append(f"row {x}: " + " ".join(str(v) for v in row))
    for index in sorted(legend or {}):
        label = legend[index]
        if "#" in label or "\n" in label or not label.strip():
            raise ValueError(f"label {label!r} cannot be written in kei v1 format")
        lines.append(f"label {index} {label}")
    return "\n".join(lines) + "\n"


def loads(text: str, *, check: bool = True) -> tuple[KeiTable, dict[int, str]]:
    """Parse ``kei v1`` text into ``(table, legend)``.

    With ``check`` the kei axioms are enforced (KeiValidationError);
    structural problems always raise FormatError with the line number.
    """
    table, legend = parse_rows(text)
    try:
        return KeiTable(table, check=check), legend
    except MalformedTableError as exc:
        raise FormatError(str(exc)) from None


def parse_rows(text: str) -> tuple[list[list[int]], dict[int, str]]:
    """Structural parse only; returns the raw rows without any axiom check."""
    content = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            content.append((lineno, line))
    if not content or content[0][1] != MAGIC:
        raise FormatError(f"expected {MAGIC!r} header", content[0][0] if content else 1)
    if len(content) < 2:
        raise FormatError("missing 'n' line", content[0][0])
    lineno, line = content[1]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise FormatError(f"expected 'n <N>' with N >= 1, got {line!r}", lineno)
    n = int(parts[1])

    rows: dict[int, list[int]] = {}
    legend: dict[int, str] = {}
    for lineno, line in content[2:]:
        if line.startswith("row "):
            head, sep, body = line[4:].partition(":")
            if not sep or not head.strip().isdigit():
                raise FormatError(f"expected 'row <x>: ...', got {line!r}", lineno)
            x = int(head)
            try:
                values = [int(v) for v in body.split()]
            except ValueError:
                raise FormatError(f"non-integer entry in {line!r}", lineno) from None
            if x >= n:
                raise FormatError(f"row index {x} outside [0, {n})", lineno)
            if x in rows:
                raise FormatError(f"duplicate row {x}", lineno)
            if len(values) != n:
                raise FormatError(f"row {x} has {len(values)} entries, expected {n}", lineno)
            bad = [v for v in values if not 0 <= v < n]
            if bad:
                raise FormatError(f"entry {bad[0]} outside [0, {n})", lineno)
            rows[x] = values
        elif line.startswith("label "):
            parts = line.split(None, 2)
            if len(parts) != 3 or not parts[1].isdigit():
                raise FormatError(f"expected 'label <index> <string>', got {line!r}", lineno)
            index = int(parts[1])
            if index >= n:
                raise FormatError(f"label index {index} outside [0, {n})", lineno)
            legend[index] = parts[2]
        else:
            raise FormatError(f"unrecognised line {line!r}", lineno)
    missing = [x for x in range(n) if x not in rows]
    if missing:
        raise FormatError(f"missing row {missing[0]}")
    return [rows[x] for x in range(n)], legend


def read(path: str | Path, *, check: bool = True) -> tuple[KeiTable, dict[int, str]]:
    return loads(Path(path).read_text(encoding="utf-8"), check=check)


def write(path: str | Path, k: KeiTable, legend: dict[int, str] | None = None) -> None:
    Path(path).write_text(dumps(k, legend), encoding="utf-8")

