"""Plain-text loop files.

::

    # comment lines start with '#'
    loop Z4
    order 4
    0 1 2 3
    1 2 3 0
    2 3 0 1
    3 0 1 2
    end

Elements are 0-based.  The identity is detected, and loops are stored with
the identity relabeled to 0.  Comment lines directly above a ``loop`` line
are kept as that loop's notes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import FiniteLoop, LoopError, NotLatin, validate


class LoopFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, loop: str | None = None):
        self.line = line
        self.loop = loop
        where = []
        if line is not None:
            where.append(f"line {line}")
        if loop is not None:
            where.append(f"loop {loop!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass
class LoopFile:
    loops: dict[str, FiniteLoop] = field(default_factory=dict)
    notes: dict[str, list[str]] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, LoopFile):
            return NotImplemented
        return list(self.loops.items()) == list(other.loops.items())

    def __len__(self):
        return len(self.loops)

    def __getitem__(self, name: str) -> FiniteLoop:
        return self.loops[name]

    def add(self, name: str, L: FiniteLoop, notes=()) -> None:
        if name in self.loops:
            raise LoopFileError(f"duplicate loop name {name!r}")
        if not name or any(c.isspace() for c in name):
            raise LoopFileError(f"bad loop name {name!r}")
        self.loops[name] = L
        if notes:
            self.notes[name] = list(notes)


def parse_loop_file(text: str) -> LoopFile:
    out = LoopFile()
    pending: list[str] = []
    name = None
    order = None
    rows: list[list[int]] = []
    row_lines: list[int] = []
    start = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if name is None:
                pending = []
            continue
        if line.startswith("#"):
            if name is None:
                pending.append(line[1:].strip())
            continue
        words = line.split()
        if name is None:
            if words[0] != "loop" or len(words) != 2:
                raise LoopFileError("expected 'loop <name>'", lineno)
            name, start = words[1], lineno
            if name in out.loops:
                raise LoopFileError("duplicate loop name", lineno, name)
            continue
        if order is None:
            if words[0] != "order" or len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise LoopFileError("expected 'order <n>' with n >= 1", lineno, name)
            order = int(words[1])
            continue
        if words == ["end"]:
            if len(rows) != order:
                raise LoopFileError(f"expected {order} rows, got {len(rows)}", lineno, name)
            try:
                L = validate(np.array(rows, dtype=np.int64)).normalized()
            except NotLatin as exc:
                # a bad row points at its own line; a bad column at the block start
                at = row_lines[exc.index] if exc.kind == "row" else start
                raise LoopFileError(str(exc), at, name) from exc
            except LoopError as exc:
                raise LoopFileError(str(exc), start, name) from exc
            out.add(name, L, pending)
            name, order, rows, row_lines, pending = None, None, [], [], []
            continue
        if len(rows) == order:
            raise LoopFileError("expected 'end'", lineno, name)
        try:
            row = [int(w) for w in words]
        except ValueError:
            raise LoopFileError("row entries must be integers", lineno, name) from None
        if len(row) != order:
            raise LoopFileError(f"row has {len(row)} entries, expected {order}", lineno, name)
        rows.append(row)
        row_lines.append(lineno)
    if name is not None:
        raise LoopFileError("missing 'end'", None, name)
    return out


def read_loop_file(path: str | Path) -> LoopFile:
    return parse_loop_file(Path(path).read_text())


def format_loop(name: str, L: FiniteLoop | np.ndarray, notes=()) -> str:
    table = L.table if isinstance(L, FiniteLoop) else np.asarray(L)
    n = table.shape[0]
    width = len(str(n - 1))
    lines = [f"# {c}" if c else "#" for c in notes]
    lines += [f"loop {name}", f"order {n}"]
    lines += [" ".join(str(int(v)).rjust(width) for v in row) for row in table]
    lines.append("end")
    return "\n".join(lines) + "\n"


def format_loop_file(lf: LoopFile) -> str:
    return "\n".join(format_loop(k, L, lf.notes.get(k, ())) for k, L in lf.loops.items())


def read_corpus(directory: str | Path) -> list[tuple[str, FiniteLoop]]:
    """Every loop of every ``*.loop`` file in a directory, in file-name order.

    Names are qualified by file stem (``groups/Z4``) only when two files
    share a loop name.
    """
    items: list[tuple[str, str, FiniteLoop]] = []
    for path in sorted(Path(directory).glob("*.loop")):
        for name, L in read_loop_file(path).loops.items():
            items.append((path.stem, name, L))
    names = [n for _, n, _ in items]
    return [((f"{stem}/{n}" if names.count(n) > 1 else n), L) for stem, n, L in items]
