"""Plain-text family files.

::

    # optional comments
    n=4
    -
    1
    1,2

The header ``n=<int>`` comes first (after comments). Each further line is one
set as ascending, comma-separated 1-based elements, or ``-`` for the empty
set. Serialization orders sets by size, then by mask value.
"""

from __future__ import annotations

from pathlib import Path

from .core import MAX_N, SetFamily, elements_of, popcount


class FamilyFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def serialize(family: SetFamily, comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in comments or []]
    lines.append(f"n={family.n}")
    for m in sorted(family.members, key=lambda m: (popcount(m), m)):
        lines.append(",".join(map(str, elements_of(m))) if m else "-")
    return "\n".join(lines) + "\n"


def parse(text: str) -> SetFamily:
    n: int | None = None
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            if not line.startswith("n="):
                raise FamilyFileError("expected header 'n=<int>'", lineno)
            try:
                n = int(line[2:])
            except ValueError:
                raise FamilyFileError(f"bad ground-set size {line[2:]!r}", lineno) from None
            if not 1 <= n <= MAX_N:
                raise FamilyFileError(f"ground-set size must be in 1..{MAX_N}", lineno)
            continue
        if line == "-":
            mask = 0
        else:
            try:
                elems = [int(tok) for tok in line.split(",")]
            except ValueError:
                raise FamilyFileError(f"bad set line {line!r}", lineno) from None
            if any(b <= a for a, b in zip(elems, elems[1:])):
                raise FamilyFileError("elements must be strictly ascending", lineno)
            if elems[0] < 1 or elems[-1] > n:
                raise FamilyFileError(f"element outside [1, {n}]", lineno)
            mask = sum(1 << (x - 1) for x in elems)
        if mask in seen:
            raise FamilyFileError("duplicate set", lineno)
        seen.add(mask)
    if n is None:
        raise FamilyFileError("missing header 'n=<int>'")
    return SetFamily(n, seen)


def read(path: str | Path) -> SetFamily:
    return parse(Path(path).read_text())


def write(path: str | Path, family: SetFamily, comments: list[str] | None = None) -> None:
    Path(path).write_text(serialize(family, comments))
