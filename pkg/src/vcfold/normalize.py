"""Compression and shifting of set families.

Both operators are applied with fixed sweep orders (elements ascending, pairs
lexicographic) so that every result is reproducible.
"""

from __future__ import annotations

from .core import SetFamily, bits_of, popcount


class FixpointError(RuntimeError):
    """A fixpoint loop ran past the bound given by its potential function."""


def _check_element(family: SetFamily, i: int) -> None:
    if not 1 <= i <= family.n:
        raise ValueError(f"element {i} outside [1, {family.n}]")


def compress_at(family: SetFamily, i: int) -> SetFamily:
    """Drop ``i`` from every member unless the smaller set is already present."""
    _check_element(family, i)
    bit = 1 << (i - 1)
    out = []
    for s in family.members:
        if s & bit and (s ^ bit) not in family:
            out.append(s ^ bit)
        else:
            out.append(s)
    return SetFamily(family.n, out)


def _total_bits(family: SetFamily) -> int:
    return sum(popcount(s) for s in family.members)


def compress(family: SetFamily) -> SetFamily:
    """Repeat full sweeps of ``compress_at(., 1..n)`` until nothing moves."""
    current = family
    budget = _total_bits(family) + 1
    for _ in range(budget):
        before = current
        for i in range(1, family.n + 1):
            current = compress_at(current, i)
        if current == before:
            return current
    raise FixpointError("compression sweep did not stabilize")


def is_downward_closed(family: SetFamily) -> bool:
    return all((s ^ (1 << b)) in family for s in family.members for b in bits_of(s))


def shift_at(family: SetFamily, i: int, j: int) -> SetFamily:
    """Replace ``j`` by ``i`` in members that lack ``i``, when the image is absent."""
    _check_element(family, i)
    _check_element(family, j)
    if i >= j:
        raise ValueError(f"shift needs i < j, got ({i}, {j})")
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    out = []
    for s in family.members:
        if s & bj and not s & bi:
            image = s ^ bj ^ bi
            out.append(s if image in family else image)
        else:
            out.append(s)
    return SetFamily(family.n, out)


def _element_weight(family: SetFamily) -> int:
    return sum(b + 1 for s in family.members for b in bits_of(s))


def shift(family: SetFamily) -> SetFamily:
    """Sweep all ``(i, j)`` shifts lexicographically until a full sweep is idle."""
    n = family.n
    current = family
    budget = _element_weight(family) + 1
    for _ in range(budget):
        before = current
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                current = shift_at(current, i, j)
        if current == before:
            return current
    raise FixpointError("shift sweep did not stabilize")


def is_shifted(family: SetFamily) -> bool:
    n = family.n
    for i in range(1, n + 1):
        bi = 1 << (i - 1)
        for j in range(i + 1, n + 1):
            bj = 1 << (j - 1)
            for s in family.members:
                if s & bj and not s & bi and (s ^ bj ^ bi) not in family:
                    return False
    return True
