"""Relabelling isomorphism of set families via a canonical form.

Elements are first grouped by a relabelling-invariant profile (the sorted
sizes of the members containing them); only permutations that keep the groups
in profile order are scanned, which is usually far fewer than ``n!``.
"""

from __future__ import annotations

import itertools
import math

from ..core import GroundSetMismatch, SetFamily, bits_of, popcount, permute_mask
from .result import BudgetExceeded

PERMUTATION_BUDGET = math.factorial(8)


def _groups(family: SetFamily) -> list[list[int]]:
    profile: list[list[int]] = [[] for _ in range(family.n)]
    for s in family.members:
        size = popcount(s)
        for b in bits_of(s):
            profile[b].append(size)
    keys = [tuple(sorted(p)) for p in profile]
    order = sorted(range(family.n), key=lambda b: keys[b])
    return [list(g) for _, g in itertools.groupby(order, key=keys.__getitem__)]


def canonical_form(family: SetFamily, budget: int = PERMUTATION_BUDGET) -> tuple[int, ...]:
    """Lexicographically least sorted image over profile-respecting relabellings."""
    groups = _groups(family)
    work = math.prod(math.factorial(len(g)) for g in groups)
    if work > budget:
        raise BudgetExceeded(f"canonical form needs {work} relabellings (budget {budget})")
    best: tuple[int, ...] | None = None
    perm = [0] * family.n
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        pos = 0
        for g in choice:
            for b in g:
                perm[b] = pos
                pos += 1
        image = tuple(sorted(permute_mask(m, perm) for m in family.members))
        if best is None or image < best:
            best = image
    return best if best is not None else ()


def _size_profile(family: SetFamily) -> list[int]:
    return sorted(popcount(m) for m in family.members)


def relabelling_isomorphic(a: SetFamily, b: SetFamily, budget: int = PERMUTATION_BUDGET) -> bool:
    """True iff some permutation of the ground set maps ``a`` onto ``b``."""
    if a.n != b.n:
        raise GroundSetMismatch(f"ground sets differ: n={a.n} vs n={b.n}")
    if len(a) != len(b) or _size_profile(a) != _size_profile(b):
        return False
    if a == b:
        return True
    return canonical_form(a, budget) == canonical_form(b, budget)


class WitnessPool:
    """Keeps one representative per relabelling class, up to ``cap`` classes."""

    def __init__(self, cap: int):
        self.cap = cap
        self.families: list[SetFamily] = []
        self._keys: set[tuple[int, ...]] = set()
        self.cap_hit = False

    def add(self, family: SetFamily) -> None:
        if self.cap_hit:
            return
        key = canonical_form(family)
        if key in self._keys:
            return
        if len(self.families) >= self.cap:
            self.cap_hit = True
            return
        self._keys.add(key)
        self.families.append(family)

    def clear(self) -> None:
        self.families.clear()
        self._keys.clear()
        self.cap_hit = False

    def merge(self, other: "WitnessPool") -> None:
        for f in other.families:
            self.add(f)
        self.cap_hit = self.cap_hit or other.cap_hit

    def sorted_families(self) -> list[SetFamily]:
        return sorted(self.families, key=lambda f: canonical_form(f))
