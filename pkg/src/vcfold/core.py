"""Subsets as bitmasks, set families, traces, shattering and k-fold closures.

A subset of the ground set ``[n] = {1, ..., n}`` is a plain ``int`` whose bit
``i - 1`` is set iff element ``i`` belongs to it. Elements are 1-based in every
user-facing helper and 0-based bit positions internally.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_N = 128


class GroundSetMismatch(ValueError):
    """Raised when two objects live over different ground sets."""


def full_mask(n: int) -> int:
    return (1 << n) - 1


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_from_elements(elements: Iterable[int]) -> int:
    """Encode 1-based elements as a bitmask."""
    mask = 0
    for x in elements:
        if x < 1:
            raise ValueError(f"elements are 1-based, got {x}")
        mask |= 1 << (x - 1)
    return mask


def elements_of(mask: int) -> list[int]:
    """Decode a bitmask into its sorted 1-based elements."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def bits_of(mask: int) -> Iterator[int]:
    """Yield the 0-based positions of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1 or n > MAX_N:
        raise ValueError(f"ground set size must be in 1..{MAX_N}, got {n!r}")


def check_mask(mask: int, n: int) -> None:
    if mask < 0 or mask >> n:
        raise ValueError(f"mask {mask:#x} does not fit the ground set [{n}]")


class SetOp(enum.Enum):
    INTERSECTION = "cap"
    UNION = "cup"
    SYMMETRIC_DIFFERENCE = "sym"

    def apply(self, a: int, b: int) -> int:
        if self is SetOp.INTERSECTION:
            return a & b
        if self is SetOp.UNION:
            return a | b
        return a ^ b

    @classmethod
    def parse(cls, text: str) -> "SetOp":
        aliases = {
            "cap": cls.INTERSECTION, "intersection": cls.INTERSECTION, "and": cls.INTERSECTION,
            "cup": cls.UNION, "union": cls.UNION, "or": cls.UNION,
            "sym": cls.SYMMETRIC_DIFFERENCE, "symdiff": cls.SYMMETRIC_DIFFERENCE,
            "xor": cls.SYMMETRIC_DIFFERENCE, "delta": cls.SYMMETRIC_DIFFERENCE,
        }
        try:
            return aliases[text.lower()]
        except KeyError:
            raise ValueError(f"unknown set operation {text!r}") from None


@dataclass(frozen=True)
class SetFamily:
    """A deduplicated family of subsets of ``[n]``.

    ``members`` is normalized to a strictly increasing tuple of masks, so two
    families compare equal iff they hold the same sets over the same ``n``.
    """

    n: int
    members: tuple[int, ...]
    _lookup: frozenset[int] = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, members: Iterable[int] = ()):
        check_n(n)
        ms = tuple(sorted(set(members)))
        for m in ms:
            check_mask(m, n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", ms)
        object.__setattr__(self, "_lookup", frozenset(ms))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        """Build from 1-based element collections, e.g. ``[[], [1, 2]]``."""
        return cls(n, (mask_from_elements(s) for s in sets))

    @classmethod
    def cube(cls, n: int) -> "SetFamily":
        return cls(n, range(1 << n))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self._lookup

    def as_sets(self) -> list[list[int]]:
        return [elements_of(m) for m in self.members]

    def complement(self) -> "SetFamily":
        """The family of complements ``{[n] \\ S : S in A}``."""
        full = full_mask(self.n)
        return SetFamily(self.n, (full ^ m for m in self.members))

    def permute(self, perm: Sequence[int]) -> "SetFamily":
        """Relabel by ``perm``, a 0-based permutation: bit ``b`` moves to ``perm[b]``."""
        return SetFamily(self.n, (permute_mask(m, perm) for m in self.members))

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.as_sets())
        return f"SetFamily(n={self.n}, [{body}])"


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for b in bits_of(mask):
        out |= 1 << perm[b]
    return out


def _same_ground(a: SetFamily, b: SetFamily) -> None:
    if a.n != b.n:
        raise GroundSetMismatch(f"ground sets differ: n={a.n} vs n={b.n}")


def _mask_in_ground(family: SetFamily, y: int) -> None:
    if y < 0 or y >> family.n:
        raise GroundSetMismatch(f"subset {y:#x} is not inside [{family.n}]")


def trace(family: SetFamily, y: int) -> SetFamily:
    """The restriction ``{S & y : S in family}``."""
    _mask_in_ground(family, y)
    return SetFamily(family.n, {m & y for m in family.members})


def is_shattered(family: SetFamily, y: int) -> bool:
    _mask_in_ground(family, y)
    need = 1 << popcount(y)
    if len(family) < need:
        return False
    seen: set[int] = set()
    for m in family.members:
        seen.add(m & y)
        if len(seen) == need:
            return True
    return False


def shattered_collection(family: SetFamily) -> SetFamily:
    """All shattered subsets, computed level by level.

    Shattered sets form a down-set, so a candidate of size ``s + 1`` is tested
    only when all of its ``s``-subsets were shattered.
    """
    if not family.members:
        raise ValueError("sh() of the empty family is empty; VC is fixed to -1 instead")
    found = [0]
    level = [0]
    n = family.n
    while level:
        level_set = set(level)
        nxt = set()
        for y in level:
            # extend only above the top bit so each candidate is generated once
            for b in range(y.bit_length(), n):
                cand = y | (1 << b)
                if all((cand ^ (1 << c)) in level_set for c in bits_of(cand)):
                    if is_shattered(family, cand):
                        nxt.add(cand)
        level = sorted(nxt)
        found.extend(level)
    return SetFamily(n, found)


def vc_dimension(family: SetFamily) -> int:
    """Size of the largest shattered subset; -1 for the empty family."""
    size = len(family)
    if size == 0:
        return -1
    top = min(family.n, size.bit_length() - 1)
    positions = range(family.n)
    for s in range(top, 0, -1):
        for combo in itertools.combinations(positions, s):
            y = 0
            for b in combo:
                y |= 1 << b
            if is_shattered(family, y):
                return s
    return 0


def _closure_step(current: Iterable[int], members: Sequence[int], op: SetOp) -> set[int]:
    if op is SetOp.INTERSECTION:
        return {x & a for x in current for a in members}
    if op is SetOp.UNION:
        return {x | a for x in current for a in members}
    return {x ^ a for x in current for a in members}


def kfold(family: SetFamily, op: SetOp, k: int) -> SetFamily:
    """All combinations ``S_1 op ... op S_k`` with ``S_i`` drawn from the family."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not family.members:
        raise ValueError("kfold of the empty family")
    cur: set[int] = set(family.members)
    for _ in range(k - 1):
        cur = _closure_step(cur, family.members, op)
    return SetFamily(family.n, cur)


def kfold_multi(families: Sequence[SetFamily], op: SetOp) -> SetFamily:
    """``{S_1 op ... op S_k : S_i in families[i]}`` with one family per slot."""
    if not families:
        raise ValueError("kfold_multi needs at least one family")
    first = families[0]
    for f in families[1:]:
        _same_ground(first, f)
    if any(not f.members for f in families):
        raise ValueError("kfold_multi of an empty family")
    cur: set[int] = set(first.members)
    for f in families[1:]:
        cur = _closure_step(cur, f.members, op)
    return SetFamily(first.n, cur)


def maximal_members(masks: Iterable[int]) -> list[int]:
    """Inclusion-maximal masks among ``masks``."""
    ordered = sorted(set(masks), key=popcount, reverse=True)
    kept: list[int] = []
    for m in ordered:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


def minimal_members(masks: Iterable[int]) -> list[int]:
    ordered = sorted(set(masks), key=popcount)
    kept: list[int] = []
    for m in ordered:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def max_kwise_union_size(family: SetFamily, k: int) -> int:
    """Largest ``|S_1 | ... | S_k|``; only maximal members can matter."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not family.members:
        return -1
    tops = maximal_members(family.members)
    layer = set(tops)
    for _ in range(k - 1):
        layer = set(maximal_members(x | a for x in layer for a in tops))
    return max(popcount(x) for x in layer)


def is_kwise_union(family: SetFamily, k: int, bound: int) -> bool:
    """True iff every union of ``k`` members has at most ``bound`` elements."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not family.members:
        return True
    tops = maximal_members(family.members)
    if any(popcount(m) > bound for m in tops):
        return False
    layer = set(tops)
    for _ in range(k - 1):
        layer = set(maximal_members(x | a for x in layer for a in tops))
        if any(popcount(x) > bound for x in layer):
            return False
    return True


def is_kwise_intersecting(family: SetFamily, k: int, t: int) -> bool:
    """True iff every intersection of ``k`` members has at least ``t`` elements."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not family.members:
        return True
    bottoms = minimal_members(family.members)
    if any(popcount(m) < t for m in bottoms):
        return False
    layer = set(bottoms)
    for _ in range(k - 1):
        layer = set(minimal_members(x & a for x in layer for a in bottoms))
        if any(popcount(x) < t for x in layer):
            return False
    return True
