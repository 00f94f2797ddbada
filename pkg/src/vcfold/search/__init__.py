"""Exact extremal searches with witness families."""

from __future__ import annotations

import enum
import time

from ..core import GroundSetMismatch, SetFamily, SetOp, kfold, popcount, vc_dimension
from ..construct import cube_minus_two, family_a_ri, lowsets, mod_d_family
from ..formula import binom_leq
from .downsets import max_kwise_intersecting, max_kwise_union, run_search
from .exhaustive import (
    exhaustive_kwise_intersecting,
    exhaustive_kwise_union,
    exhaustive_two_sided,
    exhaustive_vc_delta,
)
from .isomorphism import canonical_form, relabelling_isomorphic
from .result import BudgetExceeded, DEFAULT_WITNESS_CAP, SearchResult

__all__ = [
    "BudgetExceeded", "SearchMode", "SearchResult", "canonical_form", "exhaustive_kwise_intersecting",
    "exhaustive_kwise_union", "find_union_witness", "max_kwise_intersecting", "max_kwise_union",
    "max_two_sided_vc", "max_vc_delta", "relabelling_isomorphic", "symdiff_vc_ok", "two_sided_ok",
    "union_witness_preconditions",
]

MAX_COMPRESSED_N = 6


class SearchMode(enum.Enum):
    EXHAUSTIVE = "exhaustive"
    COMPRESSED = "compressed"
    WITNESS = "witness"


def symdiff_vc_ok(family: SetFamily, k: int, d: int) -> bool:
    return vc_dimension(kfold(family, SetOp.SYMMETRIC_DIFFERENCE, k)) <= d


def max_vc_delta(n: int, k: int, d: int, mode: SearchMode | str = SearchMode.COMPRESSED, *,
                 witness_cap: int = DEFAULT_WITNESS_CAP, budget: int | None = None) -> SearchResult:
    """Largest family whose ``k``-fold symmetric-difference closure has VC dimension at most ``d``.

    ``EXHAUSTIVE`` scans all families (``n <= 4``). ``COMPRESSED`` scans only
    downward-closed families (``n <= 6``), which suffices because compressing
    preserves size and cannot raise that VC dimension.
    """
    mode = SearchMode(mode)
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if not 0 <= d <= n:
        raise ValueError(f"need 0 <= d <= n, got d={d}, n={n}")
    if mode is SearchMode.EXHAUSTIVE:
        return exhaustive_vc_delta(n, k, d, witness_cap)
    if mode is not SearchMode.COMPRESSED:
        raise ValueError(f"mode {mode.value} is not available for this search")
    if not 1 <= n <= MAX_COMPRESSED_N:
        raise BudgetExceeded(f"compressed mode covers 1 <= n <= {MAX_COMPRESSED_N}, got n={n}")
    start = time.perf_counter()
    seeds = [lowsets(n, 0)] + [family_a_ri(n, d - k * i, i) for i in range(d // k + 1)
                               if d - k * i + i <= n]
    seed = max((f for f in seeds if symdiff_vc_ok(f, k, d)), key=len)
    best, pool, nodes = run_search(n, "symdiff-vc", k, d, shifted=False, incumbent=len(seed),
                                   witness_cap=witness_cap, budget=budget)
    if not pool.families:
        pool.add(seed)
    unique = None if pool.cap_hit else len(pool.families) == 1
    return SearchResult(value=best, witnesses=pool.sorted_families(), unique_up_to_relabelling=unique,
                        nodes_explored=nodes, elapsed=time.perf_counter() - start,
                        witness_cap_hit=pool.cap_hit, info={"engine": "downset", "mode": "compressed"})


def two_sided_ok(family: SetFamily, d: int) -> bool:
    if not family.members:
        return True
    return (vc_dimension(kfold(family, SetOp.INTERSECTION, 2)) <= d
            and vc_dimension(kfold(family, SetOp.UNION, 2)) <= d)


def _greedy_two_sided(n: int, d: int) -> tuple[SetFamily, int]:
    starts = [mod_d_family(n, d)]
    if n == d + 1 and n >= 2:
        starts.append(cube_minus_two(n))
    base = max((f for f in starts if two_sided_ok(f, d)), key=len)
    members = set(base.members)
    tried = 0
    for s in sorted(range(1 << n), key=lambda m: (popcount(m), m)):
        if s in members:
            continue
        tried += 1
        trial = SetFamily(n, members | {s})
        if two_sided_ok(trial, d):
            members.add(s)
    return SetFamily(n, members), tried


def max_two_sided_vc(n: int, d: int, mode: SearchMode | str | None = None, *,
                     witness_cap: int = DEFAULT_WITNESS_CAP) -> SearchResult:
    """Largest family with VC of both pairwise intersections and pairwise unions at most ``d``.

    Exhaustive for ``n <= 4``. Beyond that, ``WITNESS`` mode grows the best
    known construction greedily and reports a lower bound (``exact=False``).
    """
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    if mode is None:
        mode = SearchMode.EXHAUSTIVE if n <= 4 else SearchMode.WITNESS
    mode = SearchMode(mode)
    if mode is SearchMode.EXHAUSTIVE:
        return exhaustive_two_sided(n, d, witness_cap)
    if mode is not SearchMode.WITNESS:
        raise ValueError(f"mode {mode.value} is not available for this search")
    if n > 10:
        raise BudgetExceeded(f"witness mode covers n <= 10, got n={n}")
    start = time.perf_counter()
    family, tried = _greedy_two_sided(n, d)
    return SearchResult(value=len(family), witnesses=[family], nodes_explored=tried,
                        elapsed=time.perf_counter() - start, exact=False,
                        info={"engine": "greedy", "mode": "witness"})


def union_witness_preconditions(family: SetFamily, b: int, s: int, u: int) -> bool:
    """``|B| >= s`` and ``|A| > 2^s * binom_leq(n, u)``."""
    return popcount(b) >= s and len(family) > (1 << s) * binom_leq(family.n, u)


def find_union_witness(family: SetFamily, b: int, s: int, u: int) -> int | None:
    """A member ``A`` with ``|A | B| >= s + u + 1``, or ``None``.

    Returns the first member (in mask order) maximizing ``|A | B|`` when it
    reaches the target, whether or not the preconditions hold.
    """
    if b < 0 or b >> family.n:
        raise GroundSetMismatch(f"subset {b:#x} is not inside [{family.n}]")
    if not family.members:
        return None
    best = max(family.members, key=lambda a: popcount(a | b))
    return best if popcount(best | b) >= s + u + 1 else None
