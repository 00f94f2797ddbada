"""Exhaustive oracles over every family of subsets of ``[n]``, ``n <= 4``.

A family is encoded as a ``2^n``-bit integer (bit ``S`` set iff ``S`` is a
member) and all ``2^(2^n)`` families are processed at once as a numpy
vector. Nothing here relies on compression, shifting or down-sets, so these
values are independent checks of the down-set engine.
"""

from __future__ import annotations

import time
from functools import lru_cache

import numpy as np

from ..core import SetFamily, SetOp, popcount, submasks
from .isomorphism import WitnessPool
from .result import BudgetExceeded, DEFAULT_WITNESS_CAP, SearchResult

MAX_EXHAUSTIVE_N = 4


def _check(n: int) -> None:
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise BudgetExceeded(f"exhaustive search covers 1 <= n <= {MAX_EXHAUSTIVE_N}, got n={n}")


@lru_cache(maxsize=None)
def all_families(n: int) -> np.ndarray:
    _check(n)
    return np.arange(1 << (1 << n), dtype=np.uint32)


def family_sizes(fams: np.ndarray) -> np.ndarray:
    return np.bitwise_count(fams).astype(np.int64)


def closure(left: np.ndarray, right: np.ndarray, op: SetOp, n: int) -> np.ndarray:
    """Elementwise ``{a op b : a in left[x], b in right[x]}`` for family vectors."""
    size = 1 << n
    one = np.uint32(1)
    out = np.zeros_like(left)
    right_bits = [(right >> np.uint32(b)) & one for b in range(size)]
    for a in range(size):
        la = (left >> np.uint32(a)) & one
        if not la.any():
            continue
        for b in range(size):
            out |= (la & right_bits[b]) << np.uint32(op.apply(a, b))
    return out


def kfold_vector(fams: np.ndarray, op: SetOp, k: int, n: int) -> np.ndarray:
    cur = fams
    for _ in range(k - 1):
        cur = closure(cur, fams, op, n)
    return cur


def vc_vector(fams: np.ndarray, n: int) -> np.ndarray:
    """VC dimension of every encoded family (-1 for the empty family)."""
    size = 1 << n
    vc = np.where(fams == 0, -1, 0).astype(np.int64)
    for y in sorted(range(1, size), key=popcount):
        shattered = fams != 0
        for r in submasks(y):
            pattern = sum(1 << s for s in range(size) if s & y == r)
            shattered &= (fams & np.uint32(pattern)) != 0
        vc = np.where(shattered, np.maximum(vc, popcount(y)), vc)
    return vc


def _size_pattern(n: int, keep) -> np.uint32:
    return np.uint32(sum(1 << s for s in range(1 << n) if keep(popcount(s))))


def decode(code: int, n: int) -> SetFamily:
    return SetFamily(n, (s for s in range(1 << n) if code >> s & 1))


def _best(n: int, ok: np.ndarray, fams: np.ndarray, witness_cap: int, start: float,
          info: dict) -> SearchResult:
    sizes = np.where(ok, family_sizes(fams), -1)
    value = int(sizes.max())
    pool = WitnessPool(witness_cap)
    for code in fams[sizes == value]:
        pool.add(decode(int(code), n))
    unique = None if pool.cap_hit else len(pool.families) == 1
    return SearchResult(value=value, witnesses=pool.sorted_families(), unique_up_to_relabelling=unique,
                        nodes_explored=int(fams.size), elapsed=time.perf_counter() - start,
                        witness_cap_hit=pool.cap_hit, info={"engine": "exhaustive", **info})


def exhaustive_vc_delta(n: int, k: int, d: int, witness_cap: int = DEFAULT_WITNESS_CAP) -> SearchResult:
    """Largest family whose k-fold symmetric-difference closure has VC at most ``d``."""
    start = time.perf_counter()
    fams = all_families(n)
    vc = vc_vector(kfold_vector(fams, SetOp.SYMMETRIC_DIFFERENCE, k, n), n)
    return _best(n, vc <= d, fams, witness_cap, start, {"mode": "exhaustive"})


def exhaustive_kwise_union(n: int, k: int, d: int, witness_cap: int = DEFAULT_WITNESS_CAP) -> SearchResult:
    start = time.perf_counter()
    fams = all_families(n)
    unions = kfold_vector(fams, SetOp.UNION, k, n)
    ok = (unions & _size_pattern(n, lambda s: s > d)) == 0
    return _best(n, ok, fams, witness_cap, start, {"mode": "exhaustive"})


def exhaustive_kwise_intersecting(n: int, k: int, t: int,
                                  witness_cap: int = DEFAULT_WITNESS_CAP) -> SearchResult:
    start = time.perf_counter()
    fams = all_families(n)
    meets = kfold_vector(fams, SetOp.INTERSECTION, k, n)
    ok = (meets & _size_pattern(n, lambda s: s < t)) == 0
    return _best(n, ok, fams, witness_cap, start, {"mode": "exhaustive"})


def exhaustive_two_sided(n: int, d: int, witness_cap: int = DEFAULT_WITNESS_CAP) -> SearchResult:
    """Largest family with both pairwise-intersection and pairwise-union closures of VC at most ``d``."""
    start = time.perf_counter()
    fams = all_families(n)
    cap_vc = vc_vector(closure(fams, fams, SetOp.INTERSECTION, n), n)
    cup_vc = vc_vector(closure(fams, fams, SetOp.UNION, n), n)
    return _best(n, (cap_vc <= d) & (cup_vc <= d), fams, witness_cap, start, {"mode": "exhaustive"})
