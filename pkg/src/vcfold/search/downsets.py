"""Branch and bound over down-sets of ``2^[n]`` with a monotone constraint.

Candidate subsets are visited in a linear extension of the containment order
(or of containment plus shifting, in shifted mode). Each candidate is either
included, which needs all of its immediate predecessors included, or
excluded, which kills everything above it. A candidate is *alive* while it
can still join the current family; ``size + alive`` bounds every completion.

The alive set is a Python int used as a bitset over candidate indices.
"""

from __future__ import annotations

import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ..core import SetFamily, bits_of, is_kwise_union, popcount, vc_dimension
from ..construct import family_a_ri, lowsets
from ..formula import conjecture_candidate
from .isomorphism import WitnessPool
from .result import BudgetExceeded, DEFAULT_WITNESS_CAP, SearchResult, default_budget

MAX_SEARCH_N = 8


def _order_key(mask: int) -> tuple[int, int, int]:
    return (popcount(mask), sum(bits_of(mask)), mask)


def _predecessors(mask: int, shifted: bool) -> list[int]:
    preds = [mask ^ (1 << b) for b in bits_of(mask)]
    if shifted:
        for b in bits_of(mask):
            if b and not mask >> (b - 1) & 1:
                preds.append(mask ^ (1 << b) ^ (1 << (b - 1)))
    return preds


@dataclass(frozen=True)
class Poset:
    masks: tuple[int, ...]
    preds: tuple[tuple[int, ...], ...]
    above: tuple[int, ...]  # bitset of strict successors, transitively closed

    @classmethod
    def build(cls, n: int, max_size: int, shifted: bool) -> "Poset":
        masks = sorted((m for m in range(1 << n) if popcount(m) <= max_size), key=_order_key)
        index = {m: i for i, m in enumerate(masks)}
        preds = tuple(tuple(index[p] for p in _predecessors(m, shifted)) for m in masks)
        above = [0] * len(masks)
        for i in range(len(masks) - 1, -1, -1):
            for p in preds[i]:
                above[p] |= above[i] | (1 << i)
        return cls(tuple(masks), preds, tuple(above))


class UnionConstraint:
    """Every union of ``k`` members has at most ``d`` elements.

    ``layers[j]`` is a bitset over masks holding every union of at most ``j``
    members (bit 0, the empty union, always present).
    """

    eager = True

    def __init__(self, n: int, k: int, d: int):
        self.n, self.k, self.d = n, k, d
        size = 1 << n
        self.bad = [sum(1 << z for z in range(size) if popcount(s | z) > d) for s in range(size)]
        self.layers = [1] * k
        self._trail: list[list[int]] = []

    def ok(self, mask: int) -> bool:
        return not self.layers[self.k - 1] & self.bad[mask]

    def push(self, mask: int) -> None:
        self._trail.append(list(self.layers))
        for j in range(self.k - 1, 0, -1):
            lower = self.layers[j - 1]
            image = 0
            for z in bits_of(lower):
                image |= 1 << (z | mask)
            self.layers[j] |= image

    def pop(self) -> None:
        self.layers = self._trail.pop()


class SymDiffVCConstraint:
    """The k-fold symmetric-difference closure has VC dimension at most ``d``."""

    eager = False

    def __init__(self, n: int, k: int, d: int):
        self.n, self.k, self.d = n, k, d
        # layers[j]: all j-fold symmetric differences of members; layers[0] = {0}
        self.layers: list[frozenset[int]] = [frozenset({0})] + [frozenset()] * k
        self._trail: list[list[frozenset[int]]] = []
        self._pending: tuple[int, list[frozenset[int]]] | None = None

    def _extend(self, mask: int) -> list[frozenset[int]]:
        new = [frozenset({0})]
        for j in range(1, self.k + 1):
            acc: set[int] = set()
            for m in range(j + 1):
                if m % 2:
                    acc.update(z ^ mask for z in self.layers[j - m])
                else:
                    acc.update(self.layers[j - m])
            new.append(frozenset(acc))
        return new

    def ok(self, mask: int) -> bool:
        new = self._extend(mask)
        self._pending = (mask, new)
        return vc_dimension(SetFamily(self.n, new[self.k])) <= self.d

    def push(self, mask: int) -> None:
        self._trail.append(self.layers)
        if self._pending is not None and self._pending[0] == mask:
            self.layers = self._pending[1]
        else:
            self.layers = self._extend(mask)
        self._pending = None

    def pop(self) -> None:
        self.layers = self._trail.pop()
        self._pending = None


def make_constraint(kind: str, n: int, k: int, d: int):
    if kind == "union":
        return UnionConstraint(n, k, d)
    if kind == "symdiff-vc":
        return SymDiffVCConstraint(n, k, d)
    raise ValueError(f"unknown constraint kind {kind!r}")


_shared_best = None


def _init_worker(shared) -> None:
    global _shared_best
    _shared_best = shared


class DownsetSearch:
    """Maximum down-sets satisfying a monotone constraint."""

    def __init__(self, n: int, kind: str, k: int, d: int, *, max_size: int | None = None,
                 shifted: bool = True, incumbent: int = 0, witness_cap: int = DEFAULT_WITNESS_CAP,
                 budget: int | None = None):
        if not 1 <= n <= MAX_SEARCH_N:
            raise BudgetExceeded(f"down-set search supports 1 <= n <= {MAX_SEARCH_N}, got {n}")
        self.n, self.kind, self.k, self.d = n, kind, k, d
        self.shifted = shifted
        self.max_size = n if max_size is None else max_size
        self.poset = Poset.build(n, self.max_size, shifted)
        self.constraint = make_constraint(kind, n, k, d)
        self.best = incumbent
        self.pool = WitnessPool(witness_cap)
        self.budget = default_budget() if budget is None else budget
        self.nodes = 0
        self._members: list[int] = []

    def _record(self, size: int) -> None:
        if size < self.best:
            return
        if size > self.best:
            self.best = size
            self.pool.clear()
            if _shared_best is not None:
                with _shared_best.get_lock():
                    if _shared_best.value < size:
                        _shared_best.value = size
        self.pool.add(SetFamily(self.n, self._members))

    def _bar(self) -> int:
        if _shared_best is not None:
            return max(self.best, _shared_best.value)
        return self.best

    def _include_alive(self, c: int, alive: int) -> int:
        alive &= ~(1 << c)
        if not self.constraint.eager:
            return alive
        masks, above, ok = self.poset.masks, self.poset.above, self.constraint.ok
        for q in bits_of(alive >> (c + 1) << (c + 1)):
            if alive >> q & 1 and not ok(masks[q]):
                alive &= ~((1 << q) | above[q])
        return alive

    def _dfs(self, alive: int, size: int, split_depth: int = -1, frontier: list | None = None) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"node budget {self.budget} exhausted")
        if not alive:
            self._record(size)
            return
        if size + popcount(alive) < self._bar():
            return
        if split_depth == 0:
            frontier.append((alive, size, list(self._members)))
            return
        c = (alive & -alive).bit_length() - 1
        mask = self.poset.masks[c]
        nxt = split_depth - 1 if split_depth > 0 else -1
        if self.constraint.eager or self.constraint.ok(mask):
            self.constraint.push(mask)
            self._members.append(mask)
            self._dfs(self._include_alive(c, alive), size + 1, nxt, frontier)
            self._members.pop()
            self.constraint.pop()
        self._dfs(alive & ~((1 << c) | self.poset.above[c]), size, nxt, frontier)

    def _initial_alive(self) -> int:
        alive = (1 << len(self.poset.masks)) - 1
        if self.constraint.eager:
            for q, m in enumerate(self.poset.masks):
                if alive >> q & 1 and not self.constraint.ok(m):
                    alive &= ~((1 << q) | self.poset.above[q])
        return alive

    def run(self) -> None:
        self._dfs(self._initial_alive(), 0)

    def run_from(self, alive: int, size: int, members: list[int]) -> None:
        for m in members:
            self.constraint.push(m)
            self._members.append(m)
        self._dfs(alive, size)

    def frontier(self, depth: int) -> list:
        out: list = []
        self._dfs(self._initial_alive(), 0, depth, out)
        return out


def _solve_subtree(args):
    params, state = args
    engine = DownsetSearch(**params)
    engine.run_from(*state)
    return engine.best, engine.pool.families, engine.pool.cap_hit, engine.nodes


def run_search(n: int, kind: str, k: int, d: int, *, max_size: int | None = None, shifted: bool = True,
               incumbent: int = 0, witness_cap: int = DEFAULT_WITNESS_CAP, budget: int | None = None,
               workers: int = 1, split_depth: int = 8) -> tuple[int, WitnessPool, int]:
    """Run the search; returns (best size, witness pool, nodes explored)."""
    params = dict(n=n, kind=kind, k=k, d=d, max_size=max_size, shifted=shifted,
                  incumbent=incumbent, witness_cap=witness_cap, budget=budget)
    engine = DownsetSearch(**params)
    if workers <= 1:
        engine.run()
        return engine.best, engine.pool, engine.nodes
    front = engine.frontier(split_depth)
    best, pool, nodes = engine.best, engine.pool, engine.nodes
    shared = mp.Value("i", best)
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(shared,)) as ex:
        results = list(ex.map(_solve_subtree, [(params, st) for st in front]))
    best = max([best] + [r[0] for r in results])
    merged = WitnessPool(witness_cap)
    if engine.best == best:
        merged.merge(pool)
    for sub_best, fams, cap_hit, sub_nodes in results:
        nodes += sub_nodes
        if sub_best == best:
            for f in fams:
                merged.add(f)
            merged.cap_hit = merged.cap_hit or cap_hit
    # witnesses reported at a lower incumbent than the final best are discarded above
    merged.families = [f for f in merged.families if len(f) == best]
    return best, merged, nodes


def union_lower_bound(n: int, k: int, d: int) -> tuple[int, SetFamily]:
    """Largest verified product family ``A(d - k*i, i)`` fitting in ``[n]``."""
    best_family = lowsets(n, 0)
    for i in range(d // k + 1):
        r = d - k * i
        if r + i > n:
            continue
        fam = family_a_ri(n, r, i)
        assert len(fam) == conjecture_candidate(n, k, d, i)
        if is_kwise_union(fam, k, d) and len(fam) > len(best_family):
            best_family = fam
    return len(best_family), best_family


def max_kwise_union(n: int, k: int, d: int, *, shifted: bool = True, seed_incumbent: bool = True,
                    certify_unique: bool = False, witness_cap: int = DEFAULT_WITNESS_CAP,
                    budget: int | None = None, workers: int = 1) -> SearchResult:
    """Exact largest family whose ``k``-fold unions all have at most ``d`` elements.

    A largest family can be taken downward closed, and by shifting also
    shifted, so the default search only walks shifted down-sets. With
    ``certify_unique`` a second pass over all down-sets lists every maximum
    family up to relabelling.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if not 0 < d < n:
        raise ValueError(f"need 0 < d < n, got d={d}, n={n}")
    start = time.perf_counter()
    lb, lb_family = union_lower_bound(n, k, d) if seed_incumbent else (0, None)
    best, pool, nodes = run_search(n, "union", k, d, max_size=d, shifted=shifted, incumbent=lb,
                                   witness_cap=witness_cap, budget=budget, workers=workers)
    if not pool.families and lb_family is not None:
        pool.add(lb_family)
    unique = None
    if certify_unique:
        best_all, pool, more = run_search(n, "union", k, d, max_size=d, shifted=False, incumbent=best,
                                          witness_cap=witness_cap, budget=budget, workers=workers)
        nodes += more
        if best_all != best:
            raise AssertionError(f"shifted search found {best}, full down-set search {best_all}")
        unique = None if pool.cap_hit else len(pool.families) == 1
    for f in pool.families:
        if not is_kwise_union(f, k, d) or len(f) != best:
            raise AssertionError(f"witness {f} fails the k-wise union check")
    return SearchResult(value=best, witnesses=pool.sorted_families(), unique_up_to_relabelling=unique,
                        nodes_explored=nodes, elapsed=time.perf_counter() - start,
                        witness_cap_hit=pool.cap_hit,
                        info={"engine": "downset", "shifted": shifted, "seed": lb})


def max_kwise_intersecting(n: int, k: int, t: int, **kwargs) -> SearchResult:
    """Largest family whose ``k``-fold intersections have at least ``t`` elements.

    Complementing every member turns intersections into unions, so this is the
    union search at ``d = n - t`` with complemented witnesses.
    """
    if not 0 < t < n:
        raise ValueError(f"need 0 < t < n, got t={t}, n={n}")
    res = max_kwise_union(n, k, n - t, **kwargs)
    res.witnesses = [w.complement() for w in res.witnesses]
    res.info["via"] = "complement of union search"
    return res
