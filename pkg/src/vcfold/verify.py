"""Seeded verification suites: randomized property checks and exact grids.

Each suite returns a :class:`SuiteResult`. A failed suite means a claimed
statement did not hold on some instance; the first offending family is kept
in FamilyFile form.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import familyfile
from .construct import (
    complete_chain,
    cube_minus_two,
    down_closure,
    family_a_ri,
    mod_d_family,
    mod_d_size,
)
from .core import (
    SetFamily,
    SetOp,
    full_mask,
    is_kwise_intersecting,
    is_kwise_union,
    kfold,
    kfold_multi,
    maximal_members,
    popcount,
    shattered_collection,
    vc_dimension,
)
from .formula import binom_leq, conjecture_value, katona_bound, main_bound, n0_estimate
from .normalize import compress_at, is_downward_closed, shift_at
from .search import (
    exhaustive_kwise_intersecting,
    exhaustive_two_sided,
    find_union_witness,
    max_kwise_intersecting,
    max_kwise_union,
    max_vc_delta,
    relabelling_isomorphic,
    union_witness_preconditions,
)

DEFAULT_SEED = 20190601
DEFAULT_TRIALS = 1000


@dataclass
class SuiteResult:
    suite: str
    claim: str
    passed: bool = True
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    counterexample: str | None = None
    elapsed: float = 0.0
    rows: list[dict] = field(default_factory=list)

    def fail(self, message: str, family: SetFamily | None = None) -> None:
        self.passed = False
        self.failures.append(message)
        if family is not None and self.counterexample is None:
            self.counterexample = familyfile.serialize(family, [message])

    def as_dict(self) -> dict:
        return {"suite": self.suite, "claim": self.claim, "passed": self.passed, "checks": self.checks,
                "failures": self.failures[:20], "counterexample": self.counterexample, "rows": self.rows}


def random_family(rng: random.Random, n: int, max_size: int | None = None) -> SetFamily:
    total = 1 << n
    cap = total if max_size is None else min(total, max_size)
    size = rng.randint(1, cap)
    return SetFamily(n, rng.sample(range(total), size))


def random_union_downset(rng: random.Random, n: int, k: int, d: int) -> SetFamily:
    """A random down-set trimmed until every k-fold union has at most ``d`` elements."""
    seeds = [rng.getrandbits(n) for _ in range(rng.randint(1, 6))]
    fam = down_closure(n, seeds)
    members = set(fam.members)
    while not is_kwise_union(SetFamily(n, members), k, d):
        tops = sorted(maximal_members(members))
        members.discard(rng.choice(tops))
    return SetFamily(n, members)


def lemma_compress(trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, max_n: int = 8) -> SuiteResult:
    res = SuiteResult("lemma-compress", "compressing every slot at element i never creates new shattered "
                      "sets in the k-fold symmetric difference A_1 ^ ... ^ A_k")
    rng = random.Random(seed)
    sym = SetOp.SYMMETRIC_DIFFERENCE
    for _ in range(trials):
        n = rng.randint(2, max_n)
        k = rng.randint(1, 3)
        # slot sizes shrink with k to keep the closure small
        fams = [random_family(rng, n, (1 << n, 40, 12)[k - 1]) for _ in range(k)]
        i = rng.randint(1, n)
        before = shattered_collection(kfold_multi(fams, sym))
        after = shattered_collection(kfold_multi([compress_at(f, i) for f in fams], sym))
        res.checks += 1
        extra = set(after.members) - set(before.members)
        if extra:
            res.fail(f"n={n} k={k} i={i}: compressed closure shatters {sorted(extra)}", fams[0])
    n = max(2, min(max_n, 4))
    pair = SetFamily(n, [0, full_mask(n)])
    strict = set(shattered_collection(compress_at(pair, 1)).members) < set(shattered_collection(pair).members)
    res.checks += 1
    if not strict:
        res.fail("{{}, [n]} should lose a shattered set under compression", pair)
    return res


def lemma_shift(trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, max_n: int = 8) -> SuiteResult:
    res = SuiteResult("lemma-shift", "an (i,j)-shift of a downward-closed k-wise union family is again "
                      "downward closed and k-wise union with the same bound")
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.randint(2, max_n)
        k = rng.randint(1, 3)
        d = rng.randint(1, n - 1)
        fam = random_union_downset(rng, n, k, d)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                shifted = shift_at(fam, i, j)
                res.checks += 1
                if len(shifted) != len(fam) or not is_downward_closed(shifted) \
                        or not is_kwise_union(shifted, k, d):
                    res.fail(f"n={n} k={k} d={d} shift ({i},{j}) broke the family", fam)
    return res


def lemma_witness(trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, max_n: int = 10) -> SuiteResult:
    res = SuiteResult("lemma-witness", "if |B| >= s and |A| > 2^s binom_leq(n,u), some member A has "
                      "|A u B| >= s+u+1")
    rng = random.Random(seed)
    done = 0
    while done < trials:
        n = rng.randint(1, max_n)
        s = rng.randint(0, n)
        u = rng.randint(0, n)
        threshold = (1 << s) * binom_leq(n, u)
        if threshold >= 1 << n:
            continue
        size = rng.randint(threshold + 1, 1 << n)
        fam = SetFamily(n, rng.sample(range(1 << n), size))
        b = 0
        for x in rng.sample(range(n), rng.randint(s, n)):
            b |= 1 << x
        if not union_witness_preconditions(fam, b, s, u):
            res.fail(f"generator produced an instance outside the hypotheses (n={n}, s={s}, u={u})", fam)
            continue
        done += 1
        res.checks += 1
        w = find_union_witness(fam, b, s, u)
        if w is None or popcount(w | b) < s + u + 1:
            res.fail(f"n={n} s={s} u={u} B={b:#x}: no member reaches {s + u + 1}", fam)
    return res


def sauer(trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, max_n: int = 8) -> SuiteResult:
    res = SuiteResult("sauer", "a family of VC dimension d has at most binom_leq(n, d) members")
    rng = random.Random(seed)
    for t in range(trials):
        n = rng.randint(1, max_n)
        fam = random_family(rng, n) if t % 2 else down_closure(n, [rng.getrandbits(n) for _ in range(4)])
        d = vc_dimension(fam)
        res.checks += 1
        if len(fam) > binom_leq(n, d):
            res.fail(f"n={n}: |A|={len(fam)} > binom_leq({n},{d})", fam)
    return res


def equivalence(max_n: int = 4) -> SuiteResult:
    res = SuiteResult("equivalence", "the largest family with VC(k-fold symmetric difference) <= d has "
                      "the same size as the largest k-wise union family with bound d; and the "
                      "intersecting version at t = n - d has that size too")
    for n in range(2, min(max_n, 4) + 1):
        for k in (2, 3):
            for d in range(1, n):
                pprime = max_vc_delta(n, k, d, "exhaustive").value
                p = max_kwise_union(n, k, d).value
                m_oracle = exhaustive_kwise_intersecting(n, k, n - d).value
                m_search = max_kwise_intersecting(n, k, n - d)
                res.checks += 1
                res.rows.append({"n": n, "k": k, "d": d, "pprime": pprime, "p": p, "m": m_oracle})
                if not pprime == p == m_oracle == m_search.value:
                    res.fail(f"n={n} k={k} d={d}: p'={pprime} p={p} m={m_oracle} m_search={m_search.value}")
                for w in m_search.witnesses:
                    if not is_kwise_intersecting(w, k, n - d):
                        res.fail(f"n={n} k={k} t={n - d}: complemented witness not intersecting", w)
    return res


def katona(max_n: int = 6) -> SuiteResult:
    res = SuiteResult("katona", "for k = 2 the largest k-wise union family has size "
                      "2^r binom_leq(n-r, d//2), r = d mod 2")
    for n in range(2, max_n + 1):
        for d in range(1, n):
            got = max_kwise_union(n, 2, d, seed_incumbent=False).value
            want = katona_bound(n, d).value
            res.checks += 1
            res.rows.append({"n": n, "d": d, "search": got, "bound": want})
            if got != want:
                res.fail(f"n={n} d={d}: search {got} vs bound {want}")
    return res


def conjecture(max_n: int = 7, max_d: int = 4) -> SuiteResult:
    res = SuiteResult("conjecture", "the largest k-wise union family equals the best product family "
                      "A(d-ki, i) over 0 <= i <= d/k")
    for k in (2, 3):
        top = max_n if k == 2 else min(max_n, 6)
        for n in range(2, top + 1):
            for d in range(1, min(max_d, n - 1) + 1):
                got = max_kwise_union(n, k, d, seed_incumbent=False)
                want = conjecture_value(n, k, d).value
                single = main_bound(n, k, d).value
                res.checks += 1
                res.rows.append({"n": n, "k": k, "d": d, "search": got.value, "conjecture": want,
                                 "largest_i_candidate": single})
                if got.value != want:
                    res.fail(f"n={n} k={k} d={d}: search {got.value} vs conjectured {want}",
                             got.witnesses[0] if got.witnesses else None)
    return res


def uniqueness(max_n: int = 7, max_d: int = 4) -> SuiteResult:
    res = SuiteResult("uniqueness", "above the threshold n0(d,k), every largest k-wise union family is a "
                      "relabelled A(d mod k, d//k)")
    for k in (2, 3):
        top = max_n if k == 2 else min(max_n, 6)
        for d in range(1, max_d + 1):
            for n in range(max(d + 1, n0_estimate(d, k)), top + 1):
                got = max_kwise_union(n, k, d, certify_unique=True)
                target = family_a_ri(n, d % k, d // k)
                iso = [relabelling_isomorphic(w, target) for w in got.witnesses]
                res.checks += 1
                res.rows.append({"n": n, "k": k, "d": d, "value": got.value,
                                 "classes": len(got.witnesses), "unique": got.unique_up_to_relabelling})
                if got.unique_up_to_relabelling is not True or not all(iso):
                    bad = next((w for w, ok in zip(got.witnesses, iso) if not ok), None)
                    res.fail(f"n={n} k={k} d={d}: unique={got.unique_up_to_relabelling} "
                             f"classes={len(got.witnesses)}", bad)
    return res


def counterexample(max_n: int = 20, vc_max_n: int = 10) -> SuiteResult:
    res = SuiteResult("counterexample", "the monotone-mod-d family is closed under pairwise union and "
                      "intersection, has VC dimension d and more than (n/d)^d members; the cube "
                      "minus {1} and [n] has two-sided VC n-1")
    cap, cup = SetOp.INTERSECTION, SetOp.UNION
    for d in range(1, 5):
        for n in range(d + 1, max_n + 1):
            fam = mod_d_family(n, d)
            res.checks += 1
            if len(fam) != mod_d_size(n, d):
                res.fail(f"n={n} d={d}: size {len(fam)} vs product {mod_d_size(n, d)}", fam)
            if not Fraction(len(fam)) > Fraction(n, d) ** d:
                res.fail(f"n={n} d={d}: size {len(fam)} not above (n/d)^d", fam)
            if kfold(fam, cup, 2) != fam or kfold(fam, cap, 2) != fam:
                res.fail(f"n={n} d={d}: not closed under union/intersection", fam)
            if n <= vc_max_n and vc_dimension(fam) != d:
                res.fail(f"n={n} d={d}: VC {vc_dimension(fam)}", fam)
    for d in (3, 4):
        n = d + 1
        fam = cube_minus_two(n)
        full = full_mask(n)
        res.checks += 1
        if len(fam) != (1 << n) - 2:
            res.fail(f"n={n}: size {len(fam)}", fam)
        if kfold(fam, cap, 2) != SetFamily(n, (m for m in range(1 << n) if m != full)):
            res.fail(f"n={n}: pairwise intersections should miss exactly [n]", fam)
        if kfold(fam, cup, 2) != SetFamily(n, (m for m in range(1 << n) if m != 1)):
            res.fail(f"n={n}: pairwise unions should miss exactly {{1}}", fam)
        if vc_dimension(kfold(fam, cap, 2)) != d or vc_dimension(kfold(fam, cup, 2)) != d:
            res.fail(f"n={n}: two-sided VC should be {d}", fam)
    two = exhaustive_two_sided(4, 3)
    res.checks += 1
    res.rows.append({"n": 4, "d": 3, "two_sided": two.value})
    if two.value != 14:
        res.fail(f"two-sided maximum at n=4, d=3 is {two.value}, expected 14")
    for n in range(1, 5):
        got = exhaustive_two_sided(n, 1)
        res.checks += 1
        res.rows.append({"n": n, "d": 1, "two_sided": got.value, "unique": got.unique_up_to_relabelling})
        chain = complete_chain(n)
        if got.value != n + 1 or got.witness_cap_hit or \
                not all(relabelling_isomorphic(w, chain) for w in got.witnesses):
            res.fail(f"n={n}, d=1: value {got.value}, chains not the only maximum")
    for n in range(2, 5):
        for d in range(1, n):
            res.checks += 1
            if exhaustive_two_sided(n, d).value < mod_d_size(n, d):
                res.fail(f"n={n} d={d}: two-sided maximum below the mod-d construction")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "lemma-compress": lemma_compress,
    "lemma-shift": lemma_shift,
    "lemma-witness": lemma_witness,
    "sauer": sauer,
    "equivalence": equivalence,
    "katona": katona,
    "conjecture": conjecture,
    "uniqueness": uniqueness,
    "counterexample": counterexample,
}

RANDOMIZED = {"lemma-compress", "lemma-shift", "lemma-witness", "sauer"}


def run_suite(name: str, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
              max_n: int | None = None) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    kwargs: dict = {}
    if name in RANDOMIZED:
        kwargs.update(trials=trials, seed=seed)
    if max_n is not None:
        kwargs["max_n"] = max_n
    start = time.perf_counter()
    res = fn(**kwargs)
    res.elapsed = time.perf_counter() - start
    return res
