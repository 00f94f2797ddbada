"""Closed-form bounds on family sizes, in exact integer arithmetic.

Every evaluator returns a :class:`BoundReport` carrying the intermediate
quantities, so command-line output can show how a number was obtained.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb


@dataclass(frozen=True)
class BoundReport:
    formula_id: str
    value: int
    terms: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"formula": self.formula_id, "value": self.value, "terms": self.terms}


def binom_leq(n: int, t: int) -> int:
    """Number of subsets of an ``n``-set with at most ``t`` elements."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if t < 0:
        return 0
    return sum(comb(n, i) for i in range(min(t, n) + 1))


def sauer_shelah_bound(n: int, d: int) -> int:
    return binom_leq(n, d)


def _residue_bound(n: int, k: int, d: int, formula_id: str) -> BoundReport:
    r, t = d % k, d // k
    value = (1 << r) * binom_leq(n - r, t)
    return BoundReport(formula_id, value, {"n": n, "k": k, "d": d, "r": r, "t": t,
                                           "binom_leq(n-r,t)": binom_leq(n - r, t)})


def katona_bound(n: int, d: int) -> BoundReport:
    """Exact maximum size when ``k = 2``: ``2^r * binom_leq(n - r, d // 2)``, ``r = d mod 2``."""
    if not 0 < d < n:
        raise ValueError(f"need 0 < d < n, got d={d}, n={n}")
    return _residue_bound(n, 2, d, "katona")


def main_bound(n: int, k: int, d: int) -> BoundReport:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if not 0 < d < n:
        raise ValueError(f"need 0 < d < n, got d={d}, n={n}")
    return _residue_bound(n, k, d, "main")


def conjecture_candidate(n: int, k: int, d: int, i: int) -> int:
    """Size of ``A(d - k*i, i)`` over ``[n]``."""
    return (1 << (d - k * i)) * binom_leq(n - d + k * i, i)


def conjecture_value(n: int, k: int, d: int) -> BoundReport:
    """Maximum of the product-family sizes over ``0 <= i <= d // k``."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if not 0 < d <= n:
        raise ValueError(f"need 0 < d <= n, got d={d}, n={n}")
    candidates = [conjecture_candidate(n, k, d, i) for i in range(d // k + 1)]
    best = max(candidates)
    argmax = max(i for i, c in enumerate(candidates) if c == best)
    return BoundReport("conjecture", best, {"n": n, "k": k, "d": d, "candidates": candidates,
                                            "argmax_i": argmax, "r": d - k * argmax})


# The inequalities below are positive for every large n; scanning past the
# first hit guards against a dip before the polynomial takes over.
_TAIL_FACTOR = 4
_TAIL_EXTRA = 64


def _first_stable(pred, start: int) -> int:
    n = start
    while True:
        while not pred(n):
            n += 1
        limit = _TAIL_FACTOR * n + _TAIL_EXTRA
        bad = next((m for m in range(n + 1, limit) if not pred(m)), None)
        if bad is None:
            return n
        n = bad + 1


def _base_inequality(k: int, t: int):
    # binom_leq(n, t) - 2^((k-1)t+1) * binom_leq(n, t-1) > 0
    factor = 1 << ((k - 1) * t + 1)
    return lambda n: binom_leq(n, t) - factor * binom_leq(n, t - 1) > 0


def _step_inequality(d: int, r: int, t: int):
    # 2^r binom_leq(n-r, t) - (2^(d+1) binom_leq(n, t-1) + C(n, t)) > 0
    top = 1 << (d + 1)
    return lambda n: (1 << r) * binom_leq(n - r, t) - (top * binom_leq(n, t - 1) + comb(n, t)) > 0


@lru_cache(maxsize=None)
def n0_estimate(d: int, k: int) -> int:
    """Smallest ``n`` from which the threshold inequalities of the induction hold.

    Residue 0 uses the base inequality alone. A positive residue also needs
    ``n >= n0_estimate(d - 1, k) + 1``. The result is an upper estimate for the
    true threshold, not the threshold itself.
    """
    if k < 1 or d < 0:
        raise ValueError(f"need k >= 1 and d >= 0, got d={d}, k={k}")
    r, t = d % k, d // k
    if d == 0:
        return 1
    if r == 0:
        return _first_stable(_base_inequality(k, t), max(1, d))
    start = n0_estimate(d - 1, k) + 1
    return _first_stable(_step_inequality(d, r, t), max(start, d))


def n0_report(d: int, k: int) -> BoundReport:
    r, t = d % k, d // k
    terms = {"d": d, "k": k, "r": r, "t": t}
    if r and d > 1:
        terms["n0(d-1,k)"] = n0_estimate(d - 1, k)
    terms["order_d2^d/k"] = d * (1 << d) // k
    return BoundReport("n0", n0_estimate(d, k), terms)
