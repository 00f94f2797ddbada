from __future__ import annotations

import os
from dataclasses import dataclass, field

from ..core import SetFamily

BUDGET_ENV = "VCFOLD_NODE_BUDGET"
DEFAULT_NODE_BUDGET = 50_000_000
DEFAULT_WITNESS_CAP = 16


class BudgetExceeded(RuntimeError):
    """The search would exceed (or did exceed) its configured node budget."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_NODE_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


@dataclass
class SearchResult:
    """Extremal value with witness families, one per relabelling class.

    ``unique_up_to_relabelling`` is ``None`` when uniqueness was not examined
    or the witness cap was hit, so the class list may be incomplete.
    """

    value: int
    witnesses: list[SetFamily] = field(default_factory=list)
    unique_up_to_relabelling: bool | None = None
    nodes_explored: int = 0
    elapsed: float = 0.0
    exact: bool = True
    witness_cap_hit: bool = False
    info: dict = field(default_factory=dict)
