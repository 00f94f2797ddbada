"""Exact search and verification for VC dimension of k-fold set operations
and k-wise union families."""

from .core import (
    SetFamily,
    SetOp,
    is_kwise_intersecting,
    is_kwise_union,
    is_shattered,
    kfold,
    kfold_multi,
    shattered_collection,
    trace,
    vc_dimension,
)

__all__ = [
    "SetFamily", "SetOp", "is_kwise_intersecting", "is_kwise_union", "is_shattered", "kfold",
    "kfold_multi", "shattered_collection", "trace", "vc_dimension",
]
__version__ = "0.1.0"
