"""Explicit families: low and high layers, the product families A(r, i),
the modulo-d monotone family, complete chains and the cube minus two sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import SetFamily, bits_of, check_n, full_mask, popcount


def _range(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def lowsets(n: int, d: int) -> SetFamily:
    """Every subset of ``[n]`` with at most ``d`` elements."""
    check_n(n)
    _range(0 <= d <= n, f"need 0 <= d <= n, got d={d}, n={n}")
    return SetFamily(n, (m for m in range(1 << n) if popcount(m) <= d))


def highsets(n: int, d: int) -> SetFamily:
    """Every subset with at least ``n - d`` elements."""
    return lowsets(n, d).complement()


def family_a_ri(n: int, r: int, i: int) -> SetFamily:
    """Sets of at most ``i`` elements of ``[n - r]``, times the full cube on the last ``r``."""
    check_n(n)
    _range(r >= 0 and i >= 0 and r + i <= n, f"need r, i >= 0 and r + i <= n, got r={r}, i={i}, n={n}")
    low = n - r
    high_masks = [h << low for h in range(1 << r)]
    low_masks = [m for m in range(1 << low) if popcount(m) <= i]
    return SetFamily(n, (a | b for a in low_masks for b in high_masks))


@dataclass(frozen=True)
class ModDCode:
    """Prefix lengths of the ``d`` residue chains ``k, k + d, k + 2d, ...``."""

    counts: tuple[int, ...]


def _chain_lengths(n: int, d: int) -> list[int]:
    return [(n - k) // d + 1 for k in range(1, d + 1)]


def _check_nd(n: int, d: int) -> None:
    check_n(n)
    _range(1 <= d <= n, f"need 1 <= d <= n, got d={d}, n={n}")


def mod_d_decode(code: ModDCode | tuple[int, ...], n: int, d: int) -> int:
    _check_nd(n, d)
    counts = code.counts if isinstance(code, ModDCode) else tuple(code)
    limits = _chain_lengths(n, d)
    if len(counts) != d or any(not 0 <= c <= lim for c, lim in zip(counts, limits)):
        raise ValueError(f"code {counts} out of bounds {limits}")
    mask = 0
    for k, c in enumerate(counts, start=1):
        for step in range(c):
            mask |= 1 << (k + step * d - 1)
    return mask


def mod_d_encode(mask: int, n: int, d: int) -> ModDCode:
    _check_nd(n, d)
    if mask >> n:
        raise ValueError(f"mask {mask:#x} does not fit [{n}]")
    counts = []
    for k in range(1, d + 1):
        c = 0
        while k + c * d <= n and mask >> (k + c * d - 1) & 1:
            c += 1
        for later in range(k + (c + 1) * d, n + 1, d):
            if mask >> (later - 1) & 1:
                raise ValueError(f"set violates monotonicity modulo {d} at element {later}")
        counts.append(c)
    return ModDCode(tuple(counts))


def mod_d_family(n: int, d: int) -> SetFamily:
    """Sets where every element ``x > d`` brings ``x - d`` along."""
    _check_nd(n, d)
    ranges = [range(lim + 1) for lim in _chain_lengths(n, d)]
    return SetFamily(n, (mod_d_decode(c, n, d) for c in itertools.product(*ranges)))


def mod_d_size(n: int, d: int) -> int:
    size = 1
    for k in range(1, d + 1):
        size *= (n - k) // d + 2
    return size


def complete_chain(n: int) -> SetFamily:
    """``{}, {1}, {1,2}, ..., [n]``."""
    check_n(n)
    return SetFamily(n, (full_mask(j) for j in range(n + 1)))


def cube_minus_two(n: int) -> SetFamily:
    """All subsets of ``[n]`` except ``{1}`` and ``[n]``."""
    check_n(n)
    _range(n >= 2, f"need n >= 2, got {n}")
    drop = {1, full_mask(n)}
    return SetFamily(n, (m for m in range(1 << n) if m not in drop))


def down_closure(n: int, masks) -> SetFamily:
    """Smallest down-set containing ``masks``."""
    out: set[int] = set()
    stack = list(masks)
    while stack:
        m = stack.pop()
        if m in out:
            continue
        out.add(m)
        stack.extend(m ^ (1 << b) for b in bits_of(m))
    return SetFamily(n, out)
