"""Finite subsets of a base encoded as integer bitmasks.

Element ``i`` of a base is a member of ``mask`` iff bit ``i`` is set.
Every helper here is pure and works on plain ``int`` values.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

Subset = int


def full(n: int) -> Subset:
    return (1 << n) - 1


def members(mask: Subset) -> Iterator[int]:
    """Yield the element indices of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_indices(indices: Iterable[int]) -> Subset:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def size(mask: Subset) -> int:
    return bin(mask).count("1")


def is_subset(u: Subset, v: Subset) -> bool:
    return u & ~v == 0


def shortlex_key(mask: Subset) -> tuple:
    """Canonical ordering of subsets: by size, then lexicographically by members."""
    return (size(mask), tuple(members(mask)))


def all_subsets(n: int) -> range:
    return range(1 << n)


def submasks(mask: Subset) -> Iterator[Subset]:
    """Every subset of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def submasks_by_size(mask: Subset) -> Iterator[Subset]:
    """Subsets of ``mask`` in shortlex order."""
    idx = list(members(mask))
    for r in range(len(idx) + 1):
        for combo in combinations(idx, r):
            yield from_indices(combo)


def union_of(masks: Iterable[Subset]) -> Subset:
    out = 0
    for m in masks:
        out |= m
    return out
