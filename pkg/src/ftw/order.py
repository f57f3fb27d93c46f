"""Finite posets, lattice detection and Heyting operations.

The order is kept as a full relation matrix packed into bitmask rows:
``poset.down[y]`` is the set of ``x`` with ``x <= y`` and ``poset.up[x]``
the set of ``y`` with ``x <= y``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import bits
from .errors import SizeCapError, Verdict

DEFAULT_MAX_BASE = 16

Table = tuple[tuple[Optional[int], ...], ...]


def check_cap(n: int, max_base: int | None) -> None:
    cap = DEFAULT_MAX_BASE if max_base is None else max_base
    if n > cap:
        raise SizeCapError(f"carrier has {n} elements, cap is {cap}")


@dataclass(frozen=True)
class Poset:
    labels: tuple[str, ...]
    down: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            dupes = sorted({x for x in self.labels if self.labels.count(x) > 1})
            raise ValueError(f"duplicate element labels: {dupes}")
        if len(self.down) != len(self.labels):
            raise ValueError("order matrix does not match the number of labels")
        everything = bits.full(len(self.labels))
        if any(row & ~everything for row in self.down):
            raise ValueError("order matrix mentions elements outside the carrier")

    @classmethod
    def from_matrix(cls, labels: Sequence[str], le: Sequence[Sequence[bool]],
                    max_base: int | None = None) -> "Poset":
        """``le[x][y]`` is true iff ``x <= y``."""
        check_cap(len(labels), max_base)
        n = len(labels)
        down = tuple(bits.from_indices(x for x in range(n) if le[x][y]) for y in range(n))
        return cls(tuple(labels), down)

    @classmethod
    def from_pairs(cls, labels: Sequence[str], pairs: Iterable[tuple[str, str]],
                   close: bool = True, max_base: int | None = None) -> "Poset":
        """Build from generating pairs ``(x, y)`` meaning ``x <= y``.

        With ``close`` the reflexive-transitive closure is taken; antisymmetry
        is left to :func:`validate_poset`.
        """
        labels = tuple(labels)
        check_cap(len(labels), max_base)
        index = {name: i for i, name in enumerate(labels)}
        n = len(labels)
        down = [0] * n
        for x, y in pairs:
            down[index[y]] |= 1 << index[x]
        if close:
            for y in range(n):
                down[y] |= 1 << y
            # Warshall on bitmask rows
            for k in range(n):
                for y in range(n):
                    if down[y] >> k & 1:
                        down[y] |= down[k]
        return cls(labels, tuple(down))

    @classmethod
    def chain(cls, labels: Sequence[str]) -> "Poset":
        n = len(labels)
        return cls(tuple(labels), tuple(bits.full(y + 1) for y in range(n)))

    @classmethod
    def antichain(cls, labels: Sequence[str]) -> "Poset":
        return cls(tuple(labels), tuple(1 << y for y in range(len(labels))))

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def up(self) -> tuple[int, ...]:
        n = len(self)
        return tuple(bits.from_indices(y for y in range(n) if self.down[y] >> x & 1)
                     for x in range(n))

    def le(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def downclose(self, mask: int) -> int:
        """Union of ``down_set(y)`` over ``y`` in ``mask``."""
        return bits.union_of(self.down[y] for y in bits.members(mask))

    def hasse_edges(self) -> list[tuple[int, int]]:
        return hasse_edges(self.down)


def validate_poset(p: Poset) -> Verdict:
    n = len(p)
    for a in range(n):
        if not p.le(a, a):
            return Verdict.failed("reflexivity", (p.labels[a],),
                                  f"{p.labels[a]} <= {p.labels[a]} is missing")
    for a in range(n):
        for b in range(a + 1, n):
            if p.le(a, b) and p.le(b, a):
                return Verdict.failed("antisymmetry", (p.labels[a], p.labels[b]),
                                      f"{p.labels[a]} <= {p.labels[b]} <= {p.labels[a]}")
    for a in range(n):
        for b in range(n):
            if not p.le(a, b):
                continue
            for c in range(n):
                if p.le(b, c) and not p.le(a, c):
                    w = (p.labels[a], p.labels[b], p.labels[c])
                    return Verdict.failed("transitivity", w, "%s <= %s <= %s but not %s <= %s"
                                          % (w + (w[0], w[2])))
    return Verdict.passed()


def down_set(p: Poset, y: int) -> int:
    return p.down[y]


@dataclass(frozen=True)
class LatticeInfo:
    has_all_meets: bool
    has_all_joins: bool
    meet: Table
    join: Table
    bottom: Optional[int]
    top: Optional[int]
    heyting_arrow: Optional[tuple[tuple[int, ...], ...]]

    @property
    def is_lattice(self) -> bool:
        return self.has_all_meets and self.has_all_joins

    @property
    def is_heyting(self) -> bool:
        return self.heyting_arrow is not None


def _greatest(mask: int, down: Sequence[int]) -> Optional[int]:
    """Greatest element of ``mask`` under ``down``, or None."""
    for g in bits.members(mask):
        if bits.is_subset(mask, down[g]):
            return g
    return None


def analyze_lattice(p: Poset) -> LatticeInfo:
    n = len(p)
    up = p.up
    everything = bits.full(n)
    meet = [[None] * n for _ in range(n)]
    join = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            meet[a][b] = _greatest(p.down[a] & p.down[b], p.down)
            join[a][b] = _greatest(up[a] & up[b], up)  # least, via the dual order
    bottom = next((x for x in range(n) if up[x] == everything), None)
    top = next((y for y in range(n) if p.down[y] == everything), None)
    all_meets = top is not None and all(m is not None for row in meet for m in row)
    all_joins = bottom is not None and all(j is not None for row in join for j in row)

    arrow = None
    if all_meets and all_joins:
        rows = []
        for a in range(n):
            row = []
            for b in range(n):
                candidates = bits.from_indices(c for c in range(n) if p.le(meet[c][a], b))
                g = _greatest(candidates, p.down)
                if g is None:
                    break
                row.append(g)
            else:
                rows.append(tuple(row))
                continue
            break
        else:
            arrow = tuple(rows)

    return LatticeInfo(
        has_all_meets=all_meets,
        has_all_joins=all_joins,
        meet=tuple(tuple(r) for r in meet),
        join=tuple(tuple(r) for r in join),
        bottom=bottom,
        top=top,
        heyting_arrow=arrow,
    )


def hasse_edges(down: Sequence[int]) -> list[tuple[int, int]]:
    """Covering pairs ``(x, y)``: ``x < y`` with nothing strictly between."""
    n = len(down)
    edges = []
    for y in range(n):
        below = down[y] & ~(1 << y)
        for x in bits.members(below):
            between = below & ~down[x]
            # z strictly between x and y iff z in below and x < z
            if not any(down[z] >> x & 1 for z in bits.members(between)):
                edges.append((x, y))
    return sorted(edges)


def find_order_isomorphism(down1: Sequence[int], down2: Sequence[int]) -> Optional[list[int]]:
    """Search for a bijection ``phi`` with ``x <= y`` iff ``phi(x) <= phi(y)``.

    Candidates are pruned by size, then by (number below, number above),
    then by backtracking. Returns ``phi`` as a list or None.
    """
    n = len(down1)
    if n != len(down2):
        return None

    def signature(down):
        ups = [bits.from_indices(y for y in range(n) if down[y] >> x & 1) for x in range(n)]
        return [(bits.size(down[x]), bits.size(ups[x])) for x in range(n)]

    sig1, sig2 = signature(down1), signature(down2)
    if sorted(sig1) != sorted(sig2):
        return None
    order = sorted(range(n), key=lambda x: (sig1[x], x))
    phi = [-1] * n
    used = [False] * n

    def consistent(x, fx):
        for y in range(n):
            fy = phi[y]
            if fy < 0:
                continue
            if bool(down1[y] >> x & 1) != bool(down2[fy] >> fx & 1):
                return False
            if bool(down1[x] >> y & 1) != bool(down2[fx] >> fy & 1):
                return False
        return True

    def search(k):
        if k == n:
            return True
        x = order[k]
        for fx in range(n):
            if used[fx] or sig2[fx] != sig1[x] or not consistent(x, fx):
                continue
            phi[x], used[fx] = fx, True
            if search(k + 1):
                return True
            phi[x], used[fx] = -1, False
        return False

    return list(phi) if search(0) else None
