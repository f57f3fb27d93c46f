"""The frame of saturated subsets and the logical laws it may satisfy."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from . import bits
from .bits import Subset
from .cover import FormalTopology
from .errors import FrameError, NotACoverError, SizeCapError, Verdict
from .order import hasse_edges

DEFAULT_MAX_FRAME = 4096
CROSS_CHECK_BASE = 6
# distributivity over every family of elements is checked up to this frame size;
# above it, binary and empty joins are checked, which is equivalent for finite frames
FULL_DISTRIBUTIVITY_LIMIT = 12


class Frame:
    """``Sat(S)`` enumerated explicitly.

    Elements are the saturated subsets of ``space`` in shortlex order and
    are addressed by their position. ``meet`` is intersection, ``join``
    the saturation of the union, ``arrow`` the space's implication.
    """

    def __init__(self, space: FormalTopology, elements: list[Subset]):
        self.space = space
        self.elements = tuple(sorted(elements, key=bits.shortlex_key))
        self._pos = {u: i for i, u in enumerate(self.elements)}
        self.bottom = self._pos[space.saturate(0)]
        self.top = self._pos[space.base] if space.base in self._pos else None
        if self.top is None:
            raise FrameError("the base is not saturated")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def position(self, u: Subset) -> int:
        try:
            return self._pos[u]
        except KeyError:
            raise FrameError(f"{self.space.fmt(u)} is not a frame element") from None

    def leq(self, i: int, j: int) -> bool:
        return bits.is_subset(self.elements[i], self.elements[j])

    def meet(self, i: int, j: int) -> int:
        return self.position(self.elements[i] & self.elements[j])

    def join(self, i: int, j: int) -> int:
        return self.position(self.space.saturate(self.elements[i] | self.elements[j]))

    def join_all(self, family: list[int]) -> int:
        return self.position(self.space.saturate(bits.union_of(self.elements[i] for i in family)))

    def arrow(self, i: int, j: int) -> int:
        return self.position(self.space.implication(self.elements[i], self.elements[j]))

    def pseudo(self, i: int) -> int:
        return self.position(self.space.pseudocomplement(self.elements[i]))

    @cached_property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        k = len(self)
        return tuple(tuple(self.meet(i, j) for j in range(k)) for i in range(k))

    @cached_property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        k = len(self)
        return tuple(tuple(self.join(i, j) for j in range(k)) for i in range(k))

    @cached_property
    def arrow_table(self) -> tuple[tuple[int, ...], ...]:
        k = len(self)
        return tuple(tuple(self.arrow(i, j) for j in range(k)) for i in range(k))

    @cached_property
    def pseudo_table(self) -> tuple[int, ...]:
        return tuple(self.pseudo(i) for i in range(len(self)))

    @cached_property
    def down(self) -> tuple[int, ...]:
        """Order rows over element positions: ``down[j]`` = {i : i <= j}."""
        k = len(self)
        return tuple(bits.from_indices(i for i in range(k) if self.leq(i, j)) for j in range(k))

    def hasse_edges(self) -> list[tuple[int, int]]:
        return hasse_edges(self.down)

    def fmt(self, i: int) -> str:
        return self.space.fmt(self.elements[i])


def enumerate_frame(s: FormalTopology, max_frame: int = DEFAULT_MAX_FRAME,
                    cross_check: bool = True) -> Frame:
    """Close ``{sat(∅)} ∪ {sat({a})}`` under binary join.

    For bases of at most six elements the result is compared with the set
    of all ``sat(U)``; disagreement means the cover is not a closure
    operator and raises :class:`FrameError`.
    """
    seeds = {s.saturate(0)} | set(s.singletons)
    found = set(seeds)
    frontier = list(found)
    while frontier:
        if len(found) > max_frame:
            raise SizeCapError(f"frame exceeds {max_frame} elements")
        nxt = []
        for u in frontier:
            for v in list(found):
                w = s.saturate(u | v)
                if w not in found:
                    found.add(w)
                    nxt.append(w)
        frontier = nxt
    if len(found) > max_frame:
        raise SizeCapError(f"frame exceeds {max_frame} elements")
    if cross_check and s.n <= CROSS_CHECK_BASE:
        direct = set(s.sat_table())
        if direct != found:
            raise FrameError("join closure of singleton saturations differs from {sat(U)}")
    if any(s.saturate(u) != u for u in found):
        raise FrameError("saturation is not idempotent")
    return Frame(s, list(found))


def check_frame_laws(f: Frame) -> Verdict:
    """Lattice laws, distributivity and the Heyting adjunction, exhaustively."""
    k = len(f)
    meet, join, arrow = f.meet_table, f.join_table, f.arrow_table
    le = f.leq
    for a in range(k):
        if meet[a][a] != a or join[a][a] != a:
            return Verdict.failed("idempotence", (a,))
        for b in range(k):
            if meet[a][b] != meet[b][a] or join[a][b] != join[b][a]:
                return Verdict.failed("commutativity", (a, b))
            if not (le(meet[a][b], a) and le(a, join[a][b])):
                return Verdict.failed("bounds", (a, b))
            for c in range(k):
                if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
                    return Verdict.failed("meet-associativity", (a, b, c))
                if join[join[a][b]][c] != join[a][join[b][c]]:
                    return Verdict.failed("join-associativity", (a, b, c))
                if le(c, arrow[a][b]) != le(meet[c][a], b):
                    return Verdict.failed("adjunction", (c, a, b))
    if k <= FULL_DISTRIBUTIVITY_LIMIT:
        for a in range(k):
            for fam in bits.all_subsets(k):
                idx = list(bits.members(fam))
                lhs = meet[a][f.join_all(idx)]
                rhs = f.join_all([meet[a][w] for w in idx])
                if lhs != rhs:
                    return Verdict.failed("distributivity", (a, tuple(idx)))
    else:
        for a in range(k):
            if meet[a][f.bottom] != f.bottom:
                return Verdict.failed("distributivity", (a, ()))
            for b in range(k):
                for c in range(k):
                    if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                        return Verdict.failed("distributivity", (a, (b, c)))
    return Verdict.passed()


# ------------------------------------------------------------------ laws


@dataclass(frozen=True)
class LawResult:
    law: str
    holds: bool
    witness: Optional[tuple[Subset, ...]] = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class LawReport:
    nontrivial: bool
    boolean: bool
    de_morgan: bool
    strongly_de_morgan: bool
    witnesses: dict = field(default_factory=dict)

    def lines(self, s: FormalTopology) -> list[str]:
        out = []
        for law in ("nontrivial", "boolean", "de_morgan", "strongly_de_morgan"):
            w = self.witnesses.get(law)
            if w is None:
                shown = "-"
            elif len(w) == 1:
                shown = s.fmt(w[0])
            else:
                shown = "(" + ",".join(s.fmt(u) for u in w) + ")"
            out.append(f"law={law} holds={str(getattr(self, law)).lower()} witness={shown}")
        return out


def _frame(s: FormalTopology, frame: Optional[Frame]) -> Frame:
    return frame if frame is not None else enumerate_frame(s)


def is_nontrivial(s: FormalTopology) -> bool:
    return not bits.is_subset(s.base, s.saturate(0))


def is_boolean(s: FormalTopology, frame: Optional[Frame] = None) -> LawResult:
    """Whole base equals ``U ∪ U*`` as formal opens, for each frame element."""
    for u in _frame(s, frame):
        if not s.subsets_equal(s.base, u | s.pseudocomplement(u)):
            return LawResult("boolean", False, (u,))
    return LawResult("boolean", True)


def is_de_morgan(s: FormalTopology, frame: Optional[Frame] = None) -> LawResult:
    """Whole base covered by ``U** ∪ U*``, for each frame element."""
    for u in _frame(s, frame):
        pc = s.pseudocomplement(u)
        if not s.covers_set(s.base, pc | s.pseudocomplement(pc)):
            return LawResult("de_morgan", False, (u,))
    return LawResult("de_morgan", True)


def is_strongly_de_morgan(s: FormalTopology, frame: Optional[Frame] = None) -> LawResult:
    """``(U -> V) ∨ (V -> U)`` is the top, for all pairs of frame elements."""
    f = _frame(s, frame)
    for u in f:
        for v in f:
            joined = s.saturate(s.implication(u, v) | s.implication(v, u))
            if joined != s.base:
                return LawResult("strongly_de_morgan", False, (u, v))
    return LawResult("strongly_de_morgan", True)


def law_report(s: FormalTopology, frame: Optional[Frame] = None) -> LawReport:
    f = _frame(s, frame)
    results = [is_boolean(s, f), is_de_morgan(s, f), is_strongly_de_morgan(s, f)]
    return LawReport(
        nontrivial=is_nontrivial(s),
        boolean=results[0].holds,
        de_morgan=results[1].holds,
        strongly_de_morgan=results[2].holds,
        witnesses={r.law: r.witness for r in results if not r.holds},
    )


# ---------------------------------------------------------------- beta cover


def beta_cover(s: FormalTopology, frame: Optional[Frame] = None) -> FormalTopology:
    """Space on the frame's elements: ``U`` is covered by a family iff ``U``
    is below the join of a finite subfamily (on a finite base, of the whole
    family). Use :func:`beta_witness` for a minimal subfamily.
    """
    f = _frame(s, frame)
    elems = f.elements

    def saturator(fam: Subset) -> Subset:
        joined = s.saturate(bits.union_of(elems[j] for j in bits.members(fam)))
        return bits.from_indices(i for i, u in enumerate(elems) if bits.is_subset(u, joined))

    labels = [s.fmt(u) for u in elems]
    return FormalTopology(labels, saturator, "derived", parent=s, derivation=("beta",),
                          frame=f)


def beta_witness(beta: FormalTopology, i: int, family: Subset) -> Optional[Subset]:
    """Smallest subfamily of ``family`` whose join covers element ``i``."""
    for sub in bits.submasks_by_size(family):
        if beta.covers(i, sub):
            return sub
    return None


def minimal_subcover(s: FormalTopology, u: Subset) -> list[Subset]:
    """All inclusion-minimal ``u0 ⊆ u`` covering the whole base, by ascending size."""
    if not s.covers_set(s.base, u):
        raise NotACoverError(f"{s.fmt(u)} does not cover the base")
    found: list[Subset] = []
    for sub in bits.submasks_by_size(u):
        if any(bits.is_subset(c, sub) for c in found):
            continue
        if s.covers_set(s.base, sub):
            found.append(sub)
    return found


def split_subcover(u0: Subset, v: Subset, w: Subset) -> tuple[Subset, Subset]:
    """Split ``u0 ⊆ V ∪ W`` as ``v0 ∪ w0``; overlap goes to ``v0``."""
    if not bits.is_subset(u0, v | w):
        raise ValueError("u0 is not contained in V ∪ W")
    v0 = u0 & v
    return v0, u0 & ~v0
