"""Morphisms between formal topologies, formal points and positivity."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Optional, Sequence

from . import bits
from .bits import Subset
from .cover import FormalTopology, same_cover
from .errors import MismatchedSpacesError, Verdict
from .frame import enumerate_frame
from .order import check_cap, find_order_isomorphism


@dataclass(frozen=True, eq=False)
class Morphism:
    """``images[a]`` is the subset of the target base assigned to source element ``a``."""

    source: FormalTopology
    target: FormalTopology
    images: tuple[Subset, ...]

    def __post_init__(self):
        if len(self.images) != self.source.n:
            raise ValueError("a morphism needs one image per source element")
        if any(img & ~self.target.base for img in self.images):
            raise ValueError("image outside the target base")

    @classmethod
    def from_names(cls, source: FormalTopology, target: FormalTopology,
                   mapping: Mapping[str, Sequence[str]]) -> "Morphism":
        images = [0] * source.n
        for a, img in mapping.items():
            images[source.index(a)] = target.subset(img)
        return cls(source, target, tuple(images))

    def image(self, u: Subset) -> Subset:
        """``f(U)``, the union of the images of the members of ``U``."""
        return bits.union_of(self.images[a] for a in bits.members(u))

    def lines(self) -> list[str]:
        return [f"{self.source.labels[a]} -> {self.target.fmt(img)}"
                for a, img in enumerate(self.images)]


def validate_morphism(f: Morphism) -> Verdict:
    s1, s2 = f.source, f.target
    if not s2.subsets_equal(f.image(s1.base), s2.base):
        return Verdict.failed("i", (s1.base,), "f(S1) is not the whole target")
    for a in range(s1.n):
        for b in range(a, s1.n):
            lhs = s2.wedge(f.images[a], f.images[b])
            rhs = f.image(s1.wedge(1 << a, 1 << b))
            if not s2.covers_set(lhs, rhs):
                return Verdict.failed(
                    "ii", (a, b),
                    f"f({s1.labels[a]}) wedge f({s1.labels[b]}) not covered by f of their wedge")
    for u in bits.all_subsets(s1.n):
        fu = s2.saturate(f.image(u))
        for a in bits.members(s1.saturate(u)):
            if not bits.is_subset(f.images[a], fu):
                return Verdict.failed(
                    "iii", (a, u), f"{s1.labels[a]} covered by {s1.fmt(u)} but f does not respect it")
    return Verdict.passed()


def identity_morphism(s: FormalTopology) -> Morphism:
    return Morphism(s, s, tuple(1 << a for a in range(s.n)))


def _check_same(s: FormalTopology, t: FormalTopology, what: str) -> None:
    if not same_cover(s, t):
        raise MismatchedSpacesError(what)


def compose(f: Morphism, g: Morphism) -> Morphism:
    """``g ∘ f``: apply ``f`` first. Requires ``f.target`` = ``g.source``."""
    _check_same(f.target, g.source, "target of the first morphism is not the source of the second")
    return Morphism(f.source, g.target, tuple(g.image(img) for img in f.images))


def morphisms_equal(f: Morphism, g: Morphism) -> bool:
    _check_same(f.source, g.source, "morphisms have different sources")
    _check_same(f.target, g.target, "morphisms have different targets")
    return all(f.target.subsets_equal(x, y) for x, y in zip(f.images, g.images))


# ------------------------------------------------------------------- points


def is_point(s: FormalTopology, alpha: Subset) -> bool:
    if alpha == 0:
        return False
    for a in bits.members(alpha):
        for b in bits.members(alpha):
            if not s.wedge(1 << a, 1 << b) & alpha:
                return False
    # axiom iii can only fail on some U disjoint from alpha
    outside = s.base & ~alpha
    return all(not s.saturate(u) & alpha for u in bits.submasks(outside))


def enumerate_points(s: FormalTopology, max_base: Optional[int] = None) -> list[Subset]:
    """Every formal point, in shortlex order."""
    check_cap(s.n, max_base)
    pts = [alpha for alpha in bits.all_subsets(s.n) if is_point(s, alpha)]
    return sorted(pts, key=bits.shortlex_key)


@dataclass(frozen=True)
class PositivityPredicate:
    pos: Subset


def check_positivity(s: FormalTopology, pos: Subset) -> Verdict:
    for u in bits.all_subsets(s.n):
        sat = s.saturate(u)
        for a in bits.members(sat & pos):
            if not u & pos:
                return Verdict.failed("monotonicity", (a, u))
        if not bits.is_subset(sat, s.saturate(u & pos)):
            a = next(bits.members(sat & ~s.saturate(u & pos)))
            return Verdict.failed("positivity", (a, u))
    return Verdict.passed()


def canonical_positivity(s: FormalTopology) -> tuple[PositivityPredicate, Verdict]:
    """``Pos(a)`` iff ``a`` is not covered by the empty set."""
    pos = s.base & ~s.saturate(0)
    return PositivityPredicate(pos), check_positivity(s, pos)


# --------------------------------------------------------------- isomorphism


def find_isomorphism(s1: FormalTopology, s2: FormalTopology
                     ) -> Optional[tuple[Morphism, Morphism]]:
    """Order isomorphism of frames, realised as a pair of morphisms.

    Each element ``a`` goes to the image of ``sat({a})``, which is the set
    of target elements whose saturation lies below that image.
    """
    f1, f2 = enumerate_frame(s1), enumerate_frame(s2)
    phi = find_order_isomorphism(f1.down, f2.down)
    if phi is None:
        return None
    inv = [0] * len(phi)
    for i, j in enumerate(phi):
        inv[j] = i

    def realise(src, frm, dst, to, mapping):
        images = []
        for a in range(src.n):
            target = to.elements[mapping[frm.position(src.singletons[a])]]
            images.append(bits.from_indices(b for b in range(dst.n)
                                            if bits.is_subset(dst.singletons[b], target)))
        return Morphism(src, dst, tuple(images))

    return realise(s1, f1, s2, f2, phi), realise(s2, f2, s1, f1, inv)


def morphisms_from(s1: FormalTopology, s2: FormalTopology,
                   max_base: Optional[int] = None) -> list[Morphism]:
    """All valid morphisms up to equality, one saturated representative each.

    Replacing every image by its saturation keeps validity and equality
    class, so tuples of frame elements are exactly the class representatives.
    """
    check_cap(s1.n, max_base)
    check_cap(s2.n, max_base)
    opens = enumerate_frame(s2).elements
    out = []
    for images in product(opens, repeat=s1.n):
        f = Morphism(s1, s2, tuple(images))
        if validate_morphism(f):
            out.append(f)
    return out
