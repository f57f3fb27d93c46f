from itertools import permutations, product

import pytest
from hypothesis import given, settings

import oracles
from corpus import ANTI2, CH2, CH3, CH4, NDM5, build_corpus, covers_of
from strategies import axiom_spaces
from ftw import (MismatchedSpacesError, Morphism, SizeCapError, canonical_positivity,
                 closed_subspace, compose, dm_cover, double_negation_space,
                 enumerate_points, find_isomorphism, identity_morphism, is_point, morphisms_equal,
                 morphisms_from, one_point_space, point_set_cover, validate_morphism)
from ftw import bits

CORPUS_NAMES = sorted(build_corpus())


@pytest.fixture
def sdm():
    return dm_cover(CH2)


@pytest.fixture
def dn():
    return double_negation_space()


def chain_pair(sdm, dn):
    f = Morphism.from_names(sdm, dn, {"0": [], "1": ["⊤"]})
    g = Morphism.from_names(dn, sdm, {"⊤": ["1"]})
    return f, g


def _names(space, f):
    return {space_label: frozenset(f.target.names(img))
            for space_label, img in zip(space.labels, f.images)}


def _oracle_ok(f):
    s1, s2 = f.source, f.target
    return oracles.morphism_ok(s1.labels, covers_of(s1), s2.labels, covers_of(s2), _names(s1, f))


# ------------------------------------------------------------- validation


def test_two_chain_maps_are_morphisms(sdm, dn):
    f, g = chain_pair(sdm, dn)
    assert validate_morphism(f)
    assert validate_morphism(g)
    assert _oracle_ok(f) and _oracle_ok(g)


def test_two_chain_maps_compose_to_identities(sdm, dn):
    f, g = chain_pair(sdm, dn)
    assert morphisms_equal(compose(f, g), identity_morphism(sdm))
    assert morphisms_equal(compose(g, f), identity_morphism(dn))


def test_collapsing_map_fails_axiom_one(sdm, dn):
    bad = Morphism.from_names(sdm, dn, {"0": [], "1": []})
    v = validate_morphism(bad)
    assert not v and v.law == "i"


def test_axiom_three_witness(dn):
    # ⊤ ◁ {⊤} in dn, but the target has 1 not covered by {0}
    d3 = dm_cover(CH3)
    bad = Morphism.from_names(d3, dm_cover(CH3), {"0": ["0"], "h": ["1"], "1": ["h"]})
    v = validate_morphism(bad)
    assert not v and v.law == "iii"
    a, u = v.witness
    assert d3.covers(a, u)
    assert not d3.covers_set(bad.images[a], bad.image(u))


def test_axiom_two_witness():
    # the two atoms of the discrete space meet in nothing, but both go to the top
    disc = dm_cover(ANTI2)
    sier = dm_cover(CH2)
    bad = Morphism.from_names(disc, sier, {"a": ["1"], "b": ["1"]})
    v = validate_morphism(bad)
    assert not v and v.law == "ii" and v.witness == (0, 1)
    assert not _oracle_ok(bad)


def test_morphism_shape_errors(sdm, dn):
    with pytest.raises(ValueError):
        Morphism(sdm, dn, (0,))
    with pytest.raises(ValueError):
        Morphism(sdm, dn, (0, 0b10))


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_identity_is_valid(name):
    s = build_corpus()[name]
    assert validate_morphism(identity_morphism(s))


def test_compose_checks_spaces(sdm, dn):
    f, _ = chain_pair(sdm, dn)
    with pytest.raises(MismatchedSpacesError):
        compose(f, f)
    with pytest.raises(MismatchedSpacesError):
        morphisms_equal(f, identity_morphism(sdm))


def test_morphisms_equal_examples(sdm, dn):
    f, _ = chain_pair(sdm, dn)
    assert morphisms_equal(f, f)
    zero = Morphism.from_names(sdm, sdm, {"0": ["0"], "1": ["0"]})
    empty = Morphism.from_names(sdm, sdm, {"0": [], "1": []})
    assert morphisms_equal(zero, empty)
    collapsed = Morphism.from_names(sdm, dn, {"0": [], "1": []})
    assert not morphisms_equal(f, collapsed)


def test_constant_top_composition():
    checked = 0
    for name, s in build_corpus().items():
        const = Morphism(s, s, tuple(s.base for _ in range(s.n)))
        if not validate_morphism(const):
            continue
        for t in (dm_cover(CH3), double_negation_space()):
            for f in morphisms_from(s, t):
                h = compose(const, f)
                assert all(t.subsets_equal(img, t.base) for img in h.images), name
                checked += 1
    assert checked > 10


# small enough for every morphism in every hom-set
SMALL = ["dm_CH2", "dm_CH3", "dm_ANTI2", "double_negation", "one_point", "ps_SIERPINSKI",
         "closed_CH3_h", "trivial", "ax_CH3_1h"]


def test_category_laws_on_small_corpus():
    c = build_corpus()
    spaces = [c[k] for k in SMALL]
    homs = {(i, j): morphisms_from(s, t) for i, s in enumerate(spaces) for j, t in enumerate(spaces)}
    for (i, j), fs in homs.items():
        for f in fs:
            assert morphisms_equal(compose(identity_morphism(spaces[i]), f), f)
            assert morphisms_equal(compose(f, identity_morphism(spaces[j])), f)
    for i, j, k, l in product(range(0, len(spaces), 2), repeat=4):
        for f in homs[i, j][:2]:
            for g in homs[j, k][:2]:
                for h in homs[k, l][:2]:
                    fg = compose(f, g)
                    gh = compose(g, h)
                    assert validate_morphism(fg)
                    assert morphisms_equal(compose(fg, h), compose(f, gh))


@pytest.mark.parametrize("src, dst", [(a, b) for a in SMALL[:6] for b in SMALL[:6]])
def test_validator_matches_oracle_on_all_maps(src, dst):
    """Singleton-localized axiom ii agrees with the quantification over all pairs of subsets."""
    c = build_corpus()
    s1, s2 = c[src], c[dst]
    for images in product(bits.all_subsets(s2.n), repeat=s1.n):
        f = Morphism(s1, s2, images)
        assert bool(validate_morphism(f)) == _oracle_ok(f)


# ----------------------------------------------------------------- points


def test_points_of_dm3():
    s = dm_cover(CH3)
    assert enumerate_points(s) == [s.subset(["1"]), s.subset(["h", "1"])]


def test_points_of_double_negation(dn):
    assert enumerate_points(dn) == [1]


def test_points_of_antichain():
    s = dm_cover(ANTI2)
    assert enumerate_points(s) == [0b01, 0b10]
    assert not is_point(s, 0b11)


def test_points_of_ndm5():
    s = point_set_cover(NDM5)
    # the three classical points, each as its neighbourhood filter
    assert [set(s.names(p)) for p in enumerate_points(s)] == [
        {"bX"}, {"bx", "bxy", "bX"}, {"by", "bxy", "bX"}]


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_points_match_oracle_and_avoid_empty_cover(name):
    s = build_corpus()[name]
    pts = enumerate_points(s)
    assert {frozenset(s.names(p)) for p in pts} == oracles.points(s.labels, covers_of(s))
    for p in pts:
        assert not p & s.saturate(0)


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_points_biject_with_morphisms_to_one_point(name):
    s = build_corpus()[name]
    one = one_point_space()
    classes = morphisms_from(s, one)
    assert len(classes) == len(enumerate_points(s))
    # a point is the set of elements sent to {⊤}
    alphas = sorted(bits.from_indices(a for a in range(s.n) if f.images[a]) for f in classes)
    assert alphas == sorted(enumerate_points(s))


def test_points_size_cap():
    s = dm_cover(CH3)
    with pytest.raises(SizeCapError):
        enumerate_points(s, max_base=2)


# ------------------------------------------------------------- positivity


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_canonical_positivity_valid(name):
    s = build_corpus()[name]
    pred, verdict = canonical_positivity(s)
    assert verdict
    assert pred.pos == s.base & ~s.saturate(0)


def test_positivity_examples(dn):
    d3 = dm_cover(CH3)
    assert canonical_positivity(d3)[0].pos == d3.subset(["h", "1"])
    trivial = closed_subspace(d3, d3.base)
    pred, v = canonical_positivity(trivial)
    assert pred.pos == 0 and v
    assert canonical_positivity(dn)[0].pos == 1


def test_positivity_failure_witness():
    from ftw.maps import check_positivity
    d3 = dm_cover(CH3)
    # dropping 1 from the predicate breaks monotonicity at h ◁ {1}
    v = check_positivity(d3, d3.subset(["h"]))
    assert not v and v.law == "monotonicity"
    # nothing positive: h ◁ {h} cannot be cut down to h ◁ ∅
    v = check_positivity(d3, 0)
    assert not v and v.law == "positivity" and v.witness == (d3.index("h"), d3.subset(["h"]))


# ------------------------------------------------------------ isomorphism


def test_two_chain_isomorphism(sdm, dn):
    pair = find_isomorphism(sdm, dn)
    assert pair is not None
    f, g = pair
    assert validate_morphism(f) and validate_morphism(g)
    assert morphisms_equal(compose(f, g), identity_morphism(sdm))
    assert morphisms_equal(compose(g, f), identity_morphism(dn))


def test_no_isomorphism_on_size(dn):
    assert find_isomorphism(dm_cover(CH3), dn) is None


def test_no_isomorphism_same_size():
    # Boolean square against the 4-chain
    assert find_isomorphism(dm_cover(ANTI2), dm_cover(CH4)) is None


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_self_isomorphism(name):
    s = build_corpus()[name]
    f, g = find_isomorphism(s, s)
    assert morphisms_equal(f, identity_morphism(s))
    assert morphisms_equal(g, identity_morphism(s))


def _frames_isomorphic(s1, s2):
    o1 = sorted(oracles.frame(s1.labels, covers_of(s1)), key=len)
    o2 = sorted(oracles.frame(s2.labels, covers_of(s2)), key=len)
    if len(o1) != len(o2):
        return False
    if len(o1) > 7:
        return None  # too many permutations to try
    return any(all((x <= y) == (o2[p[i]] <= o2[p[j]])
                   for i, x in enumerate(o1) for j, y in enumerate(o1))
               for p in permutations(range(len(o1))))


@given(axiom_spaces(4), axiom_spaces(4))
@settings(max_examples=60, deadline=None)
def test_isomorphism_pairs_are_inverse(s1, s2):
    pair = find_isomorphism(s1, s2)
    expected = _frames_isomorphic(s1, s2)
    if expected is not None:
        assert (pair is not None) == expected
    if pair is None:
        return
    f, g = pair
    assert validate_morphism(f) and validate_morphism(g)
    assert morphisms_equal(compose(f, g), identity_morphism(s1))
    assert morphisms_equal(compose(g, f), identity_morphism(s2))


# --------------------------------------------------------- hom enumeration


def _brute_force_classes(s1, s2):
    classes = []
    for images in product(bits.all_subsets(s2.n), repeat=s1.n):
        f = Morphism(s1, s2, images)
        if not _oracle_ok(f):
            continue
        key = tuple(s2.saturate(x) for x in images)
        if key not in classes:
            classes.append(key)
    return sorted(classes)


def test_unique_morphism_from_double_negation(dn, sdm):
    assert len(morphisms_from(dn, sdm)) == 1


def test_morphisms_from_double_negation_to_dm3(dn):
    d3 = dm_cover(CH3)
    found = morphisms_from(dn, d3)
    assert len(found) <= 1
    assert len(found) == len(_brute_force_classes(dn, d3))


@pytest.mark.parametrize("src, dst", [(a, b) for a in SMALL[:5] for b in SMALL[:5]])
def test_morphisms_from_matches_brute_force(src, dst):
    c = build_corpus()
    s1, s2 = c[src], c[dst]
    found = morphisms_from(s1, s2)
    assert sorted(f.images for f in found) == _brute_force_classes(s1, s2)
    for f in found:
        assert all(s2.saturate(x) == x for x in f.images)


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_identity_class_is_enumerated(name):
    s = build_corpus()[name]
    if s.n > 4:
        return
    ident = identity_morphism(s)
    assert any(morphisms_equal(f, ident) for f in morphisms_from(s, s))
