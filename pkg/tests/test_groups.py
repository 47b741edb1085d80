import itertools

import pytest

from chromatic.errors import ClosureExceedsBound, ElementNotInGroup, UnknownSpec
from chromatic.groups import (
    Permutation,
    center,
    centralizer,
    closure,
    derived_subgroup,
    direct_product,
    find_embedding,
    fingerprint,
    greedy_generators,
    group_spec,
    is_homomorphism_images,
    is_isomorphic,
    is_monomorphism_images,
    monomorphism_classes,
    standard_group,
    subgroup_generated,
)


def test_permutations_compose_left_to_right():
    p = Permutation((1, 2, 0))
    q = Permutation((1, 0, 2))
    assert p * q == Permutation((0, 2, 1))
    assert (p * q)[0] == q[p[0]]
    assert p * p.inverse() == Permutation.identity(3)


def test_conjugate():
    p = Permutation.from_cycles([(0, 1)], 3)
    by = Permutation.from_cycles([(1, 2)], 3)
    assert p.conjugate(by) == by.inverse() * p * by
    assert p.conjugate(by) == Permutation.from_cycles([(0, 2)], 3)


@pytest.mark.parametrize(
    "spec, order, class_count",
    [
        ("C1", 1, 1),
        ("C6", 6, 6),
        ("S3", 6, 3),
        ("D8", 8, 5),
        ("Q8", 8, 5),
        ("A4", 12, 4),
        ("D12", 12, 6),
        ("S4", 24, 5),
        ("C2xC2xC2", 8, 8),
    ],
)
def test_standard_groups(spec, order, class_count):
    group = standard_group(spec)
    assert group.order == order
    assert len(group.conjugacy_classes) == class_count
    assert group.identity.is_identity()
    assert sum(group.conjugacy_classes.class_sizes) == order


def test_permutation_spec():
    group = standard_group("perm:(0 1 2),(0 1)")
    assert group.order == 6
    assert is_isomorphic(group, standard_group("S3"))


@pytest.mark.parametrize("spec", ["Z5", "C0", "D7", "perm:(0 a)", "S3x", ""])
def test_unknown_spec(spec):
    with pytest.raises(UnknownSpec):
        standard_group(spec)


def test_unknown_spec_is_a_value_error():
    with pytest.raises(ValueError):
        standard_group("GL2")


def test_element_not_in_group():
    group = standard_group("C3")
    with pytest.raises(ElementNotInGroup):
        group.index(Permutation.from_cycles([(0, 1)], 3))


def test_closure_bound(settings, monkeypatch):
    monkeypatch.setattr(settings, "max_order", 10)
    generators = [Permutation.from_cycles([(0, 1, 2, 3)], 4), Permutation.from_cycles([(0, 1)], 4)]
    with pytest.raises(ClosureExceedsBound):
        closure(generators)


def test_isomorphism():
    assert is_isomorphic(standard_group("C2xC3"), standard_group("C6"))
    assert is_isomorphic(standard_group("D6"), standard_group("S3"))
    assert not is_isomorphic(standard_group("D8"), standard_group("Q8"))
    assert not is_isomorphic(standard_group("C4"), standard_group("C2xC2"))
    assert fingerprint(standard_group("C2xC3")) == fingerprint(standard_group("C6"))


def test_subgroups():
    s4 = standard_group("S4")
    assert center(standard_group("D8")).order == 2
    assert center(standard_group("Q8")).order == 2
    assert center(s4).order == 1
    assert derived_subgroup(s4).order == 12
    assert derived_subgroup(standard_group("C6")).order == 1

    transposition = Permutation.from_cycles([(0, 1)], 4)
    assert centralizer(s4, [transposition]).order == 4
    assert subgroup_generated(s4, [transposition]).order == 2


def test_greedy_generators():
    assert len(greedy_generators(standard_group("C2xC2"))) == 2
    assert len(greedy_generators(standard_group("C6"))) == 1
    assert greedy_generators(standard_group("C1")) == ()


def test_direct_product():
    product = direct_product(standard_group("S3"), standard_group("C2"))
    assert product.order == 12
    assert is_isomorphic(product, standard_group("D12"))


def test_group_spec_rebuilds_an_isomorphic_group():
    for group in [standard_group("Q8"), centralizer(standard_group("S4"), [Permutation.from_cycles([(0, 1)], 4)])]:
        assert is_isomorphic(standard_group(group_spec(group)), group)


@pytest.mark.parametrize(
    "source, target, expected",
    [
        ("C1", "S3", 1),
        ("C2", "S3", 1),
        ("C3", "S3", 1),
        ("S3", "S3", 1),
        ("C2", "C2xC2", 3),
        ("C4", "Q8", 3),
        ("C2xC2", "D8", 6),
        ("C4", "C2xC2", 0),
        ("C5", "S4", 0),
    ],
)
def test_monomorphism_classes(source, target, expected):
    assert monomorphism_classes(standard_group(source), standard_group(target)) == expected


def test_find_embedding():
    assert find_embedding(standard_group("C5"), standard_group("S4")) is None
    images = find_embedding(standard_group("D8"), standard_group("S4"))
    assert images is not None
    assert len(images) == len(standard_group("D8").minimal_generators)


def test_conjugacy_classes_are_closed(small_corpus):
    for group in small_corpus:
        for members in group.conjugacy_classes.classes:
            for element, g in itertools.product(members, group.minimal_generators):
                assert element.conjugate(g) in members


def test_lagrange_and_centralizers_contain_the_center(small_corpus):
    for group in small_corpus:
        z = center(group)
        assert all(group.order % group.element_order(g) == 0 for g in group.elements)
        for representative in group.conjugacy_classes.representatives:
            members = set(centralizer(group, [representative]).elements)
            assert set(z.elements) <= members


def test_conjugacy_classes_match_brute_force(small_corpus):
    for group in small_corpus:
        expected = {frozenset(g.conjugate(h) for h in group.elements) for g in group.elements}
        assert {frozenset(members) for members in group.conjugacy_classes.classes} == expected
        for representative, size in zip(group.conjugacy_classes.representatives, group.conjugacy_classes.class_sizes):
            assert size * centralizer(group, [representative]).order == group.order


def test_homomorphism_images():
    c4 = standard_group("C4")
    (generator,) = c4.minimal_generators
    square = generator * generator
    assert is_homomorphism_images(c4, c4, [square])
    assert not is_monomorphism_images(c4, c4, [square])
    assert is_monomorphism_images(c4, c4, [generator])

    c2 = standard_group("C2")
    assert not is_homomorphism_images(c2, c4, [generator])
    assert is_homomorphism_images(c2, c4, [square])
    assert not is_homomorphism_images(c2, c4, [])


def test_isomorphism_is_reflexive_and_symmetric(small_corpus):
    groups = small_corpus + [standard_group("C2xC3"), standard_group("D6"), standard_group("perm:(0 1 2 3),(0 2)")]
    for group in groups:
        assert is_isomorphic(group, group)
    for first, second in itertools.product(groups, repeat=2):
        assert is_isomorphic(first, second) == is_isomorphic(second, first)


def test_trivial_group_embeds_once(small_corpus):
    trivial = standard_group("C1")
    for group in small_corpus:
        assert monomorphism_classes(trivial, group) == 1
