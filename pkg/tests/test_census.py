import random

import pytest

from chromatic.burnside import chi_orb, class_of
from chromatic.census import (
    census_extended,
    census_naive,
    census_recursive,
    chi_kn_finite,
    is_p_power,
    p_power_elements,
)
from chromatic.errors import CensusTooLarge, NotPrime
from chromatic.groups import direct_product, standard_group
from chromatic.verify import standard_corpus


@pytest.mark.parametrize(
    "spec, p, n, expected",
    [
        ("S4", 2, 1, 4),
        ("S4", 3, 1, 2),
        ("D8", 2, 2, 22),
        ("C1", 2, 3, 1),
        ("C6", 2, 3, 8),
        ("C6", 3, 2, 9),
        ("S3", 2, 1, 2),
        ("S3", 3, 2, 5),
        ("Q8", 2, 1, 5),
    ],
)
def test_orbit_counts(spec, p, n, expected):
    group = standard_group(spec)
    assert census_naive(group, p, n).orbit_count == expected
    assert census_recursive(group, p, n) == expected


def test_height_zero_is_one():
    group = standard_group("S4")
    assert census_naive(group, 2, 0).orbit_count == 1
    assert census_recursive(group, 2, 0) == 1
    assert chi_kn_finite(group, 3, 0) == 1


def test_recursive_matches_naive(small_corpus):
    for group in small_corpus:
        for p in (2, 3, 5):
            for n in range(1, 4):
                assert census_recursive(group, p, n) == census_naive(group, p, n).orbit_count, (group, p, n)


def test_orbit_sizes_and_centralizers():
    result = census_naive(standard_group("D8"), 2, 2)
    for size, centralizer in zip(result.orbit_sizes, result.centralizers):
        assert size * centralizer.order == 8
    assert len(result.orbit_reps) == result.orbit_count
    assert result.tuple_count == sum(result.orbit_sizes)


def test_orbit_representatives_are_commuting_p_power_tuples():
    group = standard_group("S4")
    for rep in census_naive(group, 2, 2).orbit_reps:
        a, b = rep
        assert a.commutes_with(b)
        assert is_p_power(group.element_order(a), 2)
        assert is_p_power(group.element_order(b), 2)


def test_class_equation(small_corpus):
    for group in small_corpus:
        for p, n in [(2, 1), (2, 2), (3, 1)]:
            extended = census_extended(group, p, n)
            assert extended.tuple_count == group.order * census_naive(group, p, n).orbit_count


def test_p_power_elements():
    group = standard_group("S4")
    assert len(p_power_elements(group, 2)) == 16
    assert len(p_power_elements(group, 3)) == 9
    assert p_power_elements(group, 5) == [group.identity]
    assert is_p_power(1, 7)
    assert is_p_power(8, 2)
    assert not is_p_power(6, 2)


def test_not_prime():
    with pytest.raises(NotPrime):
        census_recursive(standard_group("C4"), 4, 1)
    with pytest.raises(NotPrime):
        census_naive(standard_group("C4"), 1, 1)


def test_negative_arity():
    with pytest.raises(ValueError):
        census_recursive(standard_group("C4"), 2, -1)


def test_census_cap(settings, monkeypatch):
    monkeypatch.setattr(settings, "census_cap", 100)
    with pytest.raises(CensusTooLarge):
        census_naive(standard_group("D8"), 2, 3)
    assert census_recursive(standard_group("D8"), 2, 3) == 92


def test_threads_do_not_change_counts(settings, monkeypatch):
    group = standard_group("S4")
    expected = census_recursive(group, 2, 3)
    monkeypatch.setattr(settings, "threads", 4)
    assert census_recursive(group, 2, 3) == expected


def test_counts_grow_with_height_and_multiply_over_products():
    d8, s3 = standard_group("D8"), standard_group("S3")
    counts = [census_recursive(d8, 2, n) for n in range(4)]
    assert counts == sorted(counts)
    product = standard_group("D8xS3")
    for n in range(1, 3):
        assert census_recursive(product, 2, n) == census_recursive(d8, 2, n) * census_recursive(s3, 2, n)


def test_products_of_corpus_groups_multiply(settings):
    rng = random.Random(settings.verify_seed)
    corpus = standard_corpus()
    for _ in range(50):
        left, right = rng.choice(corpus), rng.choice(corpus)
        product = direct_product(left, right)
        assert chi_orb(class_of(product)) == chi_orb(class_of(left)) * chi_orb(class_of(right))
        for p, n in [(2, 1), (2, 2), (3, 1)]:
            expected = census_recursive(left, p, n) * census_recursive(right, p, n)
            assert census_recursive(product, p, n) == expected, (left, right, p, n)
