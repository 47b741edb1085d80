from fractions import Fraction

import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from chromatic import burnside
from chromatic.burnside import (
    chi_kn,
    chi_orb,
    chi_q,
    class_of,
    dump_class,
    load_class,
    loop,
    p_shift,
    parse_class_expression,
    phi_k,
    registry,
    unit_class,
    zero_class,
)
from chromatic.errors import NotPrime, UnknownSpec
from chromatic.groups import standard_group

POOL = ["C1", "C2", "C3", "C4", "C2xC2", "S3"]


@st.composite
def classes(draw) -> burnside.BurnsideClass:
    x = zero_class()
    for spec in draw(st.lists(st.sampled_from(POOL), min_size=0, max_size=3)):
        x = x + draw(st.integers(min_value=-3, max_value=3)) * class_of(standard_group(spec))
    return x


def test_isomorphic_groups_share_a_basis_class():
    assert class_of(standard_group("C6")) == class_of(standard_group("C2xC3"))
    assert class_of(standard_group("D6")) == class_of(standard_group("S3"))
    assert class_of(standard_group("D8")) != class_of(standard_group("Q8"))
    before = len(registry)
    class_of(standard_group("C3xC2"))
    assert len(registry) == before


def test_zero_and_unit():
    assert not zero_class()
    assert str(zero_class()) == "0"
    assert unit_class() == class_of(standard_group("C1"))
    x = class_of(standard_group("S3"))
    assert x - x == zero_class()
    assert burnside.add(x, burnside.negate(x)) == zero_class()
    assert burnside.scalar_multiply(x, 0) == zero_class()


def test_parse_class_expression():
    x = parse_class_expression("D8 + D8 - C4")
    assert x == 2 * class_of(standard_group("D8")) - class_of(standard_group("C4"))
    assert parse_class_expression("2*C2 − C4") == 2 * class_of(standard_group("C2")) - class_of(standard_group("C4"))
    assert parse_class_expression("-C2 + C2") == zero_class()
    assert parse_class_expression("0") == zero_class()


@pytest.mark.parametrize("text", ["C2 +", "C2 C3", "Z7", "+", "C2 - - "])
def test_parse_class_expression_errors(text):
    with pytest.raises(UnknownSpec):
        parse_class_expression(text)


def test_characters_of_basis_classes():
    s3 = class_of(standard_group("S3"))
    assert chi_orb(s3) == Fraction(1, 6)
    assert chi_q(s3) == 1
    assert chi_kn(s3, 3, 1) == 2
    assert chi_kn(s3, 2, 2) == 4


def test_dihedral_pushout():
    assert chi_kn(parse_class_expression("D8 + D8 - C4"), 2, 1) == 6


def test_multiply():
    assert class_of(standard_group("C2")) * class_of(standard_group("C3")) == class_of(standard_group("C6"))
    assert unit_class() * class_of(standard_group("S3")) == class_of(standard_group("S3"))
    assert burnside.multiply(zero_class(), class_of(standard_group("C2"))) == zero_class()


def test_phi_k():
    s3 = class_of(standard_group("S3"))
    assert phi_k(s3, standard_group("C2")) == 1
    assert phi_k(s3, standard_group("C3")) == 1
    assert phi_k(s3, standard_group("C4")) == 0
    assert phi_k(2 * s3 - class_of(standard_group("C2")), standard_group("C2")) == 1


def test_loop():
    c2 = class_of(standard_group("C2"))
    assert loop(c2) == 2 * c2
    s3 = standard_group("S3")
    assert loop(class_of(s3)) == class_of(s3) + c2 + class_of(standard_group("C3"))


def test_p_shift():
    s3 = class_of(standard_group("S3"))
    assert p_shift(s3, 3, 0) == s3
    assert p_shift(s3, 3, 1) == s3 + class_of(standard_group("C3"))
    assert p_shift(s3, 2, 1) == s3 + class_of(standard_group("C2"))
    with pytest.raises(ValueError):
        p_shift(s3, 3, -1)
    with pytest.raises(NotPrime):
        p_shift(s3, 6, 1)


def test_shift_raises_height():
    d8 = class_of(standard_group("D8"))
    for n in range(3):
        for m in range(3 - n):
            assert chi_kn(p_shift(d8, 2, n), 2, m) == chi_kn(d8, 2, m + n)


def test_json_form():
    x = parse_class_expression("2*S3 - C4")
    assert load_class(dump_class(x)) == x
    assert {term.coefficient for term in burnside.class_terms(x)} == {2, -1}


@hypothesis_settings(max_examples=30, deadline=None)
@given(x=classes(), y=classes(), z=classes())
def test_ring_laws(x, y, z):
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert (x + y) + z == x + (y + z)


@hypothesis_settings(max_examples=30, deadline=None)
@given(x=classes(), y=classes())
def test_characters_are_ring_homomorphisms(x, y):
    assert chi_orb(x * y) == chi_orb(x) * chi_orb(y)
    assert chi_q(x * y) == chi_q(x) * chi_q(y)
    assert chi_kn(x * y, 2, 1) == chi_kn(x, 2, 1) * chi_kn(y, 2, 1)
    assert chi_kn(x + y, 3, 2) == chi_kn(x, 3, 2) + chi_kn(y, 3, 2)


@hypothesis_settings(max_examples=20, deadline=None)
@given(x=classes(), y=classes())
def test_loop_is_multiplicative(x, y):
    assert loop(x * y) == loop(x) * loop(y)
    assert chi_orb(loop(x)) == chi_q(x)
