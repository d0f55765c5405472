"""Tests for the expansion group, its characters, and cochain checking."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from narrow2.errors import ArgumentError, IncompleteTableError
from narrow2.expansion import (
    AlgebraElement,
    CochainTable,
    GroupElement,
    act,
    central_element,
    check_cochain_recursion,
    project_characters,
    subset_masks,
    vector_character,
)


def _random_element(rng, n):
    return GroupElement(AlgebraElement(n, rng.randrange(1 << (1 << n))),
                        rng.randrange(1 << n))


@st.composite
def element_triples(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    mk = lambda: GroupElement(
        AlgebraElement(n, draw(st.integers(min_value=0, max_value=(1 << (1 << n)) - 1))),
        draw(st.integers(min_value=0, max_value=(1 << n) - 1)))
    return mk(), mk(), mk()


# ---------------------------------------------------------------- algebra

def test_subset_masks_size_lex_order():
    assert subset_masks(3) == [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]


def test_generators_square_to_zero():
    for n in range(1, 5):
        for i in range(n):
            t = AlgebraElement.monomial(n, 1 << i)
            assert (t * t).bits == 0


def test_algebra_one_is_identity_and_units_involute():
    rng = random.Random(1)
    for n in range(1, 5):
        one = AlgebraElement.one(n)
        for _ in range(20):
            a = AlgebraElement(n, rng.randrange(1 << (1 << n)))
            assert one * a == a
            u = rng.randrange(1 << n)
            assert act(n, u, act(n, u, a.bits)) == a.bits


@settings(max_examples=100)
@given(element_triples())
def test_algebra_multiplication_commutative_associative(triple):
    a, b, c = (g.alg for g in triple)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


def test_algebra_str():
    a = AlgebraElement(2, 0b1011)  # 1 + t1 + t1*t2
    assert str(a) == "1 + t1 + t1*t2"
    assert str(AlgebraElement.zero(2)) == "0"


# ---------------------------------------------------------------- group law

def test_vector_reflections_have_order_two():
    g = GroupElement(AlgebraElement.zero(1), 0b1)
    assert g * g == GroupElement.identity(1)


def test_algebra_part_is_two_torsion():
    g = GroupElement(AlgebraElement.monomial(1, 0b1), 0)
    assert g * g == GroupElement.identity(1)


def test_conjugation_fixes_t1_when_n_is_1():
    s = GroupElement(AlgebraElement.zero(1), 0b1)
    t = GroupElement(AlgebraElement.monomial(1, 0b1), 0)
    assert s * t * s.inverse() == t


@settings(max_examples=150)
@given(element_triples())
def test_group_axioms(triple):
    g, h, k = triple
    n = g.n
    e = GroupElement.identity(n)
    assert (g * h) * k == g * (h * k)
    assert g * e == g and e * g == g
    assert g * g.inverse() == e and g.inverse() * g == e


@settings(max_examples=100)
@given(element_triples())
def test_element_order_divides_group_exponent(triple):
    g = triple[0]
    p = g
    for _ in range((1 << (g.n + 1)) - 1):
        if p == GroupElement.identity(g.n):
            return
        p = p * g
    assert p == GroupElement.identity(g.n)


def test_central_element_values():
    assert central_element(1) == GroupElement(AlgebraElement.monomial(1, 0b1), 0)
    assert central_element(2) == GroupElement(AlgebraElement.monomial(2, 0b11), 0)
    with pytest.raises(ArgumentError):
        central_element(0)


def test_central_element_commutes_and_is_fixed():
    rng = random.Random(2)
    for n in range(1, 5):
        z = central_element(n)
        for _ in range(100):
            g = _random_element(rng, n)
            assert g * z == z * g
            assert act(n, g.vec, z.alg.bits) == z.alg.bits


def test_mismatched_index_sets_rejected():
    with pytest.raises(ArgumentError):
        GroupElement.identity(1) * GroupElement.identity(2)
    with pytest.raises(ArgumentError):
        AlgebraElement.one(1) * AlgebraElement.one(2)


# ---------------------------------------------------------------- characters

def test_project_characters_examples():
    pis, chi = project_characters(GroupElement(AlgebraElement.zero(1), 0b1))
    assert pis == (1,) and chi == 0
    pis, chi = project_characters(GroupElement(AlgebraElement.one(1), 0))
    assert pis == (0,) and chi == 1
    pis, chi = project_characters(GroupElement.identity(3))
    assert pis == (0, 0, 0) and chi == 0


@settings(max_examples=150)
@given(element_triples())
def test_project_characters_homomorphism(triple):
    g, h, _ = triple
    pg, cg = project_characters(g)
    ph, ch = project_characters(h)
    pgh, cgh = project_characters(g * h)
    assert pgh == tuple(x ^ y for x, y in zip(pg, ph))
    assert cgh == cg ^ ch


def test_vector_character_is_subset_test():
    g = GroupElement(AlgebraElement.zero(3), 0b101)
    assert vector_character(0b001, g) == 1
    assert vector_character(0b100, g) == 1
    assert vector_character(0b101, g) == 1
    assert vector_character(0b010, g) == 0
    assert vector_character(0b111, g) == 0


# ---------------------------------------------------------------- cochains

def test_tautological_table_satisfies_recursion():
    rng = random.Random(3)
    for n in range(1, 4):
        elements = [_random_element(rng, n) for _ in range(12)]
        table = CochainTable.tautological(n, elements)
        samples = [(rng.choice(elements), rng.choice(elements)) for _ in range(50)]
        assert check_cochain_recursion(table, vector_character, samples)


def test_phi_empty_is_homomorphism():
    # the S = empty case of the recursion has an empty right-hand side
    rng = random.Random(4)
    for n in range(1, 4):
        for _ in range(50):
            g, h = _random_element(rng, n), _random_element(rng, n)
            assert (g * h).alg.augmentation == g.alg.augmentation ^ h.alg.augmentation


def test_corrupted_table_fails_recursion():
    rng = random.Random(5)
    n = 2
    elements = [_random_element(rng, n) for _ in range(8)]
    table = CochainTable.tautological(n, elements)
    g, h = elements[0], elements[1]
    full = (1 << n) - 1
    table.phi[full][g * h] ^= 1
    assert not check_cochain_recursion(table, vector_character, [(g, h)])


def test_empty_sample_list_passes():
    table = CochainTable.tautological(1, [GroupElement.identity(1)])
    assert check_cochain_recursion(table, vector_character, [])


def test_missing_entry_raises():
    n = 1
    g = GroupElement(AlgebraElement.monomial(1, 0b1), 0b1)
    table = CochainTable(n, {0: {g: g.alg.augmentation}, 1: {g: 1}})
    with pytest.raises(IncompleteTableError):
        check_cochain_recursion(table, vector_character, [(g, g)])


def test_pointer_character_mismatch_rejected():
    g = GroupElement(AlgebraElement.one(1), 0)
    with pytest.raises(ArgumentError):
        CochainTable(1, {0: {g: 0}})
