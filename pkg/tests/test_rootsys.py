from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from app.errors import InputError
from app.solver.rootsys import (
    Variant,
    build_root_system,
    cominuscule_weights,
    from_coefficients,
    highest_root,
    is_positive,
    minuscule_weights,
    pairing,
    parse_type,
    root_coefficients,
    root_system_from_spec,
    simple_reflection,
)


def test_parse_type_is_case_insensitive():
    assert parse_type("c4") == ("C", 4)
    assert parse_type(" E6 ") == ("E", 6)


@pytest.mark.parametrize("text", ["X3", "A", "", "5A", "A-1"])
def test_parse_type_rejects_garbage(text):
    with pytest.raises(InputError):
        parse_type(text)


@pytest.mark.parametrize("letter, rank", [("D", 3), ("E", 5), ("F", 3), ("G", 3), ("B", 1), ("Q", 2)])
def test_invalid_types(letter, rank):
    with pytest.raises(InputError):
        build_root_system(letter, rank)


@pytest.mark.parametrize(
    "spec, count",
    [("A1", 2), ("A5", 30), ("B4", 32), ("C4", 32), ("D5", 40), ("E6", 72), ("F4", 48), ("G2", 12)],
)
def test_root_counts(spec, count):
    rs = root_system_from_spec(spec)
    assert len(rs.roots) == count
    assert len(rs.positive_roots) == count // 2


def test_cartan_of_c4_is_not_symmetric(c4):
    # C4: alpha_3 = e3 - e4 short, alpha_4 = 2 e4 long
    assert c4.cartan[2][3] == -2
    assert c4.cartan[3][2] == -1
    assert c4.pairing_in(3, 4, Variant.MINUSCULE) == -2
    assert c4.pairing_in(3, 4, Variant.COMINUSCULE) == -1


def test_g2_cartan():
    g2 = build_root_system("G", 2)
    assert g2.cartan == ((2, -3), (-1, 2))


def test_pairing_diagonal_and_zero_vector(a5):
    alpha = a5.simple_root(1)
    assert pairing(a5, alpha, alpha) == 2
    with pytest.raises(InputError):
        pairing(a5, a5.zero, alpha)


def test_simple_reflection_negates_its_root(e6):
    for i in e6.indices:
        alpha = e6.simple_root(i)
        assert simple_reflection(e6, i, alpha) == tuple(-a for a in alpha)


def test_rho_is_regular_dominant(e6):
    for i in e6.indices:
        assert pairing(e6, e6.simple_root(i), e6.rho) == 1


def test_index_out_of_range(a5):
    with pytest.raises(InputError):
        a5.simple_root(6)
    with pytest.raises(InputError):
        a5.fundamental_weight(0)


@pytest.mark.parametrize("spec, coeffs", [("C4", (2, 2, 2, 1)), ("B4", (1, 2, 2, 2)), ("A3", (1, 1, 1))])
def test_highest_root(spec, coeffs):
    rs = root_system_from_spec(spec)
    assert root_coefficients(rs, highest_root(rs)) == tuple(Fraction(c) for c in coeffs)


@pytest.mark.parametrize(
    "spec, minuscule, cominuscule",
    [
        ("A5", {1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}),
        ("B3", {3}, {1}),
        ("C3", {1}, {3}),
        ("D4", {1, 3, 4}, {1, 3, 4}),
        ("E6", {1, 6}, {1, 6}),
        ("F4", set(), set()),
        ("G2", set(), set()),
    ],
)
def test_weight_tables(spec, minuscule, cominuscule):
    rs = root_system_from_spec(spec)
    assert minuscule_weights(rs) == minuscule
    assert cominuscule_weights(rs) == cominuscule


def test_coefficients_recover_the_vector():
    rs = build_root_system("D", 5)
    for beta in rs.positive_roots:
        assert from_coefficients(rs, root_coefficients(rs, beta)) == beta


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A4", "B3", "C3", "D4", "G2", "F4"]), st.data())
def test_reflections_permute_the_roots(spec, data):
    rs = root_system_from_spec(spec)
    beta = data.draw(st.sampled_from(sorted(rs.roots)))
    i = data.draw(st.sampled_from(list(rs.indices)))
    image = simple_reflection(rs, i, beta)
    assert image in rs.roots
    # s_i only flips the sign of alpha_i itself
    if beta != rs.simple_root(i) and is_positive(rs, beta):
        assert is_positive(rs, image)
