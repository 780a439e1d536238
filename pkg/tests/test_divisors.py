from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from app.errors import InputError
from app.solver.decomp import decompose, enumerate_decompositions
from app.solver.divisors import (
    Basis,
    ConeDescription,
    DivisorClass,
    MdsCoverReport,
    cones_separated,
    distinct_cones,
    effective_cone,
    gamma_pairings,
    gamma_roots,
    lambda_coeffs,
    line_bundle_xi,
    nef_cone,
    peel,
    pushforward_to_dhat,
    verify_mds_cover,
)
from app.solver.quiver import build_quiver
from app.solver.rootsys import Variant, build_root_system, root_coefficients
from app.solver.weyl import enumerate_minuscule

F = Fraction


def coords(d):
    return tuple(d.coords)


def test_gamma_roots_of_a5(a5):
    gammas = gamma_roots(a5, (3, 1, 2, 5, 4, 3))
    assert root_coefficients(a5, gammas[0]) == (0, 0, 1, 0, 0)
    assert root_coefficients(a5, gammas[5]) == (1, 1, 1, 1, 1)


def test_gamma_pairings_small_cases():
    a2 = build_root_system("A", 2)
    c2 = build_root_system("C", 2)
    assert gamma_pairings(a2, (1, 2))[0][1] == 1
    assert gamma_pairings(c2, (1, 2))[0][1] == 2
    matrix = gamma_pairings(a2, (1, 2))
    assert all(matrix[i][i] == 2 for i in range(2))


def test_gamma_pairings_vanish_in_the_a5_example(a5):
    # <gamma_1^v, gamma_6> = <alpha_3^v, alpha_1 + ... + alpha_5> = 0
    matrix = gamma_pairings(a5, (3, 1, 2, 5, 4, 3), require_nonnegative=True)
    assert matrix[0][5] == 0


def test_lambda_coefficients():
    a2 = build_root_system("A", 2)
    c2 = build_root_system("C", 2)
    assert lambda_coeffs(a2, (1, 2), 2) == {1: 1, 2: 1}
    assert lambda_coeffs(c2, (1, 2), 2) == {1: 2, 2: 1}
    assert lambda_coeffs(a2, (1, 2), 1) == {1: 1}
    with pytest.raises(InputError):
        lambda_coeffs(a2, (1, 2), 3)
    with pytest.raises(InputError):
        lambda_coeffs(a2, (1, 1), 1)


def test_line_bundles_in_the_xi_basis():
    a2 = build_root_system("A", 2)
    c2 = build_root_system("C", 2)
    assert line_bundle_xi(a2, (1, 2), 2) == DivisorClass.of(Basis.XI, (1, 2), [1, 1])
    assert line_bundle_xi(c2, (1, 2), 2) == DivisorClass.of(Basis.XI, (1, 2), [2, 1])
    assert line_bundle_xi(a2, (1, 2), 1) == DivisorClass.of(Basis.XI, (1, 2), [1, 0])


def test_pushforward_restricts_the_line_bundle(a5_quiver):
    q = a5_quiver
    bundle = line_bundle_xi(q.rs, q.word, 5)
    assert bundle.coords == (1, 0, 0, 1, 1, 0)
    assert pushforward_to_dhat(q.rs, q.word, q, 5).coords == (bundle.coordinate(1), bundle.coordinate(2), bundle.coordinate(4))


def test_pushforwards_of_a5(a5_quiver):
    q = a5_quiver
    pf = {i: coords(pushforward_to_dhat(q.rs, q.word, q, i)) for i in (1, 2, 3, 5, 6)}
    assert pf[1] == (1, 0, 0)
    assert pf[2] == (0, 1, 0)
    assert pf[3] == (1, 1, 0)
    assert pf[5] == (1, 0, 1)
    assert pf[6] == (1, 1, 1)


def test_pushforwards_of_c4(c4_quiver):
    q = c4_quiver
    assert coords(pushforward_to_dhat(q.rs, q.word, q, 2)) == (2, 0)
    assert coords(pushforward_to_dhat(q.rs, q.word, q, 3)) == (0, 1)
    assert coords(pushforward_to_dhat(q.rs, q.word, q, 6)) == (2, 2)


def test_nef_cones_of_a5(a5_quiver):
    cone = nef_cone(decompose(a5_quiver, (1, 2, 4)))
    assert [coords(g) for g in cone.generators] == [(1, 0, 0), (1, 1, 0), (1, 1, 1)]
    cone = nef_cone(decompose(a5_quiver, (2, 1, 4)))
    assert [coords(g) for g in cone.generators] == [(0, 1, 0), (1, 1, 0), (1, 1, 1)]


def test_a5_nef_cones_form_five_chambers(a5_quiver):
    by_ordering = {
        d.ordering: frozenset(coords(g) for g in nef_cone(d).generators)
        for d in enumerate_decompositions(a5_quiver)
    }
    # no vertex pushes forward to (0,1,1): the orderings ending in peak 1 share one chamber
    assert by_ordering[(2, 4, 1)] == by_ordering[(4, 2, 1)] == {(0, 1, 0), (0, 0, 1), (1, 1, 1)}
    assert set(by_ordering.values()) == {
        frozenset({(1, 0, 0), (1, 1, 0), (1, 1, 1)}),
        frozenset({(1, 0, 0), (1, 0, 1), (1, 1, 1)}),
        frozenset({(0, 1, 0), (1, 1, 0), (1, 1, 1)}),
        frozenset({(0, 0, 1), (1, 0, 1), (1, 1, 1)}),
        frozenset({(0, 1, 0), (0, 0, 1), (1, 1, 1)}),
    }
    cones = [nef_cone(d) for d in enumerate_decompositions(a5_quiver)]
    assert len(distinct_cones(cones)) == 5


def test_effective_cone(c4_quiver):
    cone = effective_cone(c4_quiver)
    assert cone.peaks == (1, 3)
    assert [coords(g) for g in cone.generators] == [(1, 0), (0, 1)]


def test_cone_membership(c4_quiver):
    cone = nef_cone(decompose(c4_quiver, (1, 3)))
    inside = DivisorClass.of(Basis.DHAT, (1, 3), [F(3), F(1)])
    outside = DivisorClass.of(Basis.DHAT, (1, 3), [F(1), F(3)])
    assert cone.contains(inside)
    assert not cone.contains(outside)
    assert cone.facet_normals() == [(F(1, 2), F(-1, 2)), (F(0), F(1, 2))]


def test_divisor_class_arithmetic():
    a = DivisorClass.of(Basis.DHAT, (1, 3), [1, 2])
    b = DivisorClass.of(Basis.DHAT, (1, 3), [F(1, 2), 2])
    assert coords(a - b) == (F(1, 2), F(0))
    assert coords(a + b.scaled(2)) == (F(2), F(6))
    assert not (b - a).is_effective()
    with pytest.raises(InputError):
        a + DivisorClass.of(Basis.XI, (1, 3), [1, 1])


@pytest.mark.parametrize(
    "divisor, steps, ordering",
    [
        ((2, 1, 1), [(6, 1), (1, 1)], (1, 2, 4)),
        ((1, 0, 0), [(1, 1)], (1, 2, 4)),
        ((1, 2, 0), [(3, 1), (2, 1)], (2, 1, 4)),
        ((1, 1, 0), [(3, 1)], (1, 2, 4)),
        ((0, 0, 0), [], (1, 2, 4)),
    ],
)
def test_peel_traces_in_a5(a5_quiver, divisor, steps, ordering):
    trace = peel(a5_quiver, divisor)
    assert [(v, F(mu)) for v, mu in trace.steps] == [(v, F(mu)) for v, mu in steps]
    assert trace.ordering == ordering


def test_peel_in_c4(c4_quiver):
    trace = peel(c4_quiver, (1, 1))
    assert trace.steps == ((6, F(1, 2)),)
    assert trace.ordering == (1, 3)
    assert peel(c4_quiver, (0, 1)).ordering == (3, 1)


def test_peel_rejects_bad_input(a5_quiver):
    with pytest.raises(InputError):
        peel(a5_quiver, (1, -1, 0))
    with pytest.raises(InputError):
        peel(a5_quiver, (1, 1))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=0, max_value=20, max_denominator=12), min_size=3, max_size=3))
def test_peel_reproduces_the_class(values):
    a5_quiver = build_quiver(build_root_system("A", 5), (3, 1, 2, 5, 4, 3), 3, Variant.MINUSCULE)
    trace = peel(a5_quiver, values)
    d = decompose(a5_quiver, trace.ordering)
    total = [F(0)] * 3
    for v, mu in trace.steps:
        assert mu >= 0
        assert v in d.minimal_vertices
        for k, c in enumerate(pushforward_to_dhat(a5_quiver.rs, a5_quiver.word, a5_quiver, v).coords):
            total[k] += mu * c
    assert total == [F(x) for x in values]


def test_mds_cover_of_a5(a5_quiver):
    report = verify_mds_cover(a5_quiver, samples=1000, seed=7)
    assert report.cones == 6
    assert report.chambers == 5
    assert report.points_checked >= 1000
    assert report.uncovered == []
    assert report.exact_cover is True
    assert report.interiors_disjoint is True
    assert report.ok


def test_mds_cover_of_c4(c4_quiver):
    report = verify_mds_cover(c4_quiver, samples=200)
    assert report.cones == report.chambers == 2
    assert report.exact_cover is True
    assert report.interiors_disjoint is True
    assert report.ok


@pytest.mark.parametrize(
    "spec, weight, variant",
    [
        ("A5", 3, Variant.MINUSCULE),
        ("C4", 4, Variant.COMINUSCULE),
        ("B4", 1, Variant.COMINUSCULE),
        ("D5", 5, Variant.MINUSCULE),
        ("E6", 1, Variant.MINUSCULE),
    ],
)
def test_positivity(spec, weight, variant):
    rs = build_root_system(spec[0], int(spec[1:]))
    for element in enumerate_minuscule(rs, weight, variant):
        q = build_quiver(rs, element.word, weight, variant)
        gamma_pairings(rs, q.word, require_nonnegative=True)
        for i in q.vertices:
            assert all(c >= 0 for c in lambda_coeffs(rs, q.word, i).values())


def _cone(*generators):
    labels = (1, 2, 4)
    return ConeDescription(Basis.DHAT, labels, tuple(DivisorClass.of(Basis.DHAT, labels, g) for g in generators))


def test_cone_separation():
    first = _cone((1, 0, 0), (1, 1, 0), (1, 1, 1))
    neighbour = _cone((0, 1, 0), (1, 1, 0), (1, 1, 1))
    opposite = _cone((0, 1, 0), (0, 0, 1), (1, 1, 1))
    inside = _cone((2, 1, 0), (1, 1, 0), (1, 1, 1))
    assert cones_separated(first, neighbour)
    assert cones_separated(first, opposite)
    assert not cones_separated(first, inside)
    assert not cones_separated(first, first)


def test_cover_report_names_the_failed_check():
    report = MdsCoverReport(peaks=(1, 2, 4), cones=6, chambers=6, exact_cover=False, interiors_disjoint=False)
    assert not report.ok
    assert report.failed_checks() == ["overlapping nef cones", "chamber volumes do not fill the orthant"]
    report = MdsCoverReport(peaks=(1, 3), cones=2, uncovered=[("1/1", "0/1")])
    assert report.failed_checks() == ["1 uncovered points, first ['1/1', '0/1']"]
    assert MdsCoverReport(peaks=(1, 3), cones=2, exact_cover=True, interiors_disjoint=True).ok
