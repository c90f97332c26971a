from fractions import Fraction

import pytest

from dupontkit.complexes import Cochain, standard_complex
from dupontkit.compat import (CubeStarRetraction, StarChart, StarRetraction, _chi, defect_lhs, defect_rhs,
                              primed_whitney_check, rearranged_corrected, rearranged_first, rearranged_printed,
                              restrict_to_star, verify_compat, verify_cubical_compat)
from dupontkit.cube_dupont import CubeForm, random_cube_form
from dupontkit.dupont import dupont_s
from dupontkit.simplex_forms import SimplexForm, pullback_affine, random_form, vertex_point, whitney_form

t = SimplexForm.t
dt = SimplexForm.dt
I01 = (0, 1)


def test_chart_inverse_substitution():
    chart = StarChart(2, (0, 1, 2), 0)
    assert chart.cell == ("*", 1, 2)
    # t_0 = t'_⋆ / 3 on the piece that drops vertex 0
    assert chart.inverse()[0] == t(2, 0) * Fraction(1, 3)


@pytest.mark.parametrize("n,I", [(2, (0, 1, 2)), (2, (0, 1)), (3, (1, 3))])
def test_chart_forward_after_inverse_is_identity(n, I):
    for m in range(len(I)):
        chart = StarChart(n, I, m)
        fwd = chart.forward()
        for pos, v in enumerate(chart.cell):
            assert pullback_affine(chart.points(), fwd[v]) == t(n, pos)
        for v in chart.cell:
            assert chart.contains(chart.point(v))


def test_restrict_constant_and_interval_differential():
    assert all(p == 1 for p in restrict_to_star(SimplexForm.const(2), 2, (0, 1)).pieces.values())
    r = restrict_to_star(dt(1, 1), 1, I01)
    # dt lives on [0, 1/2] and [1/2, 1]: each piece coordinate t'_⋆ covers half the interval
    assert r.pieces[("*", 0)] == dt(1, 0) * Fraction(1, 2)
    assert r.pieces[("*", 1)] == dt(1, 0) * Fraction(-1, 2)
    assert r.is_compatible()


def test_restriction_is_an_algebra_map():
    a, b = random_form(2, 1, 2, 1), random_form(2, 0, 2, 2)
    ra, rb = restrict_to_star(a, 2, I01), restrict_to_star(b, 2, I01)
    assert restrict_to_star(a.wedge(b), 2, I01) == ra.wedge(rb)
    assert restrict_to_star(a.d(), 2, I01) == ra.d()


def test_primed_star_whitney_on_triangle():
    chart = StarChart(2, (0, 1, 2), 0)
    lhs = whitney_form(2, (0, 1), barred=True)  # [⋆, 1] in the piece chart
    assert lhs == pullback_affine(chart.points(), whitney_form(2, (0, 1), barred=True) * 3)
    assert primed_whitney_check(2, (0, 1, 2)).passed
    assert primed_whitney_check(1, I01).passed


def test_inclusion_of_vertex_on_interval_is_one_minus_t():
    sr = StarRetraction(1, I01)
    x = Cochain.of(standard_complex("simplex", 1), (0,))
    assert sr.include(x) == restrict_to_star(SimplexForm.const(1) - t(1, 1), 1, I01)


def test_interval_welding_term_matches_the_display():
    # W̊ a^⋆ R̊ (g dt) = (t χ_[0,1/2] + (1 - t) χ_[1/2,1]) (∫_0^1/2 g - ∫_1/2^1 g), here g = t
    sr = StarRetraction(1, I01)
    s = t(1, 1)
    got = sr.W(sr.weld.homotopy(sr.R(sr.restrict(s * dt(1, 1)))))
    c = Fraction(1, 8) - Fraction(3, 8)
    want = _chi(1, I01, 1, s * c) + _chi(1, I01, 0, (SimplexForm.const(1) - s) * c)
    assert got == want


@pytest.mark.parametrize("seed", range(4))
def test_interval_defect_vanishes(seed):
    a = random_form(1, 1, 3, seed)
    assert defect_lhs(1, I01, a).is_zero()
    assert StarRetraction(1, I01).homotopy(restrict_to_star(a, 1, I01)) == restrict_to_star(dupont_s(a), 1, I01)


def test_defect_of_functions_is_zero():
    assert defect_lhs(2, (0, 1, 2), t(2, 0) ** 2).is_zero()
    assert defect_rhs(2, (0, 1, 2), t(2, 0) ** 2).is_zero()


def test_defect_on_triangle_is_nonzero_and_matches_expansion():
    a = random_form(2, 1, 2, 3)
    lhs = defect_lhs(2, (0, 1, 2), a)
    assert not lhs.is_zero()
    assert lhs == defect_rhs(2, (0, 1, 2), a)
    assert defect_lhs(2, (0, 1, 2), a.d()) + lhs.d() == defect_lhs(2, (0, 1, 2), a) * 0


def test_defect_for_exact_form():
    f = random_form(2, 0, 3, 5)
    assert defect_lhs(2, (0, 1, 2), f.d()) == defect_rhs(2, (0, 1, 2), f.d())


def test_compat_suite_interval():
    report = verify_compat(1, I01, probes=5)
    assert report.passed
    assert report["defect_vanishes"].passed and report["T_empty_sanity"].passed


def test_compat_suite_edge_face_of_triangle():
    report = verify_compat(2, I01, probes=5)
    assert report.passed
    assert report["T_formula"].kind == "claim"


def test_cube_restriction_and_inclusion():
    cr = CubeStarRetraction(1, 1)
    assert cr.include(Cochain(cr.weld.small.complex, {((0,),): 1})) == cr.restrict(
        CubeForm.const(1) - CubeForm.x(1, 0))


def test_cube_rearrangement_forms_on_square():
    cr = CubeStarRetraction(2, 2)
    f = random_cube_form(2, 1, 2, 1)
    X = cr.defect(f)
    assert X == rearranged_first(2, f)
    assert X == rearranged_corrected(2, f)


def test_printed_rearrangement_already_fails_on_interval():
    # on [0, 1] the defect is zero but the printed two-sum gives s + s̊
    f = CubeForm.x(1, 0) * CubeForm.dx(1, 0)
    assert CubeStarRetraction(1, 1).defect(f).is_zero()
    assert not rearranged_printed(1, f).is_zero()


@pytest.mark.parametrize("n,k", [(1, 1), (2, 1)])
def test_cubical_compat_suite(n, k):
    assert verify_cubical_compat(n, k, probes=3).passed
