from fractions import Fraction
from itertools import combinations
from math import factorial

import pytest

from dupontkit.complexes import DomainError, standard_complex
from dupontkit.simplex_forms import (CompatibilityError, SimplexForm, barycenter, canonicalize, cone_homotopy,
                                     contract_E, eval_at, eval_value, face_points, format_form, h, integrate,
                                     integrate_face, piecewise, pullback, pullback_affine, random_form,
                                     vertex_point, whitney_form)

t = SimplexForm.t
dt = SimplexForm.dt


def test_last_coordinate_is_eliminated():
    assert t(2, 2) == SimplexForm.const(2) - t(2, 0) - t(2, 1)
    assert dt(2, 2) == -dt(2, 0) - dt(2, 1)


def test_format_grammar():
    f = t(2, 0) ** 2 * t(2, 1) * dt(2, 0).wedge(dt(2, 1)) * 3
    assert format_form(f) == "3*t0^2*t1*dt0^dt1"
    assert str(SimplexForm.zero(2)) == "0"


def test_canonicalize_ambient_terms():
    # t0 + t1 + t2 = 1 and dt0 + dt1 + dt2 = 0 on Δ^2
    assert canonicalize(2, {((1, 1, 1), ()): 1, ((0, 0, 0), (2,)): 1}) == t(2, 0) * t(2, 1) * t(2, 2) + dt(2, 2)
    assert canonicalize(2, {((1, 0, 0), ()): 1, ((0, 1, 0), ()): 1, ((0, 0, 1), ()): 1}) == 1


def test_noncanonical_key_rejected():
    with pytest.raises(DomainError):
        SimplexForm(2, {((0, 0), (1, 0)): 1})


def test_wedge_is_graded_commutative():
    a, b = random_form(3, 1, 2, 1), random_form(3, 1, 2, 2)
    c = random_form(3, 2, 2, 3)
    assert a.wedge(b) == -b.wedge(a)
    assert a.wedge(c) == c.wedge(a)
    assert a.wedge(a).is_zero()


@pytest.mark.parametrize("seed", range(5))
def test_d_squared_zero_and_leibniz(seed):
    a, b = random_form(3, 1, 3, seed), random_form(3, 1, 2, seed + 50)
    assert a.d().d().is_zero()
    assert a.wedge(b).d() == a.d().wedge(b) - a.wedge(b.d())


def test_whitney_forms_of_interval_and_triangle():
    assert whitney_form(1, (0,)) == t(1, 0)
    assert whitney_form(2, (0, 1)) == t(2, 0) * dt(2, 1) - t(2, 1) * dt(2, 0)
    assert whitney_form(2, (0, 1, 2), barred=True) == whitney_form(2, (0, 1, 2)) * 2
    assert whitney_form(2, (1, 0)) == -whitney_form(2, (0, 1))


def test_cone_homotopy_values():
    # h^1(ω_01) = t0 on Δ^1; h^2 kills ω_01 on Δ^3; h^0(ω_012) = -1/2 ω_12
    assert h(1, whitney_form(1, (0, 1))) == t(1, 0)
    assert h(2, whitney_form(3, (0, 1))).is_zero()
    assert h(0, whitney_form(2, (0, 1, 2))) == whitney_form(2, (1, 2)) * Fraction(-1, 2)


def test_cone_homotopy_toward_vertex_one_on_interval():
    # with t = t_1: h^{e_1}(dt) = 1 - t, which is t_0
    assert h(1, dt(1, 1)) == t(1, 0)
    assert h(1, dt(1, 1)) == SimplexForm.const(1) - t(1, 1)


def test_cone_homotopy_kills_functions():
    assert h(0, t(2, 0) ** 3).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cone_homotopy_formula(n):
    q = barycenter(n, range(n + 1))
    for p in range(n + 1):
        for seed in range(4):
            a = random_form(n, p, 3, seed)
            for point in [vertex_point(n, 0), vertex_point(n, n), q]:
                lhs = cone_homotopy(point, a).d() + cone_homotopy(point, a.d())
                assert lhs == eval_at(point, a) - a


def test_contraction_with_euler_fields():
    assert contract_E(1, whitney_form(1, (0, 1))) == t(1, 0)
    assert contract_E(2, whitney_form(2, (0, 1))).is_zero()


def test_eval_value():
    f = t(2, 0) * t(2, 1)
    assert eval_value(barycenter(2, (0, 1, 2)), f) == Fraction(1, 9)
    assert eval_at(vertex_point(2, 0), dt(2, 0)).is_zero()


@pytest.mark.parametrize("p", [1, 2, 3])
def test_whitney_form_integrates_to_inverse_factorial(p):
    for method in ("dirichlet", "homotopy"):
        assert integrate_face(tuple(range(p + 1)), whitney_form(p, tuple(range(p + 1))), method) == Fraction(1, factorial(p))


def test_integral_of_t0_dt1():
    # along [e_0, e_1] the coordinate t_0 runs from 1 down to 0
    assert integrate(t(1, 0) * dt(1, 1)) == Fraction(1, 2)
    assert integrate(t(1, 0) * dt(1, 0)) == Fraction(-1, 2)


@pytest.mark.parametrize("n", [2, 3])
def test_two_integration_routes_agree(n):
    for p in range(n + 1):
        for face in combinations(range(n + 1), p + 1):
            for seed in range(3):
                a = random_form(n, p, 3, seed)
                assert integrate_face(face, a, "dirichlet") == integrate_face(face, a, "homotopy")


def test_permutation_pullback_reverses_edge_form():
    w = whitney_form(1, (0, 1), barred=True)
    assert pullback("permutation", (1, 0), w) == -w


def test_face_pullback_of_whitney_form():
    # the face omitting vertex 2 of Δ^2 is Δ^1 = [0, 1]
    assert pullback_affine(face_points(2, 2), whitney_form(2, (0, 1))) == whitney_form(1, (0, 1))
    assert pullback_affine(face_points(2, 0), whitney_form(2, (0, 1))).is_zero()


def test_random_form_is_deterministic_and_nonzero():
    assert random_form(2, 1, 3, 7) == random_form(2, 1, 3, 7)
    assert not random_form(2, 1, 3, 7).is_zero()
    assert random_form(2, 1, 3, 7).degrees() == {1}


def test_piecewise_compatibility_detected():
    cplx = standard_complex("simplex", 1)
    ok = piecewise(cplx, {(0, 1): t(1, 0)})
    assert ok.is_compatible()
    two = type(cplx)([(0,), (1,), (2,), (0, 1), (1, 2)])
    piecewise(two, {(0, 1): t(1, 0), (1, 2): SimplexForm.const(1) - t(1, 0)})
    with pytest.raises(CompatibilityError):
        piecewise(two, {(0, 1): t(1, 0), (1, 2): t(1, 0)})
