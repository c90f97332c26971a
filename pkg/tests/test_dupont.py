from fractions import Fraction

import pytest

from dupontkit.complexes import Cochain, DomainError, SimplicialComplex, standard_complex
from dupontkit.dupont import (dupont_s, integration_map, interval_s_closed_form, lift_integration, lift_s,
                              lift_whitney, verify_dupont, whitney_map)
from dupontkit.simplex_forms import SimplexForm, random_form, whitney_form

t = SimplexForm.t
dt = SimplexForm.dt


def test_whitney_of_vertex_and_edge():
    cplx = standard_complex("simplex", 1)
    assert whitney_map(Cochain.of(cplx, (0,))) == t(1, 0)
    assert whitney_map(Cochain.of(cplx, (0, 1))) == dt(1, 1)


def test_integration_of_constant_and_edge_form():
    cplx = standard_complex("simplex", 1)
    assert integration_map(SimplexForm.const(1, 3)) == Cochain(cplx, {(0,): 3, (1,): 3})
    assert integration_map(dt(1, 1)) == Cochain(cplx, {(0, 1): 1})


def test_integration_inverts_whitney_on_triangle():
    cplx = standard_complex("simplex", 2)
    for cell in cplx:
        x = Cochain(cplx, {cell: 1})
        assert integration_map(whitney_map(x)) == x


def test_interval_homotopy_by_hand():
    # s(t0 dt0) with t0 = 1 - t: closed form ∫_0^t g - t ∫_0^1 g
    assert dupont_s(t(1, 0) * dt(1, 0)) == t(1, 0) ** 2 * Fraction(1, 2) - t(1, 0) * Fraction(1, 2)


@pytest.mark.parametrize("seed", range(6))
def test_interval_closed_form(seed):
    a = random_form(1, 1, 4, seed)
    assert dupont_s(a) == interval_s_closed_form(a)


def test_s_kills_functions_and_top_whitney_forms():
    assert dupont_s(t(2, 0) ** 2).is_zero()
    assert dupont_s(whitney_form(2, (0, 1, 2), barred=True)).is_zero()


def test_lift_to_two_edges():
    path = SimplicialComplex([(0,), (1,), (2,), (0, 1), (1, 2)])
    x = Cochain(path, {(1,): 1, (1, 2): 2})
    pw = lift_whitney(path, x)
    assert pw.pieces[(0, 1)] == SimplexForm.const(1) - t(1, 0)
    assert lift_integration(pw) == x
    assert lift_s(pw).is_zero()


def test_suite_rejects_n_zero():
    with pytest.raises(DomainError):
        verify_dupont(0)


def test_suite_on_interval_passes_and_names_checks():
    report = verify_dupont(1, probes=5)
    names = {c.name for c in report}
    assert {"RW_identity", "ds_plus_sd", "s_squared_zero", "sW_zero", "Rs_zero", "interval_closed_form",
            "equivariance_s", "face_commutation_W"} <= names
    assert report.passed
