from fractions import Fraction

import pytest

from dupontkit.complexes import Cochain
from dupontkit.cube_dupont import (C_coefficient, CubeForm, cube_integration, cube_of, cube_s_average,
                                   cube_s_expansion, cube_whitney, cube_dupont_s, format_cube_form, interval_integration,
                                   interval_s, interval_whitney, random_cube_form, tau, verify_cubical)

x, dx = CubeForm.x, CubeForm.dx
HALF = Fraction(1, 2)


def test_interval_ops_on_a_piece():
    assert interval_whitney({"a": 1}, 0, HALF) == {(0, False): 1, (1, False): -2}
    assert interval_whitney({"ab": 1}, 0, HALF) == {(0, True): 2}
    # R(x^2 dx) on [0, 1/2]: endpoint values of the 0-part are zero, edge integral 1/24
    assert interval_integration({(2, True): Fraction(1)}, 0, HALF) == {"a": 0, "b": 0, "ab": Fraction(1, 24)}


def test_interval_homotopy_closed_form():
    # s(x^2 dx) = x^3/3 - x/3
    assert interval_s({(2, True): Fraction(1)}) == {(3, False): Fraction(1, 3), (1, False): Fraction(-1, 3)}


def test_cube_format_uses_one_based_names():
    assert format_cube_form(x(2, 0) * dx(2, 1)) == "1*x1*dx2"


def test_whitney_integration_round_trip_on_square():
    sq = cube_of(2)
    for cell in sq:
        c = Cochain(sq, {cell: 1})
        assert cube_integration(cube_whitney(c, 2)) == c


def test_homotopy_vanishes_on_linear_slots():
    assert cube_s_expansion(x(2, 0) * dx(2, 1)).is_zero()


@pytest.mark.parametrize("n,e,value", [(1, 0, 1), (2, 0, 1), (2, 1, 1), (3, 0, 2), (3, 1, 1), (3, 2, 2)])
def test_C_coefficient(n, e, value):
    assert C_coefficient(e, n) == value


@pytest.mark.parametrize("seed", range(3))
def test_average_equals_expansion(seed):
    f = random_cube_form(2, 1, 2, seed)
    assert cube_s_average(f) == cube_s_expansion(f)


def test_symmetrized_homotopy_commutes_with_slot_swap():
    f = random_cube_form(2, 1, 3, 4)
    assert cube_dupont_s(tau((1, 0), f)) == tau((1, 0), cube_dupont_s(f))


def test_suite_n2_small():
    assert verify_cubical(2, probes=3).passed
