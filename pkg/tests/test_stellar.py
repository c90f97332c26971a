from fractions import Fraction

import pytest

from dupontkit.complexes import STAR, Chain, Cochain, DomainError, check_dr, standard_complex
from dupontkit.stellar import (all_faces, cubical_star_complex, cubical_welding_dr, star_complex, verify_stellar,
                               welding_cochain_literal, welding_dr)


def test_cell_counts():
    assert star_complex(2, (0, 1, 2)).counts() == [4, 6, 3]
    assert star_complex(2, (0, 1)).counts() == [4, 5, 2]
    assert cubical_star_complex(2, 1).counts() == [6, 7, 2]
    assert cubical_star_complex(2, 2).counts() == [9, 12, 4]


def test_vertex_face_only_renames_the_vertex():
    assert star_complex(1, (0,)).counts() == [2, 1]
    assert (STAR, 1) in star_complex(1, (0,))


def test_bad_face_rejected():
    with pytest.raises(DomainError):
        star_complex(2, (0, 3))


def test_interval_welding_values():
    r = welding_dr(1, (0, 1), "chains")
    S = star_complex(1, (0, 1))
    D = standard_complex("simplex", 1)
    assert r.include(Chain.of(D, (0, 1))) == Chain.of(S, (0, STAR)) + Chain.of(S, (STAR, 1))
    assert r.homotopy(Chain.of(S, (STAR,))) == (Chain.of(S, (0, STAR)) - Chain.of(S, (STAR, 1))) * Fraction(1, 2)
    c = welding_dr(1, (0, 1), "cochains")
    assert c.include(Cochain.of(D, (0,))) == Cochain.of(S, (0,)) + Cochain.of(S, (STAR,)) * Fraction(1, 2)


def test_projection_of_cone_edge_on_triangle():
    r = welding_dr(2, (0, 1, 2), "chains")
    S = star_complex(2, (0, 1, 2))
    D = standard_complex("simplex", 2)
    assert r.project(Chain.of(S, (STAR, 0))) == (Chain.of(D, (1, 0)) + Chain.of(D, (2, 0))) * Fraction(1, 3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dual_matches_literal_cochain_formulas(n):
    for I in all_faces(n):
        dual, lit = welding_dr(n, I, "cochains"), welding_cochain_literal(n, I)
        assert dual.include == lit.include and dual.project == lit.project and dual.homotopy == lit.homotopy


def test_cubical_welding_is_special():
    for side in ("chains", "cochains"):
        assert check_dr(cubical_welding_dr(2, 2, side)).passed


def test_suite_small():
    assert verify_stellar(2).passed
