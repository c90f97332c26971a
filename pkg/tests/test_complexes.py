from fractions import Fraction

import pytest

from dupontkit.collapse import elementary_collapse_dr
from dupontkit.complexes import (STAR, Chain, Cochain, DeformationRetraction, DomainError, GradedSpace, SimplicialComplex,
                                 boundary, check_dr, coboundary, compose_dr, dualize_dr, expected_counts, orient,
                                 pair, standard_complex)
from dupontkit.stellar import star_complex, welding_dr


def test_orient_puts_star_first_and_tracks_sign():
    assert orient((1, 0)) == (-1, (0, 1))
    assert orient((0, STAR)) == (-1, (STAR, 0))
    assert orient((STAR, 2, 1)) == (-1, (STAR, 1, 2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_simplex_counts_are_binomial(n):
    assert standard_complex("simplex", n).counts() == expected_counts("simplex", n)


def test_cube_counts():
    assert standard_complex("cube", 2).counts() == [4, 4, 1]
    assert standard_complex("cube", 3).counts() == [8, 12, 6, 1]


def test_boundary_of_triangle():
    tri = standard_complex("simplex", 2)
    c = boundary(Chain.of(tri, (0, 1, 2)))
    assert c == Chain(tri, {(1, 2): 1, (0, 2): -1, (0, 1): 1})


@pytest.mark.parametrize("kind,n", [("simplex", 3), ("cube", 3)])
def test_boundary_squares_to_zero(kind, n):
    cplx = standard_complex(kind, n)
    for cell in cplx:
        assert not boundary(boundary(Chain(cplx, {cell: 1})))
        assert not coboundary(coboundary(Cochain(cplx, {cell: 1})))


def test_coboundary_is_adjoint_of_boundary():
    cplx = standard_complex("cube", 2)
    for x in cplx:
        for c in cplx:
            lhs = pair(coboundary(Cochain(cplx, {x: 1})), Chain(cplx, {c: 1}))
            rhs = pair(Cochain(cplx, {x: 1}), boundary(Chain(cplx, {c: 1})))
            assert lhs == rhs


def test_cube_boundary_koszul_sign():
    sq = standard_complex("cube", 2)
    b = boundary(Chain(sq, {((0, 1), (0, 1)): 1}))
    # ∂(I x I) = ∂I x I - I x ∂I
    assert b[((1,), (0, 1))] == 1 and b[((0,), (0, 1))] == -1
    assert b[((0, 1), (1,))] == -1 and b[((0, 1), (0,))] == 1


def test_oriented_coefficient_lookup():
    tri = standard_complex("simplex", 2)
    c = Chain.of(tri, (1, 0), 3)
    assert c[(0, 1)] == -3
    assert c.coefficient((1, 0)) == 3


def test_closure_and_cofaces():
    cplx = SimplicialComplex.closure([(0, 1, 2)])
    assert cplx.counts() == [3, 3, 1]
    assert cplx.cofaces((0, 1)) == [(0, 1, 2)]


def test_missing_face_rejected():
    with pytest.raises(DomainError):
        SimplicialComplex([(0,), (0, 1)])


def test_cross_complex_arithmetic_rejected():
    a = Chain.of(standard_complex("simplex", 1), (0,))
    b = Chain.of(standard_complex("simplex", 2), (0,))
    with pytest.raises(DomainError):
        a + b


def test_trivial_retraction_passes():
    space = GradedSpace(standard_complex("simplex", 2), "chains")
    assert check_dr(DeformationRetraction.trivial(space)).passed


def test_dual_of_dual_is_original():
    r = welding_dr(2, (0, 1), "chains")
    rr = dualize_dr(dualize_dr(r))
    assert rr.include == r.include and rr.project == r.project and rr.homotopy == r.homotopy


def test_compose_with_trivial_is_identity():
    r = welding_dr(2, (0, 1, 2), "chains")
    t = DeformationRetraction.trivial(r.small)
    c = compose_dr(r, t)
    assert c.include == r.include and c.project == r.project and c.homotopy == r.homotopy


def test_composite_of_special_retractions_is_special():
    cplx = standard_complex("simplex", 2)
    outer = elementary_collapse_dr(cplx, (0, 1, 2), (1, 2), "chains")
    inner = elementary_collapse_dr(outer.small.complex, (0, 2), (2,), "chains")
    assert check_dr(compose_dr(outer, inner)).passed


def test_mutated_homotopy_names_a_basis_element():
    r = welding_dr(1, (0, 1), "chains")
    a = r.homotopy * 1
    a.blocks[0][0, 0] += Fraction(1)
    assert a != r.homotopy
    bad = DeformationRetraction(r.small, r.big, r.include, r.project, a)
    report = check_dr(bad)
    assert not report.passed
    cx = report["homotopy_identity"].counterexample
    assert cx["input"] == "[*]"
    assert star_complex(1, (0, 1)) == r.big.complex
