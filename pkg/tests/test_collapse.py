from fractions import Fraction

import pytest

from dupontkit.collapse import (CollapseError, averaged_retraction, collapse_cochain_literal, elementary_collapse_dr,
                                expansion_sequence, extra_collapses, verify_collapse_equality, verify_general_I,
                                zigzag_retraction)
from dupontkit.complexes import STAR, Chain, Cochain, check_dr, standard_complex
from dupontkit.stellar import welding_dr

D1 = standard_complex("simplex", 1)


def test_collapse_of_interval_onto_vertex():
    r = elementary_collapse_dr(D1, (0, 1), (1,), "chains")
    assert r.project(Chain.of(D1, (1,))) == Chain.of(r.small.complex, (0,))
    assert r.homotopy(Chain.of(D1, (1,))) == Chain.of(D1, (0, 1))
    assert not r.homotopy(Chain.of(D1, (0,)))
    assert check_dr(r).passed


def test_cochain_collapse_of_interval():
    r = elementary_collapse_dr(D1, (0, 1), (1,), "cochains")
    assert r.include(Cochain.of(r.small.complex, (0,))) == Cochain.of(D1, (0,)) + Cochain.of(D1, (1,))
    lit = collapse_cochain_literal(D1, (0, 1), (1,))
    assert lit.include == r.include and lit.project == r.project and lit.homotopy == r.homotopy


def test_non_free_pair_names_second_coface():
    tri = standard_complex("simplex", 2)
    with pytest.raises(CollapseError, match="second coface"):
        elementary_collapse_dr(tri, (0, 1), (0,), "chains")


def test_interval_sequences():
    seq = [str(s) for s in expansion_sequence(1, 0)]
    assert seq == ["expand [*,0] / [*]", "expand [*,0,1] / [*,1]", "collapse [*,0,1] / [0,1]"]
    mirrored = [str(s) for s in expansion_sequence(1, 1)]
    assert mirrored == ["expand [*,1] / [*]", "expand [*,0,1] / [*,0]", "collapse [*,0,1] / [0,1]"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sequence_length(n):
    steps = expansion_sequence(n, 0)
    assert sum(s.kind == "expand" for s in steps) == 2 ** n
    assert steps[-1].complex == standard_complex("simplex", n + 1).__class__(
        [tuple(STAR if v == 0 else v - 1 for v in c) for c in standard_complex("simplex", n + 1)])


def test_first_zigzag_on_interval():
    z = zigzag_retraction(1, 0)
    S = z.big.complex
    assert z.include(Cochain.of(D1, (0, 1))) == Cochain.of(S, (STAR, 1))
    assert z.include(Cochain.of(D1, (0,))) == Cochain.of(S, (0,)) + Cochain.of(S, (STAR,))
    assert z.homotopy(Cochain.of(S, (0, STAR))) == Cochain.of(S, (STAR,))


def test_averaged_interval_inclusion_of_edge():
    r = averaged_retraction(1)
    S = r.big.complex
    assert r.include(Cochain.of(D1, (0, 1))) == (Cochain.of(S, (0, STAR)) + Cochain.of(S, (STAR, 1))) * Fraction(1, 2)
    assert r.homotopy(Cochain.of(S, (0, STAR))) == Cochain.of(S, (STAR,)) * Fraction(1, 2)
    assert r.homotopy(Cochain.of(S, (STAR, 1))) == Cochain.of(S, (STAR,)) * Fraction(-1, 2)


def test_projection_display_general():
    z = zigzag_retraction(2, 1)
    S, D = z.big.complex, z.small.complex
    for l in range(3):
        verts = tuple(v for v in range(3) if v != l)
        assert z.project(Cochain.of(S, (STAR,) + verts)) == Cochain.of(D, (0, 1, 2), (-1) ** l)


def test_extra_collapse_order():
    assert extra_collapses(3, (0, 1)) == [((STAR, 0, 1, 2), (0, 1, 2)), ((STAR, 0, 1, 3), (0, 1, 3)),
                                          ((STAR, 0, 1), (0, 1))]
    assert extra_collapses(2, (0, 1, 2)) == []


def test_equality_interval_and_triangle():
    for n in (1, 2):
        r = averaged_retraction(n)
        w = welding_dr(n, tuple(range(n + 1)), "cochains")
        assert r.include == w.include and r.project == w.project and r.homotopy == w.homotopy
    assert verify_collapse_equality(2).passed


def test_general_face_reported_as_claims():
    report = verify_general_I(2, (0, 1))
    assert all(c.kind == "claim" for c in report)
    assert not report.claims_failed
