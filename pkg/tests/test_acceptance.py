"""Acceptance suite: one printed PASS/FAIL line per criterion, exact equality throughout."""
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

import pytest

from dupontkit.cli import main
from dupontkit.collapse import verify_collapse_equality, verify_general_I
from dupontkit.compat import verify_compat, verify_cubical_compat
from dupontkit.cube_dupont import verify_cubical
from dupontkit.dupont import verify_dupont
from dupontkit.simplex_forms import integrate_face, random_form, whitney_form
from dupontkit.stellar import verify_stellar

PROBES = 25


def report_line(number, ok, detail=""):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    return ok


def failing(report, kind="theorem"):
    return [c.name for c in report if c.kind == kind and not c.passed]


@lru_cache(maxsize=None)
def dupont_report(n):
    return verify_dupont(n, probes=PROBES, degree=3, seed=0)


def test_criterion_1_dupont_identities():
    names = ("RW_identity", "ds_plus_sd", "s_squared_zero", "sW_zero", "Rs_zero")
    bad = {n: [m for m in names if not dupont_report(n)[m].passed] for n in (1, 2, 3)}
    ok = not any(bad.values()) and all(dupont_report(n).passed for n in (1, 2, 3))
    assert report_line(1, ok, f"failures={bad}")


def test_criterion_2_integration_double_oracle():
    mismatches = []
    for n in range(1, 4):
        for p in range(n + 1):
            faces = list(combinations(range(n + 1), p + 1))
            for seed in range(PROBES):
                a = random_form(n, p, 3, seed)
                face = faces[seed % len(faces)]
                if integrate_face(face, a, "homotopy") != integrate_face(face, a, "dirichlet"):
                    mismatches.append((n, face, seed))
            for face in faces:
                w = whitney_form(n, face)
                for method in ("homotopy", "dirichlet"):
                    if integrate_face(face, w, method) != Fraction(1, factorial(p)):
                        mismatches.append((n, face, method))
    assert report_line(2, not mismatches, f"mismatches={mismatches[:3]}")


def test_criterion_3_equivariance_and_faces():
    names = [f"{kind}_{op}" for kind in ("equivariance", "face_commutation") for op in "RWs"]
    bad = [(n, m) for n in (1, 2, 3) for m in names if not dupont_report(n)[m].passed]
    assert report_line(3, not bad, f"failures={bad}")


def test_criterion_4_cubical():
    bad = {n: failing(verify_cubical(n, probes=PROBES, degree=3, seed=0)) for n in (1, 2, 3)}
    assert report_line(4, not any(bad.values()), f"failures={bad}")


def test_criterion_5_stellar_welding():
    bad = {n: failing(verify_stellar(n)) for n in (1, 2, 3, 4)}
    assert report_line(5, not any(bad.values()), f"failures={bad}")


def test_criterion_6_compatibility():
    cases = [(1, (0, 1)), (2, (0, 1, 2)), (2, (0, 1)), (3, (0, 1, 2, 3)), (3, (0, 1))]
    bad, claims = {}, {}
    for n, I in cases:
        r = verify_compat(n, I, probes=PROBES, degree=3, seed=0)
        bad[(n, I)] = failing(r)
        claims[(n, I)] = r["T_formula"].passed
        if n == 1:
            bad[(n, I)] += [m for m in ("defect_vanishes", "T_empty_sanity") if not r[m].passed]
    print(f"criterion 6: T_formula claim {'holds' if all(claims.values()) else 'fails'} on {sorted(claims)}")
    assert report_line(6, not any(bad.values()), f"failures={bad}")


def test_criterion_7_cubical_compatibility():
    bad, rearranged = {}, {}
    for n, k in [(1, 1), (2, 1), (2, 2)]:
        r = verify_cubical_compat(n, k, probes=PROBES, degree=3, seed=0)
        bad[(n, k)] = failing(r)
        if k == n:
            rearranged[(n, k)] = {m: r[m].passed for m in
                                  ("rearrangement_first_display", "rearrangement_printed", "rearrangement_corrected")}
    ok = not any(bad.values()) and all(all(v.values()) for v in rearranged.values())
    assert report_line(7, ok, f"theorem failures={bad} rearrangement={rearranged}")


def test_criterion_8_collapse_equality():
    bad = {}
    for n in (1, 2, 3):
        r = verify_collapse_equality(n)
        bad[n] = failing(r)
    r1 = verify_collapse_equality(1)
    displays = ["display_iota_1", "display_a_1", "display_iota_average_edge"]
    bad["displays"] = [m for m in displays if not r1[m].passed]
    general = {}
    for n, I in [(2, (0, 1)), (3, (0, 1)), (3, (0, 1, 2))]:
        g = verify_general_I(n, I)
        assert all(c.kind == "claim" for c in g)
        general[(n, I)] = not g.claims_failed
    print(f"criterion 8: general-face claims {general}")
    assert report_line(8, not any(bad.values()), f"failures={bad}")


@pytest.mark.parametrize("fmt", ["json"])
def test_criterion_9_determinism(tmp_path, fmt):
    outs = []
    for run in range(2):
        path = tmp_path / f"all{run}.{fmt}"
        main(["verify", "all", "--probes", "5", "--seed", "3", "--format", fmt, "--out", str(path)])
        outs.append(path.read_bytes())
    assert report_line(9, outs[0] == outs[1] and len(outs[0]) > 0, f"bytes={len(outs[0])}")
