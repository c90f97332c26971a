"""Elementary collapses and the construction of stellar welding from them.

``Δ^n`` sits inside ``Δ^{n+1} = [⋆, 0, ..., n]``.  For a pivot vertex ``j``
one expands ``Δ^n`` to the full ``Δ^{n+1}`` by adding the pairs
``([⋆, j, K], [⋆, K])`` in order of ``|K|`` and then collapses the pair
``([⋆, 0..n], [0..n])`` to reach ``⋆Δ^n``.  Reading the expansions as
retractions and conjugating through the final collapse gives a zigzag
retraction of ``C^•(⋆Δ^n)`` onto ``C^•(Δ^n)``; the average over pivots is the
cochain welding retraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .complexes import (STAR, Cochain, DeformationRetraction, DomainError, GradedLinearMap, GradedSpace,
                        SimplicialComplex, check_dr, compose_dr, dualize_dr, format_cell, orient,
                        standard_complex)
from .report import Report, make_check
from .stellar import _check_face, star_complex, welding_dr


class CollapseError(DomainError):
    """A pair that should be free is not."""


def _canon(vertices) -> tuple:
    return orient(vertices)[1]


def free_pair_violation(Y: SimplicialComplex, sigma: tuple, face: tuple):
    """``None`` if ``(sigma, face)`` is a free pair of ``Y``, else a reason."""
    if sigma not in Y:
        return f"{format_cell(sigma)} is not a cell"
    if face not in Y:
        return f"{format_cell(face)} is not a cell"
    if face not in [f for _, f in Y.faces(sigma)]:
        return f"{format_cell(face)} is not a facet of {format_cell(sigma)}"
    others = [c for c in Y.cofaces(face) if c != sigma]
    if others:
        return f"{format_cell(face)} has a second coface {format_cell(others[0])}"
    return None


def elementary_collapse_dr(Y: SimplicialComplex, sigma, face, side: str = "cochains") -> DeformationRetraction:
    """Retraction of ``C(Y)`` onto ``C(Y - {sigma, face})``.

    Chains: ``p(face) = face - ε ∂sigma``, ``p(sigma) = 0``, ``a(face) = ε sigma``
    where ``ε`` is the coefficient of ``face`` in ``∂sigma``.  Cochains are the dual.
    """
    sigma, face = _canon(sigma), _canon(face)
    why = free_pair_violation(Y, sigma, face)
    if why:
        raise CollapseError(f"({format_cell(sigma)}, {format_cell(face)}) is not a free pair: {why}")
    X = SimplicialComplex([c for c in Y if c not in (sigma, face)])
    bd = dict((f, s) for s, f in Y.faces(sigma))
    eps = bd[face]
    small, big = GradedSpace(X, "chains"), GradedSpace(Y, "chains")

    def p_rule(c):
        if c == sigma:
            return {}
        if c == face:
            return {f: -eps * s for f, s in bd.items() if f != face}
        return {c: 1}

    include = GradedLinearMap.from_rule(small, big, 0, lambda c: {c: 1})
    project = GradedLinearMap.from_rule(big, small, 0, p_rule)
    homotopy = GradedLinearMap.from_rule(big, big, 1, lambda c: {sigma: eps} if c == face else {})
    dr = DeformationRetraction(small, big, include, project, homotopy)
    if side == "chains":
        return dr
    if side == "cochains":
        return dualize_dr(dr)
    raise DomainError(f"bad side {side!r}")


def collapse_cochain_literal(Y: SimplicialComplex, sigma, face) -> DeformationRetraction:
    """The cochain collapse retraction written out cell by cell.

    ``i(τ^) = τ^ - ε_face ε_τ face^`` for ``τ`` in ``∂sigma - face``; ``p`` forgets
    ``sigma`` and ``face``; ``a(sigma^) = ε_face face^``.
    """
    sigma, face = _canon(sigma), _canon(face)
    why = free_pair_violation(Y, sigma, face)
    if why:
        raise CollapseError(f"({format_cell(sigma)}, {format_cell(face)}) is not a free pair: {why}")
    X = SimplicialComplex([c for c in Y if c not in (sigma, face)])
    bd = dict((f, s) for s, f in Y.faces(sigma))
    eps = bd[face]
    small, big = GradedSpace(X, "cochains"), GradedSpace(Y, "cochains")

    def i_rule(c):
        if c in bd and c != face:
            return {c: 1, face: -eps * bd[c]}
        return {c: 1}

    include = GradedLinearMap.from_rule(small, big, 0, i_rule)
    project = GradedLinearMap.from_rule(big, small, 0, lambda c: {} if c in (sigma, face) else {c: 1})
    homotopy = GradedLinearMap.from_rule(big, big, -1, lambda c: {face: eps} if c == sigma else {})
    return DeformationRetraction(small, big, include, project, homotopy)


# ---------------------------------------------------------------------------
# expansion sequences

@dataclass(frozen=True)
class Step:
    """One elementary move; ``complex`` is the larger complex of the pair."""

    kind: str  # "expand" or "collapse"
    complex: SimplicialComplex
    sigma: tuple
    face: tuple

    def __str__(self) -> str:
        return f"{self.kind} {format_cell(self.sigma)} / {format_cell(self.face)}"


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError("need n >= 1")


def expansion_sequence(n: int, j: int) -> list[Step]:
    """Expansions from ``Δ^n`` to ``Δ^{n+1}`` with pivot ``j``, then the collapse onto ``⋆Δ^n``."""
    _check_n(n)
    if not 0 <= j <= n:
        raise DomainError(f"pivot {j} out of range 0..{n}")
    cells = set(standard_complex("simplex", n))
    others = [v for v in range(n + 1) if v != j]
    steps = []
    for size in range(0, n + 1):
        for K in combinations(others, size):
            sigma, face = _canon((STAR, j) + K), _canon((STAR,) + K)
            cells |= {sigma, face}
            Y = SimplicialComplex(cells)
            why = free_pair_violation(Y, sigma, face)
            if why:
                raise CollapseError(f"expansion {format_cell(sigma)}: {why}")
            steps.append(Step("expand", Y, sigma, face))
    full = tuple(range(n + 1))
    steps.append(Step("collapse", SimplicialComplex(cells), (STAR,) + full, full))
    return steps


def extra_collapses(n: int, I) -> list[tuple]:
    """Pairs ``([⋆, J], [J])`` with ``I ⊆ J ⊊ {0..n}``, larger ``J`` first, lexicographic within a size."""
    I = _check_face(n, I)
    rest = [v for v in range(n + 1) if v not in I]
    out = []
    for extra in range(len(rest) - 1, -1, -1):
        for E in combinations(rest, extra):
            J = tuple(sorted(I + E))
            out.append(((STAR,) + J, J))
    return out


def _expansion_dr(steps: list[Step], side: str) -> DeformationRetraction:
    dr = None
    for st in steps:
        if st.kind != "expand":
            continue
        e = elementary_collapse_dr(st.complex, st.sigma, st.face, side)
        dr = e if dr is None else compose_dr(e, dr)
    return dr


def _collapse_dr(n: int, I, side: str) -> DeformationRetraction:
    """Retraction of ``Δ^{n+1}`` onto ``⋆_I Δ^n`` through the final and the extra collapses."""
    full = tuple(range(n + 1))
    Y = standard_complex("simplex", n + 1)
    Y = SimplicialComplex([tuple(STAR if v == 0 else v - 1 for v in c) for c in Y])
    dr = elementary_collapse_dr(Y, (STAR,) + full, full, side)
    for sigma, face in extra_collapses(n, I):
        e = elementary_collapse_dr(dr.small.complex, sigma, face, side)
        dr = compose_dr(dr, e)
    return dr


@dataclass(frozen=True)
class Zigzag:
    """Maps between ``C^•(Δ^n)`` (small) and ``C^•(⋆_I Δ^n)`` (big)."""

    small: GradedSpace
    big: GradedSpace
    include: GradedLinearMap
    project: GradedLinearMap
    homotopy: GradedLinearMap

    def as_dr(self) -> DeformationRetraction:
        return DeformationRetraction(self.small, self.big, self.include, self.project, self.homotopy)


def _zigzag(n: int, j: int, I) -> Zigzag:
    steps = expansion_sequence(n, j)
    down = _expansion_dr(steps, "cochains")
    col = _collapse_dr(n, I, "cochains")
    if down.big != col.big:
        raise CollapseError("expansion sequence does not end at the full simplex")
    include = col.project @ down.include
    project = down.project @ col.include
    homotopy = col.project @ down.homotopy @ col.include
    return Zigzag(down.small, col.small, include, project, homotopy)


def zigzag_retraction(n: int, j: int, side: str = "cochains") -> Zigzag:
    """``(ι̊_j, p̊_j, å_j) = (p_c i_j, p_j i_c, p_c a_j i_c)`` for the collapse ``c = ([⋆, 0..n], [0..n])``."""
    if side != "cochains":
        raise DomainError("the zigzag is built on cochains")
    _check_n(n)
    return _zigzag(n, j, tuple(range(n + 1)))


def _average(zs: list[Zigzag]) -> Zigzag:
    w = Fraction(1, len(zs))
    include, homotopy = zs[0].include, zs[0].homotopy
    for z in zs[1:]:
        if z.project != zs[0].project:
            raise CollapseError("projections of the zigzags disagree")
        include, homotopy = include + z.include, homotopy + z.homotopy
    return Zigzag(zs[0].small, zs[0].big, include * w, zs[0].project, homotopy * w)


def averaged_retraction(n: int) -> DeformationRetraction:
    """``ι̊ = mean ι̊_j``, ``p̊ = p̊_j``, ``å = mean å_j`` over the ``n+1`` pivots."""
    _check_n(n)
    return _average([zigzag_retraction(n, j) for j in range(n + 1)]).as_dr()


def general_I_retraction(n: int, I) -> DeformationRetraction:
    """Average over ``i_α ∈ I`` of the zigzags followed by the extra collapses."""
    I = _check_face(n, I)
    return _average([_zigzag(n, a, I) for a in I]).as_dr()


# ---------------------------------------------------------------------------
# cell-by-cell displays

def _vec(cplx, *terms) -> dict:
    out: dict = {}
    for coef, verts in terms:
        sign, cell = orient(verts)
        out[cell] = out.get(cell, 0) + sign * Fraction(coef)
    return {c: v for c, v in out.items() if v}


def _hat_rule(m: GradedLinearMap, rule) -> GradedLinearMap:
    """A map on canonical basis cells from a rule given on oriented cells."""
    return GradedLinearMap.from_rule(m.domain, m.codomain, m.shift, rule)


def zigzag_displays(n: int, j: int) -> dict:
    """The general cell-by-cell formulas for ``ι̊_j``, ``p̊_j`` and ``å_j``."""
    z = zigzag_retraction(n, j)
    full = tuple(range(n + 1))
    others = [v for v in range(n + 1) if v != j]

    def iota(c):
        if c == full:
            return _vec(None, ((-1) ** j, (STAR,) + tuple(others)))
        if j in c and len(c) <= n:
            K = tuple(v for v in c if v != j)
            sign = orient((j,) + K)[0]
            return {k: sign * v for k, v in _vec(None, (1, (j,) + K), (1, (STAR,) + K)).items()}
        return {c: 1}

    def proj(c):
        if c[0] == STAR and len(c) == n + 1:
            l = next(v for v in full if v not in c)
            return {full: (-1) ** l}
        if c[0] == STAR:
            return {}
        return {c: 1}

    def hom(c):
        if c[0] == STAR and j in c[1:] and len(c) <= n + 1:
            K = tuple(v for v in c[1:] if v != j)
            sign = orient((STAR, j) + K)[0]
            return {k: sign * v for k, v in _vec(None, (-1, (STAR,) + K)).items()}
        return {}

    return {"iota": (z.include, _hat_rule(z.include, iota)),
            "p": (z.project, _hat_rule(z.project, proj)),
            "a": (z.homotopy, _hat_rule(z.homotopy, hom))}


def _cx(lhs: GradedLinearMap, rhs: GradedLinearMap):
    diff = lhs - rhs
    cell = diff.first_nonzero()
    if cell is None:
        return None
    v = lhs.domain.basis_vector(cell)
    return {"input": f"{format_cell(cell)}^", "lhs": str(lhs(v)), "rhs": str(rhs(v))}


def _interval_display_checks() -> list:
    """The explicit one-dimensional values, first sequence = pivot 0."""
    n = 1
    z1, z2 = zigzag_retraction(n, 0), zigzag_retraction(n, 1)
    avg = averaged_retraction(n)
    big = z1.big.complex
    small = z1.small.complex

    def c(space_cplx, *terms):
        return Cochain(space_cplx, _vec(None, *terms))

    cases = {
        "display_iota_1": [(z1.include, c(small, (1, (0, 1))), c(big, (1, (STAR, 1)))),
                           (z1.include, c(small, (1, (0,))), c(big, (1, (0,)), (1, (STAR,)))),
                           (z1.include, c(small, (1, (1,))), c(big, (1, (1,))))],
        "display_a_1": [(z1.homotopy, c(big, (1, (0, STAR))), c(big, (1, (STAR,)))),
                        (z1.homotopy, c(big, (1, (STAR, 1))), c(big)),
                        (z1.homotopy, c(big, (1, (STAR,))), c(big))],
        "display_iota_2": [(z2.include, c(small, (1, (0, 1))), c(big, (1, (0, STAR)))),
                           (z2.include, c(small, (1, (1,))), c(big, (1, (1,)), (1, (STAR,))))],
        "display_a_2": [(z2.homotopy, c(big, (1, (STAR, 1))), c(big, (-1, (STAR,)))),
                        (z2.homotopy, c(big, (1, (0, STAR))), c(big))],
        "display_p": [(z1.project, c(big, (1, (0, STAR))), c(small, (1, (0, 1)))),
                      (z1.project, c(big, (1, (STAR, 1))), c(small, (1, (0, 1)))),
                      (z1.project, c(big, (1, (STAR,))), c(small))],
        "display_iota_average_edge": [(avg.include, c(small, (1, (0, 1))),
                                       c(big, (Fraction(1, 2), (0, STAR)), (Fraction(1, 2), (STAR, 1))))],
        # the averaged homotopy, with the display's labels e_0, e_1, e_2 read as e_0, e_⋆, e_1
        "display_a_average": [(avg.homotopy, c(big, (1, (0, STAR))), c(big, (Fraction(1, 2), (STAR,)))),
                              (avg.homotopy, c(big, (1, (STAR, 1))), c(big, (Fraction(-1, 2), (STAR,))))],
    }
    out = []
    for name, items in cases.items():
        bad = None
        for m, x, want in items:
            got = m(x)
            if got != want:
                bad = {"input": str(x), "lhs": str(got), "rhs": str(want)}
                break
        out.append(make_check(name, bad is None, counterexample=bad))
    # vertex lines of the averaged inclusion as printed: e_0^ -> 1/2 e_0^ + e_⋆^
    bad = None
    for v in (0, 1):
        x, want = c(small, (1, (v,))), c(big, (Fraction(1, 2), (v,)), (1, (STAR,)))
        got = avg.include(x)
        if got != want:
            bad = {"input": str(x), "lhs": str(got), "rhs": str(want)}
            break
    out.append(make_check("display_iota_average_vertices", bad is None, kind="claim", counterexample=bad,
                          note=None if bad is None else "printed-formula mismatch"))
    return out


# ---------------------------------------------------------------------------
# verification

def verify_collapse_equality(n: int) -> Report:
    """The averaged zigzag equals the cochain welding retraction for ``I = {0..n}``."""
    _check_n(n)
    report = Report("collapse", {"n": n})
    full = tuple(range(n + 1))
    zs = [zigzag_retraction(n, j) for j in range(n + 1)]
    bad = None
    for j in range(n + 1):
        for st in expansion_sequence(n, j):
            lit = collapse_cochain_literal(st.complex, st.sigma, st.face)
            dual = elementary_collapse_dr(st.complex, st.sigma, st.face, "cochains")
            for name in ("include", "project", "homotopy"):
                if getattr(lit, name) != getattr(dual, name):
                    bad = {"input": f"j={j}, {st}", "lhs": name, "rhs": "dual of the chain collapse"}
            for c in check_dr(elementary_collapse_dr(st.complex, st.sigma, st.face, "chains")):
                if c.status != "pass" and bad is None:
                    bad = {"input": f"j={j}, {st}", "lhs": c.name, "rhs": "fails"}
    report.add(make_check("elementary_collapses", bad is None, counterexample=bad))
    bad = None
    for j, z in enumerate(zs):
        big = z.big
        d = big.differential()
        lhs = d @ z.homotopy + z.homotopy @ d
        rhs = big.identity() - z.include @ z.project
        cx = _cx(lhs, rhs)
        if cx:
            cx["input"] = f"j={j}: " + cx["input"]
            bad = cx
            break
    report.add(make_check("zigzag_homotopy_identity", bad is None, counterexample=bad))
    bad = None
    for j, z in enumerate(zs[1:], 1):
        cx = _cx(z.project, zs[0].project)
        if cx:
            cx["input"] = f"j={j} vs j=0: " + cx["input"]
            bad = cx
            break
    report.add(make_check("projection_independent_of_pivot", bad is None, counterexample=bad))
    bad = None
    for j in range(n + 1):
        for name, (got, want) in zigzag_displays(n, j).items():
            cx = _cx(got, want)
            if cx and bad is None:
                cx["input"] = f"j={j}, {name}: " + cx["input"]
                bad = cx
    report.add(make_check("zigzag_displays", bad is None, counterexample=bad))
    avg = _average(zs).as_dr()
    for c in check_dr(avg):
        c.name = "averaged." + c.name
        report.add(c)
    weld = welding_dr(n, full, "cochains")
    for name in ("include", "project", "homotopy"):
        report.add(make_check(f"equals_welding_{name}", getattr(avg, name) == getattr(weld, name),
                              counterexample=_cx(getattr(avg, name), getattr(weld, name))))
    if n == 1:
        report.extend(_interval_display_checks())
    return report


def verify_general_I(n: int, I) -> Report:
    """The averaged construction with extra collapses, compared with welding onto ``⋆_I Δ^n`` (claims)."""
    _check_n(n)
    I = _check_face(n, I)
    report = Report("collapse-general", {"n": n, "face": list(I)})
    avg = general_I_retraction(n, I)
    if avg.big.complex != star_complex(n, I):
        raise CollapseError("extra collapses do not end at the subdivision")
    for c in check_dr(avg, kind="claim"):
        c.name = "general." + c.name
        if c.status != "pass":
            c.note = "printed-formula mismatch"
        report.add(c)
    weld = welding_dr(n, I, "cochains")
    for name in ("include", "project", "homotopy"):
        cx = _cx(getattr(avg, name), getattr(weld, name))
        report.add(make_check(f"general.equals_welding_{name}", cx is None, kind="claim", counterexample=cx,
                              note=None if cx is None else "printed-formula mismatch"))
    return report
