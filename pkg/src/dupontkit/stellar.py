"""Stellar subdivisions of a simplex and a cube, and their welding retractions.

``⋆_I Δ^n`` keeps every simplex ``[J]`` and adds every cone ``[⋆, J]`` for
vertex sets ``J`` not containing ``I``; ``⋆`` sits at the barycenter of the
face spanned by ``I``.  The welding retraction maps chains of the subdivision
back onto chains of ``Δ^n``; the cochain version is its dual.

The cubical subdivision subdivides the first ``k`` interval slots and uses
tensor products of the one-dimensional welding maps.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Callable, Sequence

from .complexes import (STAR, CubicalComplex, DeformationRetraction, DomainError, GradedLinearMap, GradedSpace,
                        SimplicialComplex, check_dr, dualize_dr, dualize_map, format_cell, orient,
                        standard_complex)
from .report import Report, make_check


def _check_face(n: int, I) -> tuple:
    I = tuple(sorted(set(I)))
    if not I or any(not isinstance(i, int) or not 0 <= i <= n for i in I):
        raise DomainError(f"face {list(I)} is not a nonempty subset of 0..{n}")
    return I


@lru_cache(maxsize=None)
def star_complex(n: int, I: Sequence[int]) -> SimplicialComplex:
    """``⋆_I Δ^n``: cells ``[J]`` and ``[⋆, J]`` for ``J`` not containing ``I``."""
    I = _check_face(n, I)
    Iset = set(I)
    cells = [(STAR,)]
    for r in range(1, n + 2):
        for J in combinations(range(n + 1), r):
            if not Iset <= set(J):
                cells.append(J)
                cells.append((STAR,) + J)
    return SimplicialComplex(cells)


def _add(out: dict, vertices, coef) -> None:
    sign, cell = orient(vertices)
    out[cell] = out.get(cell, 0) + sign * Fraction(coef)


# ---------------------------------------------------------------------------
# chain-level welding maps

def _i_star(I: tuple):
    Iset = set(I)

    def rule(J):
        if not Iset <= set(J):
            return {J: 1}
        out: dict = {}
        for i, j in enumerate(J):
            if j in Iset:
                _add(out, (STAR,) + J[:i] + J[i + 1:], (-1) ** i)
        return out
    return rule


def _p_star(I: tuple):
    w = Fraction(1, len(I))

    def rule(cell):
        if cell[0] != STAR:
            return {cell: 1}
        J = cell[1:]
        out: dict = {}
        for alpha in I:
            if alpha not in J:
                _add(out, (alpha,) + J, w)
        return out
    return rule


def _a_star(I: tuple):
    w = Fraction(1, len(I))

    def rule(cell):
        if cell[0] != STAR:
            return {}
        J = cell[1:]
        missing = [a for a in I if a not in J]
        if len(missing) == 1:
            return {}
        out: dict = {}
        for alpha in missing:
            _add(out, (STAR, alpha) + J, -w)
        return out
    return rule


def welding_chain_dr(n: int, I) -> DeformationRetraction:
    I = _check_face(n, I)
    small = GradedSpace(standard_complex("simplex", n), "chains")
    big = GradedSpace(star_complex(n, I), "chains")
    i = GradedLinearMap.from_rule(small, big, 0, _i_star(I))
    p = GradedLinearMap.from_rule(big, small, 0, _p_star(I))
    a = GradedLinearMap.from_rule(big, big, 1, _a_star(I))
    return DeformationRetraction(small, big, i, p, a)


def welding_dr(n: int, I, side: str = "chains") -> DeformationRetraction:
    """Welding retraction of ``⋆_I Δ^n`` onto ``Δ^n``; the cochain side is the dual."""
    chains = welding_chain_dr(n, I)
    if side == "chains":
        return chains
    if side == "cochains":
        return dualize_dr(chains)
    raise DomainError(f"bad side {side!r}")


# ---------------------------------------------------------------------------
# literal cochain-level formulas (used to cross-check the dualization)

def _i_upper(I: tuple):
    Iset = set(I)
    w = Fraction(1, len(I))

    def rule(J):
        out: dict = {} if Iset <= set(J) else {J: Fraction(1)}
        for i, j in enumerate(J):
            if j in Iset:
                _add(out, (STAR,) + J[:i] + J[i + 1:], w * (-1) ** i)
        return out
    return rule


def _p_upper(I: tuple):
    def rule(cell):
        if cell[0] != STAR:
            return {cell: 1}
        J = cell[1:]
        missing = [a for a in I if a not in J]
        out: dict = {}
        if len(missing) == 1:
            _add(out, (missing[0],) + J, 1)
        return out
    return rule


def _a_upper(I: tuple):
    Iset = set(I)
    w = Fraction(1, len(I))

    def rule(cell):
        if cell[0] != STAR:
            return {}
        J = cell[1:]
        out: dict = {}
        for i, j in enumerate(J):
            if j in Iset:
                _add(out, (STAR,) + J[:i] + J[i + 1:], -w * (-1) ** i)
        return out
    return rule


def welding_cochain_literal(n: int, I) -> DeformationRetraction:
    I = _check_face(n, I)
    small = GradedSpace(standard_complex("simplex", n), "cochains")
    big = GradedSpace(star_complex(n, I), "cochains")
    i = GradedLinearMap.from_rule(small, big, 0, _i_upper(I))
    p = GradedLinearMap.from_rule(big, small, 0, _p_upper(I))
    a = GradedLinearMap.from_rule(big, big, -1, _a_upper(I))
    return DeformationRetraction(small, big, i, p, a)


# ---------------------------------------------------------------------------
# cubical subdivision

def interval_star() -> SimplicialComplex:
    return star_complex(1, (0, 1))


def interval() -> SimplicialComplex:
    return standard_complex("simplex", 1)


@lru_cache(maxsize=None)
def cubical_star_complex(n: int, k: int) -> CubicalComplex:
    """``(⋆Δ^1)^k × (Δ^1)^(n-k)``."""
    if not 0 <= k <= n or n < 1:
        raise DomainError(f"need 0 <= k <= n and n >= 1, got n={n}, k={k}")
    return CubicalComplex.product([interval_star()] * k + [interval()] * (n - k))


SlotRule = Callable[[tuple], dict]


def tensor_rule(slots: Sequence[tuple[SlotRule, int]]) -> Callable[[tuple], dict]:
    """Rule for ``A_1 ⊗ ... ⊗ A_n`` on cube cells with the Koszul sign convention."""
    def rule(cell):
        sign = 1
        left = 0
        images = []
        for (fn, deg), c in zip(slots, cell):
            if deg % 2 and left % 2:
                sign = -sign
            left += len(c) - 1
            im = fn(c)
            im = im.terms if hasattr(im, "terms") else im
            images.append([(k, v) for k, v in im.items() if v])
        out: dict = {}
        for combo in product(*images):
            coef = Fraction(sign)
            for _, v in combo:
                coef *= v
            key = tuple(c for c, _ in combo)
            out[key] = out.get(key, 0) + coef
        return out
    return rule


def permute_slots(sigma: Sequence[int], cell: tuple) -> tuple[int, tuple]:
    """Move the slot-``j`` cell to slot ``σ(j)``; the sign reorders the edge slots."""
    n = len(cell)
    out = [None] * n
    for j, c in enumerate(cell):
        out[sigma[j]] = c
    edges = [sigma[j] for j, c in enumerate(cell) if len(c) == 2]
    sign = 1
    for a in range(len(edges)):
        for b in range(a + 1, len(edges)):
            if edges[a] > edges[b]:
                sign = -sign
    return sign, tuple(out)


def _matrix_rule(m: GradedLinearMap):
    def rule(cell):
        return m.image(cell).terms
    return rule


def _identity_rule(cell):
    return {cell: 1}


def _cubical_from_slot_dr(n: int, k: int, slot: DeformationRetraction, side: str) -> DeformationRetraction:
    small = GradedSpace(standard_complex("cube", n), side)
    big = GradedSpace(cubical_star_complex(n, k), side)
    i_r, p_r, a_r = _matrix_rule(slot.include), _matrix_rule(slot.project), _matrix_rule(slot.homotopy)
    ip = slot.include @ slot.project
    ip_r = _matrix_rule(ip)
    a_deg = slot.homotopy.shift
    one = (_identity_rule, 0)
    i = GradedLinearMap.from_rule(small, big, 0, tensor_rule([(i_r, 0)] * k + [one] * (n - k)))
    p = GradedLinearMap.from_rule(big, small, 0, tensor_rule([(p_r, 0)] * k + [one] * (n - k)))
    summands = [tensor_rule([one] * j + [(a_r, a_deg)] + [(ip_r, 0)] * (k - 1 - j) + [one] * (n - k))
                for j in range(k)]

    def unsym(cell):
        out: dict = {}
        for r in summands:
            for c, v in r(cell).items():
                out[c] = out.get(c, 0) + v
        return out

    perms = [tuple(s) + tuple(range(k, n)) for s in permutations(range(k))]
    weight = Fraction(1, factorial(k))

    def homotopy(cell):
        out: dict = {}
        for sigma in perms:
            inv = [0] * n
            for j, s in enumerate(sigma):
                inv[s] = j
            s1, moved = permute_slots(inv, cell)
            for c, v in unsym(moved).items():
                s2, back = permute_slots(sigma, c)
                out[back] = out.get(back, 0) + s1 * s2 * v * weight
        return out

    a = GradedLinearMap.from_rule(big, big, a_deg, homotopy)
    return DeformationRetraction(small, big, i, p, a)


def cubical_welding_dr(n: int, k: int, side: str = "chains") -> DeformationRetraction:
    """Tensor welding retraction of ``⋆_{1..k} □^n`` onto ``□^n``.

    The chain side is built from the 1-d chain maps; the cochain side is the
    dual of the chain side.
    """
    cubical_star_complex(n, k)
    chains = _cubical_from_slot_dr(n, k, welding_chain_dr(1, (0, 1)), "chains")
    if side == "chains":
        return chains
    if side == "cochains":
        return dualize_dr(chains)
    raise DomainError(f"bad side {side!r}")


def cubical_welding_cochain_literal(n: int, k: int) -> DeformationRetraction:
    """Tensor products of the 1-d cochain maps, symmetrized the same way."""
    return _cubical_from_slot_dr(n, k, welding_cochain_literal(1, (0, 1)), "cochains")


# ---------------------------------------------------------------------------
# verification

def _same_triple(x: DeformationRetraction, y: DeformationRetraction) -> str | None:
    for name in ("include", "project", "homotopy"):
        if getattr(x, name) != getattr(y, name):
            f = getattr(x, name) - getattr(y, name)
            cell = f.first_nonzero()
            return f"{name} differs at {format_cell(cell)}"
    return None


def _face_label(I) -> str:
    return ",".join(str(i) for i in I)


def stellar_checks(n: int, I) -> list:
    I = _check_face(n, I)
    tag = f"simplex.n={n}.I={_face_label(I)}"
    out = []
    chains = welding_dr(n, I, "chains")
    cochains = welding_dr(n, I, "cochains")
    for side, r in (("chains", chains), ("cochains", cochains)):
        for c in check_dr(r):
            c.name = f"{tag}.{side}.{c.name}"
            out.append(c)
    diff = _same_triple(cochains, welding_cochain_literal(n, I))
    out.append(make_check(f"{tag}.dual_matches_cochain_formulas", diff is None,
                          counterexample=None if diff is None else {"input": diff, "lhs": "dual", "rhs": "literal"}))
    return out


def cubical_welding_checks(n: int, k: int) -> list:
    tag = f"cube.n={n}.k={k}"
    out = []
    chains = cubical_welding_dr(n, k, "chains")
    cochains = cubical_welding_dr(n, k, "cochains")
    for side, r in (("chains", chains), ("cochains", cochains)):
        for c in check_dr(r):
            c.name = f"{tag}.{side}.{c.name}"
            out.append(c)
    diff = _same_triple(cochains, cubical_welding_cochain_literal(n, k))
    out.append(make_check(f"{tag}.dual_matches_cochain_formulas", diff is None,
                          counterexample=None if diff is None else {"input": diff, "lhs": "dual", "rhs": "literal"}))
    # the symmetrized homotopy commutes with permutations of the subdivided slots
    a = chains.homotopy
    bad = None
    for s in permutations(range(k)):
        sigma = tuple(s) + tuple(range(k, n))
        for cell in chains.big.complex:
            sign, moved = permute_slots(sigma, cell)
            lhs = {}
            for c, v in a.image(cell).terms.items():
                s2, mc = permute_slots(sigma, c)
                lhs[mc] = lhs.get(mc, 0) + s2 * v
            rhs = {c: sign * v for c, v in a.image(moved).terms.items()}
            if {c: v for c, v in lhs.items() if v} != rhs:
                bad = {"input": f"sigma={list(sigma)}: {format_cell(cell)}", "lhs": str(lhs), "rhs": str(rhs)}
                break
        if bad:
            break
    out.append(make_check(f"{tag}.slot_permutation_equivariance", bad is None, counterexample=bad))
    return out


def all_faces(n: int) -> list[tuple]:
    return [I for r in range(1, n + 2) for I in combinations(range(n + 1), r)]


def verify_stellar(n: int, I=None, k: int | None = None, cubical: bool = True) -> Report:
    """check_dr on both sides for the given face (default: every face), and cubical welding."""
    report = Report("stellar", {"n": n, "face": None if I is None else list(I), "k": k})
    faces = all_faces(n) if I is None else [_check_face(n, I)]
    for face in faces:
        report.extend(stellar_checks(n, face))
    if cubical and n <= 3:
        ks = range(1, n + 1) if k is None else [k]
        for kk in ks:
            report.extend(cubical_welding_checks(n, kk))
    return report
