"""Compatibility of the Dupont retraction with stellar welding.

On ``⋆_I Δ^n`` each top cell ``[⋆, 0, ..., î_m, ..., n]`` carries its own
barycentric chart.  Composing the lifted Dupont retraction with the welding
retraction gives a retraction of piecewise forms onto ``C^•(Δ^n)``; on forms
restricted from ``Δ^n`` its projection and inclusion agree with ``R`` and
``W``, and its homotopy differs from ``s`` by a closed operator (the defect).

The cubical analogue works with piecewise cube forms stored per box in the
global coordinates ``x_1..x_n``; a subdivided slot has the two pieces
``[0, 1/2]`` and ``[1/2, 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Callable, Mapping, Sequence

from .complexes import (STAR, Cochain, DomainError, OperatorRetraction, check_dr, coboundary, orient,
                        standard_complex)
from .cube_dupont import (C_coefficient, CubeForm, cube_integration, cube_of, cube_probes, cube_s_expansion,
                          cube_whitney, interval_integration, interval_s, interval_whitney, inverse_permutation,
                          random_cube_form, tau)
from .dupont import dupont_s, form_probes, integration_map, lift_integration, lift_s, lift_whitney, whitney_map
from .report import Report, make_check
from .simplex_forms import (PiecewiseForm, SimplexForm, barycenter, cone_homotopy, eval_at, h, pullback_affine,
                            random_form, restrict_global, vertex_point, whitney_form)
from .stellar import _check_face, cubical_star_complex, cubical_welding_dr, star_complex, welding_dr


# ---------------------------------------------------------------------------
# charts on the subdivided simplex

@dataclass(frozen=True)
class StarChart:
    """Barycentric chart of the ``m``-th top cell of ``⋆_I Δ^n``."""

    n: int
    I: tuple
    m: int

    def __post_init__(self):
        object.__setattr__(self, "I", _check_face(self.n, self.I))
        if not 0 <= self.m < len(self.I):
            raise DomainError(f"piece index {self.m} out of range for I={list(self.I)}")

    @property
    def k(self) -> int:
        return len(self.I) - 1

    @property
    def pivot(self) -> int:
        return self.I[self.m]

    @property
    def cell(self) -> tuple:
        return (STAR,) + tuple(j for j in range(self.n + 1) if j != self.pivot)

    def point(self, v) -> tuple:
        return barycenter(self.n, self.I) if v == STAR else vertex_point(self.n, v)

    def points(self) -> list:
        return [self.point(v) for v in self.cell]

    def inverse(self) -> list[SimplexForm]:
        """``t_j`` of ``Δ^n`` written in the piece coordinates, ``j = 0..n``."""
        return [pullback_affine(self.points(), SimplexForm.t(self.n, j)) for j in range(self.n + 1)]

    def forward(self) -> dict:
        """Piece coordinates as functions on ``Δ^n``.

        ``t'_⋆ = (k+1) t_{i_m}``, ``t'_i = t_i - t_{i_m}`` for ``i`` in ``I``, ``t'_j = t_j`` otherwise.
        """
        n, im = self.n, self.pivot
        out = {STAR: SimplexForm.t(n, im) * (self.k + 1)}
        for j in range(n + 1):
            if j == im:
                continue
            out[j] = SimplexForm.t(n, j) - SimplexForm.t(n, im) if j in self.I else SimplexForm.t(n, j)
        return out

    def contains(self, q: Sequence) -> bool:
        q = [Fraction(x) for x in q]
        im = self.pivot
        return q[im] <= Fraction(1, self.k + 1) and all(q[i] >= q[im] for i in self.I if i != im)


def star_points(n: int, I) -> dict:
    I = _check_face(n, I)
    pts = {j: vertex_point(n, j) for j in range(n + 1)}
    pts[STAR] = barycenter(n, I)
    return pts


def restrict_to_star(a: SimplexForm, n: int, I) -> PiecewiseForm:
    """Per-piece substitution of a form on ``Δ^n``."""
    if a.n != n:
        raise DomainError("form lives on a different simplex")
    return restrict_global(a, star_complex(n, _check_face(n, I)), star_points(n, I))


def _chi(n: int, I, m: int, f: SimplexForm) -> PiecewiseForm:
    """``χ_{i_m} f``: the restriction of ``f`` to piece ``m`` only (not globally continuous)."""
    I = _check_face(n, I)
    cplx = star_complex(n, I)
    chart = StarChart(n, I, m)
    pieces = {T: SimplexForm.zero(n) for T in cplx.top_cells()}
    pieces[chart.cell] = pullback_affine(chart.points(), f)
    return PiecewiseForm(cplx, pieces, validate=False)


def _zero_pw(n: int, I) -> PiecewiseForm:
    cplx = star_complex(n, I)
    return PiecewiseForm(cplx, {T: SimplexForm.zero(n) for T in cplx.top_cells()}, validate=False)


# ---------------------------------------------------------------------------
# primed Whitney forms

def primed_whitney_checks(n: int, I) -> list:
    """Piece Whitney forms against the relations with the Whitney forms of ``Δ^n``."""
    I = _check_face(n, I)
    k = len(I) - 1
    bad_plain = bad_star = None
    for m, im in enumerate(I):
        chart = StarChart(n, I, m)
        pts = chart.points()
        order = chart.cell
        others = [j for j in range(n + 1) if j != im]
        for r in range(0, n + 1):
            for J in combinations(others, r):
                star_idx = (0,) + tuple(order.index(j) for j in J)
                lhs = whitney_form(n, star_idx, barred=True)
                rhs = pullback_affine(pts, whitney_form(n, (im,) + J, barred=True) * (k + 1))
                if lhs != rhs and bad_star is None:
                    bad_star = {"input": f"m={m}, J={list(J)}", "lhs": str(lhs), "rhs": str(rhs)}
                if not J:
                    continue
                lhs = whitney_form(n, tuple(order.index(j) for j in J), barred=True)
                glob = whitney_form(n, J, barred=True)
                for i, j in enumerate(J):
                    if j in I:
                        glob = glob - whitney_form(n, (im,) + J[:i] + J[i + 1:], barred=True) * (-1) ** i
                rhs = pullback_affine(pts, glob)
                if lhs != rhs and bad_plain is None:
                    bad_plain = {"input": f"m={m}, J={list(J)}", "lhs": str(lhs), "rhs": str(rhs)}
    return [make_check("primed_whitney_plain", bad_plain is None, counterexample=bad_plain),
            make_check("primed_whitney_star", bad_star is None, counterexample=bad_star)]


def primed_whitney_check(n: int, I) -> Report:
    report = Report("primed_whitney", {"n": n, "face": list(_check_face(n, I))})
    report.extend(primed_whitney_checks(n, I))
    return report


# ---------------------------------------------------------------------------
# the composed retraction

class StarRetraction:
    """Operators of the composite ``(W̊ i^⋆, p^⋆ R̊, s̊ + W̊ a^⋆ R̊)`` for ``⋆_I Δ^n``."""

    def __init__(self, n: int, I):
        self.n = n
        self.I = _check_face(n, I)
        self.k = len(self.I) - 1
        self.complex = star_complex(n, self.I)
        self.weld = welding_dr(n, self.I, "cochains")

    def restrict(self, a: SimplexForm) -> PiecewiseForm:
        return restrict_to_star(a, self.n, self.I)

    def W(self, x: Cochain) -> PiecewiseForm:
        return lift_whitney(self.complex, x, validate=False)

    def R(self, pw: PiecewiseForm) -> Cochain:
        return lift_integration(pw)

    def s(self, pw: PiecewiseForm) -> PiecewiseForm:
        return lift_s(pw, validate=False)

    def include(self, x: Cochain) -> PiecewiseForm:
        return self.W(self.weld.include(x))

    def project(self, pw: PiecewiseForm) -> Cochain:
        return self.weld.project(self.R(pw))

    def homotopy(self, pw: PiecewiseForm) -> PiecewiseForm:
        return self.s(pw) + self.W(self.weld.homotopy(self.R(pw)))

    def defect(self, a: SimplexForm) -> PiecewiseForm:
        return self.homotopy(self.restrict(a)) - self.restrict(dupont_s(a))


def composed_retraction(n: int, I, probes: list[PiecewiseForm] | None = None) -> OperatorRetraction:
    sr = StarRetraction(n, I)
    small = standard_complex("simplex", n)
    return OperatorRetraction(
        include=sr.include,
        project=sr.project,
        homotopy=sr.homotopy,
        d_small=coboundary,
        d_big=lambda f: f.d(),
        small_probes=[Cochain(small, {c: 1}) for c in small],
        big_probes=probes or [],
        small_is_zero=lambda x: not x,
        big_is_zero=lambda f: f.is_zero(),
    )


def star_probes(sr: StarRetraction, forms: list[SimplexForm], mixed: int = 4) -> list[PiecewiseForm]:
    """Restricted global forms, lifted Whitney forms of every cell, and a few products of both."""
    out = [sr.restrict(f) for f in forms]
    basis = [Cochain(sr.complex, {c: 1}) for c in sr.complex]
    out += [sr.W(x) for x in basis]
    for j in range(mixed):
        f = forms[(7 * j) % len(forms)]
        x = basis[(5 * j + 3) % len(basis)]
        out.append(sr.restrict(f).wedge(sr.W(x)))
    return out


def check_RW_compat(n: int, I, probes: int = 25, degree: int = 3, seed: int = 0) -> Report:
    """``p^⋆ R̊ restrict = R`` on probes and ``W̊ i^⋆ = restrict W`` on the cochain basis."""
    sr = StarRetraction(n, I)
    report = Report("rw_compat", {"n": n, "face": list(sr.I), "probes": probes, "degree": degree, "seed": seed})
    report.extend(_rw_checks(sr, form_probes(n, probes, degree, seed)))
    return report


def _rw_checks(sr: StarRetraction, forms: list[SimplexForm]) -> list:
    bad = None
    for f in forms:
        lhs, rhs = sr.project(sr.restrict(f)), integration_map(f)
        if lhs != rhs:
            bad = {"input": str(f), "lhs": str(lhs), "rhs": str(rhs)}
            break
    out = [make_check("pR_equals_R", bad is None, counterexample=bad)]
    small = standard_complex("simplex", sr.n)
    bad = None
    for c in small:
        x = Cochain(small, {c: 1})
        lhs, rhs = sr.include(x), sr.restrict(whitney_map(x, sr.n))
        if lhs != rhs:
            bad = {"input": str(x), "lhs": str(lhs), "rhs": str(rhs)}
            break
    out.append(make_check("Wi_equals_W", bad is None, counterexample=bad))
    return out


# ---------------------------------------------------------------------------
# the defect and its printed expansion

def defect_lhs(n: int, I, a: SimplexForm) -> PiecewiseForm:
    """``(s̊ + W̊ a^⋆ R̊)(restrict a) - restrict(s a)``."""
    return StarRetraction(n, I).defect(a)


def _h_chain(J: Sequence[int], a: SimplexForm) -> SimplexForm:
    for j in J:
        a = h(j, a)
    return a


def T_operator(n: int, I, J: Sequence[int], a: SimplexForm) -> SimplexForm:
    """``T_J = (-1)^(l+1) ((1 - ε^⋆) Σ_{α ∈ I - J} h^α - (k+1) h^⋆) h^{j_l} ... h^{j_0}``."""
    I = _check_face(n, I)
    k = len(I) - 1
    star = barycenter(n, I)
    inner = _h_chain(J, a)
    summed = SimplexForm.zero(n)
    for alpha in I:
        if alpha not in J:
            summed = summed + h(alpha, inner)
    out = summed - eval_at(star, summed) - cone_homotopy(star, inner) * (k + 1)
    return out * (-1) ** len(J)


def defect_rhs(n: int, I, a: SimplexForm) -> PiecewiseForm:
    """``Σ_m Σ_{J ∌ i_m, |J| <= n-1} χ_{i_m} ω̄_{i_m, J} T_J(a)``."""
    I = _check_face(n, I)
    total = _zero_pw(n, I)
    for m, im in enumerate(I):
        others = [j for j in range(n + 1) if j != im]
        piece = SimplexForm.zero(n)
        for r in range(0, n):
            for J in combinations(others, r):
                T = T_operator(n, I, J, a)
                if T:
                    piece = piece + whitney_form(n, (im,) + J, barred=True).wedge(T)
        total = total + _chi(n, I, m, piece)
    return total


def restricted_s_expansion(n: int, I, a: SimplexForm) -> PiecewiseForm:
    """The displayed expansion of ``s̊`` on each piece, written with the cone homotopies of ``Δ^n``."""
    I = _check_face(n, I)
    k = len(I) - 1
    star = barycenter(n, I)
    total = _zero_pw(n, I)
    for m, im in enumerate(I):
        others = [j for j in range(n + 1) if j != im]
        piece = SimplexForm.zero(n)
        for r in range(1, n + 1):
            for J in combinations(others, r):
                piece = piece - whitney_form(n, J, barred=True).wedge(_h_chain(J, a))
        for r in range(0, n):
            for J in combinations(others, r):
                inner = SimplexForm.zero(n)
                for alpha in I:
                    if alpha != im and alpha not in J:
                        inner = inner + h(alpha, a)
                inner = inner - cone_homotopy(star, a) * (k + 1)
                piece = piece + whitney_form(n, (im,) + J, barred=True).wedge(_h_chain(J, inner))
        total = total + _chi(n, I, m, piece)
    return total


def cone_transport_checks(n: int, I, forms: list[SimplexForm]) -> list:
    """On each piece, the cone homotopy toward a piece vertex equals the global one toward the same point."""
    I = _check_face(n, I)
    bad = None
    for m in range(len(I)):
        chart = StarChart(n, I, m)
        pts = chart.points()
        for pos, v in enumerate(chart.cell):
            for f in forms:
                lhs = cone_homotopy(vertex_point(n, pos), pullback_affine(pts, f))
                rhs = pullback_affine(pts, cone_homotopy(chart.point(v), f))
                if lhs != rhs:
                    bad = {"input": f"m={m}, vertex={v}: {f}", "lhs": str(lhs), "rhs": str(rhs)}
                    break
            if bad:
                break
        if bad:
            break
    return [make_check("cone_homotopy_transport", bad is None, counterexample=bad)]


def T_empty_sanity(forms: list[SimplexForm]) -> list:
    """On ``Δ^1`` with ``I = {0, 1}``: ``(1 - ε^⋆)(h^0 + h^1) = 2 h^⋆``."""
    star = barycenter(1, (0, 1))
    bad = None
    for f in forms:
        summed = h(0, f) + h(1, f)
        lhs = summed - eval_at(star, summed)
        rhs = cone_homotopy(star, f) * 2
        if lhs != rhs:
            bad = {"input": str(f), "lhs": str(lhs), "rhs": str(rhs)}
            break
    return [make_check("T_empty_sanity", bad is None, counterexample=bad)]


def cone_homotopy_formula_checks(n: int, q: Sequence, forms: list[SimplexForm], name: str) -> list:
    """``d h^q + h^q d = ε^q - 1`` on probes."""
    bad = None
    for f in forms:
        lhs = cone_homotopy(q, f).d() + cone_homotopy(q, f.d())
        rhs = eval_at(q, f) - f
        if lhs != rhs:
            bad = {"input": str(f), "lhs": str(lhs), "rhs": str(rhs)}
            break
    return [make_check(name, bad is None, counterexample=bad)]


def verify_compat(n: int, I=None, probes: int = 25, degree: int = 3, seed: int = 0) -> Report:
    """Compatibility identities, closedness of the defect, and the printed defect expansion."""
    I = tuple(range(n + 1)) if I is None else _check_face(n, I)
    report = Report("compat", {"n": n, "face": list(I), "probes": probes, "degree": degree, "seed": seed})
    sr = StarRetraction(n, I)
    forms = form_probes(n, probes, degree, seed)
    report.extend(_rw_checks(sr, forms))
    report.extend(primed_whitney_checks(n, I))
    report.extend(cone_transport_checks(n, I, forms[: max(10, probes)]))
    report.extend(cone_homotopy_formula_checks(n, barycenter(n, I), forms, "star_cone_homotopy_formula"))
    dr = composed_retraction(n, I, star_probes(sr, forms[: max(10, probes)]))
    for c in check_dr(dr):
        c.name = "composed." + c.name
        report.add(c)
    defects = {}
    bad_closed = None
    for f in forms:
        X = sr.defect(f)
        defects[f] = X
        lhs = X.d() + sr.defect(f.d())
        if not lhs.is_zero() and bad_closed is None:
            bad_closed = {"input": str(f), "lhs": str(lhs), "rhs": "0"}
    report.add(make_check("defect_closed", bad_closed is None, counterexample=bad_closed))
    if n == 1 and len(I) == 2:
        bad = next(({"input": str(f), "lhs": str(X), "rhs": "0"} for f, X in defects.items() if not X.is_zero()),
                   None)
        report.add(make_check("defect_vanishes", bad is None, counterexample=bad))
        report.extend(T_empty_sanity(forms))
    bad = None
    for f, X in defects.items():
        rhs = defect_rhs(n, I, f)
        if X != rhs:
            bad = {"input": str(f), "lhs": str(X), "rhs": str(rhs)}
            break
    report.add(make_check("T_formula", bad is None, kind="claim", counterexample=bad,
                          note=None if bad is None else "printed-formula mismatch"))
    bad = None
    for f in forms:
        lhs, rhs = sr.s(sr.restrict(f)), restricted_s_expansion(n, I, f)
        if lhs != rhs:
            bad = {"input": str(f), "lhs": str(lhs), "rhs": str(rhs)}
            break
    report.add(make_check("restricted_s_expansion", bad is None, kind="claim", counterexample=bad,
                          note=None if bad is None else "printed-formula mismatch"))
    return report


# ---------------------------------------------------------------------------
# cubical compatibility
#
# A 1-d form is a dict (exponent, has_dx) -> coefficient in the global slot
# coordinate.  Slot pieces: a plain slot has the single piece [0, 1]; a
# subdivided slot has pieces 0 = [0, 1/2] and 1 = [1/2, 1].

HALF = Fraction(1, 2)
STAR_PIECES = ((Fraction(0), HALF), (HALF, Fraction(1)))
PLAIN_PIECES = ((Fraction(0), Fraction(1)),)


def _acc(out: dict, key, coef) -> None:
    v = out.get(key, 0) + coef
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class SlotKit:
    """Piece-local W, R, s of one slot (plain interval or subdivided interval)."""

    def __init__(self, starred: bool):
        self.starred = starred
        self.pieces = STAR_PIECES if starred else PLAIN_PIECES

    def R(self, p: int, f: dict) -> dict:
        a, b = self.pieces[p]
        vals = interval_integration(f, a, b)
        if not self.starred:
            return {(0,): vals["a"], (1,): vals["b"], (0, 1): vals["ab"]}
        if p == 0:
            # piece [e_0, e_⋆]; the canonical edge (⋆, 0) is oriented from 1/2 to 0
            return {(0,): vals["a"], (STAR,): vals["b"], (STAR, 0): -vals["ab"]}
        return {(1,): vals["b"], (STAR, 1): vals["ab"]}

    def W(self, cell: tuple) -> dict:
        if not self.starred:
            key = {(0,): "a", (1,): "b", (0, 1): "ab"}[cell]
            return {0: interval_whitney({key: 1}, 0, 1)}
        (a0, b0), (a1, b1) = self.pieces
        if cell == (0,):
            return {0: interval_whitney({"a": 1}, a0, b0)}
        if cell == (STAR,):
            return {0: interval_whitney({"b": 1}, a0, b0), 1: interval_whitney({"a": 1}, a1, b1)}
        if cell == (1,):
            return {1: interval_whitney({"b": 1}, a1, b1)}
        if cell == (STAR, 0):
            return {0: interval_whitney({"ab": -1}, a0, b0)}
        if cell == (STAR, 1):
            return {1: interval_whitney({"ab": 1}, a1, b1)}
        raise DomainError(f"unknown slot cell {cell}")

    def s(self, p: int, f: dict) -> dict:
        a, b = self.pieces[p]
        return {p: interval_s(f, a, b)}

    def WR(self, p: int, f: dict) -> dict:
        out: dict = {}
        for cell, c in self.R(p, f).items():
            if not c:
                continue
            for q, form in self.W(cell).items():
                tgt = out.setdefault(q, {})
                for key, v in form.items():
                    _acc(tgt, key, c * v)
        return out

    @staticmethod
    def one(p: int, f: dict) -> dict:
        return {p: dict(f)}


class PiecewiseCubeForm:
    """Per-box cube forms on ``(⋆Δ^1)^k × (Δ^1)^(n-k)`` in global coordinates."""

    def __init__(self, n: int, k: int, boxes: Mapping | None = None):
        self.n, self.k = n, k
        self.boxes = {b: f for b, f in (boxes or {}).items() if not f.is_zero()}

    @staticmethod
    def all_boxes(n: int, k: int) -> list:
        return list(product(*([range(2)] * k + [range(1)] * (n - k))))

    @classmethod
    def restrict(cls, f: CubeForm, k: int) -> "PiecewiseCubeForm":
        return cls(f.n, k, {b: f for b in cls.all_boxes(f.n, k)})

    def _zip(self, other, fn):
        if (other.n, other.k) != (self.n, self.k):
            raise DomainError("piecewise cube forms on different subdivisions")
        keys = set(self.boxes) | set(other.boxes)
        zero = CubeForm(self.n)
        return PiecewiseCubeForm(self.n, self.k, {b: fn(self.boxes.get(b, zero), other.boxes.get(b, zero))
                                                  for b in keys})

    def __add__(self, other):
        return self._zip(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._zip(other, lambda x, y: x - y)

    def __mul__(self, c):
        return PiecewiseCubeForm(self.n, self.k, {b: f * c for b, f in self.boxes.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def d(self):
        return PiecewiseCubeForm(self.n, self.k, {b: f.d() for b, f in self.boxes.items()})

    def is_zero(self) -> bool:
        return not self.boxes

    def __eq__(self, other) -> bool:
        return isinstance(other, PiecewiseCubeForm) and (self - other).is_zero()

    __hash__ = None

    def __str__(self) -> str:
        if not self.boxes:
            return "0"
        return "; ".join(f"box{list(b)}: {self.boxes[b]}" for b in sorted(self.boxes))

    def permute(self, sigma: Sequence[int]) -> "PiecewiseCubeForm":
        """Slot permutation (only among slots of the same kind)."""
        out = {}
        for b, f in self.boxes.items():
            nb = [0] * self.n
            for j, p in enumerate(b):
                nb[sigma[j]] = p
            out[tuple(nb)] = tau(sigma, f)
        return PiecewiseCubeForm(self.n, self.k, out)


LocalOp = tuple  # (fn(piece, 1-d form) -> {piece: 1-d form}, degree)


def apply_local(ops: Sequence[LocalOp], F: PiecewiseCubeForm) -> PiecewiseCubeForm:
    """Tensor product of piece-local slot operators, with Koszul signs for odd ones."""
    n = F.n
    out: dict = {}
    for box, f in F.boxes.items():
        for (e, w), c in f.terms.items():
            sign, left, images = 1, 0, []
            for slot, (fn, deg) in enumerate(ops):
                if deg % 2 and left % 2:
                    sign = -sign
                has = slot in w
                left += has
                im = fn(box[slot], {(e[slot], has): Fraction(1)})
                items = [(q, key, v) for q, form in im.items() for key, v in form.items() if v]
                if not items:
                    images = None
                    break
                images.append(items)
            if images is None:
                continue
            for combo in product(*images):
                coef = sign * c
                nb, exps, wedge = [], [], []
                for slot, (q, (ek, dk), v) in enumerate(combo):
                    coef *= v
                    nb.append(q)
                    exps.append(ek)
                    if dk:
                        wedge.append(slot)
                tgt = out.setdefault(tuple(nb), {})
                _acc(tgt, (tuple(exps), tuple(wedge)), coef)
    return PiecewiseCubeForm(n, F.k, {b: CubeForm(n, t, True) for b, t in out.items()})


class CubeStarRetraction:
    """Lifted Dupont retraction on ``⋆_{1..k} □^n`` composed with cubical welding."""

    def __init__(self, n: int, k: int):
        if not 1 <= k <= n:
            raise DomainError("need 1 <= k <= n")
        self.n, self.k = n, k
        self.kits = [SlotKit(True)] * k + [SlotKit(False)] * (n - k)
        self.complex = cubical_star_complex(n, k)
        self.weld = cubical_welding_dr(n, k, "cochains")

    def restrict(self, f: CubeForm) -> PiecewiseCubeForm:
        return PiecewiseCubeForm.restrict(f, self.k)

    def W(self, x: Cochain) -> PiecewiseCubeForm:
        out: dict = {}
        for cell, c in x.terms.items():
            images = [[(q, key, v) for q, form in kit.W(sc).items() for key, v in form.items()]
                      for kit, sc in zip(self.kits, cell)]
            for combo in product(*images):
                coef = c
                nb, exps, wedge = [], [], []
                for slot, (q, (ek, dk), v) in enumerate(combo):
                    coef *= v
                    nb.append(q)
                    exps.append(ek)
                    if dk:
                        wedge.append(slot)
                _acc(out.setdefault(tuple(nb), {}), (tuple(exps), tuple(wedge)), coef)
        return PiecewiseCubeForm(self.n, self.k, {b: CubeForm(self.n, t, True) for b, t in out.items()})

    def R(self, F: PiecewiseCubeForm) -> Cochain:
        out: dict = {}
        for box, f in F.boxes.items():
            for (e, w), c in f.terms.items():
                images = [list(kit.R(box[s], {(e[s], s in w): Fraction(1)}).items())
                          for s, kit in enumerate(self.kits)]
                for combo in product(*images):
                    coef = c
                    for _, v in combo:
                        coef *= v
                    if coef:
                        _acc(out, tuple(cell for cell, _ in combo), coef)
        return Cochain(self.complex, out)

    def _op(self, name: str, slot: int) -> LocalOp:
        kit = self.kits[slot]
        return {"one": (SlotKit.one, 0), "WR": (kit.WR, 0), "s": (kit.s, 1)}[name]

    def s(self, F: PiecewiseCubeForm) -> PiecewiseCubeForm:
        """``(1/n!) Σ_ε C_{|ε|,n} ψ_ε`` with each slot's own interval retraction."""
        n = self.n
        total = PiecewiseCubeForm(n, self.k)
        for eps in product((0, 1), repeat=n - 1):
            weight = Fraction(C_coefficient(sum(eps), n), factorial(n))
            for j in range(n):
                names = ["WR" if e else "one" for e in eps]
                names = names[:j] + ["s"] + names[j:]
                total = total + apply_local([self._op(nm, sl) for sl, nm in enumerate(names)], F) * weight
        return total

    def include(self, x: Cochain) -> PiecewiseCubeForm:
        return self.W(self.weld.include(x))

    def project(self, F: PiecewiseCubeForm) -> Cochain:
        return self.weld.project(self.R(F))

    def homotopy(self, F: PiecewiseCubeForm) -> PiecewiseCubeForm:
        return self.s(F) + self.W(self.weld.homotopy(self.R(F)))

    def defect(self, f: CubeForm) -> PiecewiseCubeForm:
        return self.homotopy(self.restrict(f)) - self.restrict(cube_s_expansion(f))


# global slot operators for the k = n rearrangement: global 1-d form -> {piece: 1-d form}

def _global_ops(kit: SlotKit) -> dict:
    def lift(local):
        def fn(f):
            out: dict = {}
            for p in range(len(kit.pieces)):
                for q, form in local(p, f).items():
                    tgt = out.setdefault(q, {})
                    for key, v in form.items():
                        _acc(tgt, key, v)
            return out
        return fn

    def restrict(f):
        return {p: dict(f) for p in range(len(kit.pieces))}

    def after(g):
        return lambda f: restrict(g(f))

    def combo(*terms):
        def fn(f):
            out: dict = {}
            for c, op in terms:
                for q, form in op(f).items():
                    tgt = out.setdefault(q, {})
                    for key, v in form.items():
                        _acc(tgt, key, c * v)
            return out
        return fn

    ops = {
        "1": restrict,
        "A": lift(kit.WR),
        "u": lift(kit.s),
        "s": after(lambda f: interval_s(f)),
        "B": after(lambda f: interval_whitney(interval_integration(f))),
    }
    ops["A-1"] = combo((1, ops["A"]), (-1, ops["1"]))
    ops["1-B"] = combo((1, ops["1"]), (-1, ops["B"]))
    return ops


_ODD = {"s", "u", "Wa"}


def apply_global(names: Sequence[str], ops: dict, f: CubeForm, k: int) -> PiecewiseCubeForm:
    n = f.n
    out: dict = {}
    for (e, w), c in f.terms.items():
        sign, left, images = 1, 0, []
        for slot, name in enumerate(names):
            if name in _ODD and left % 2:
                sign = -sign
            has = slot in w
            left += has
            im = ops[name]({(e[slot], has): Fraction(1)})
            items = [(q, key, v) for q, form in im.items() for key, v in form.items() if v]
            if not items:
                images = None
                break
            images.append(items)
        if images is None:
            continue
        for combo in product(*images):
            coef = sign * c
            nb, exps, wedge = [], [], []
            for slot, (q, (ek, dk), v) in enumerate(combo):
                coef *= v
                nb.append(q)
                exps.append(ek)
                if dk:
                    wedge.append(slot)
            _acc(out.setdefault(tuple(nb), {}), (tuple(exps), tuple(wedge)), coef)
    return PiecewiseCubeForm(n, k, {b: CubeForm(n, t, True) for b, t in out.items()})


def _symmetrized(n: int, summands: list[tuple[int, list[str]]], ops: dict, f: CubeForm) -> PiecewiseCubeForm:
    """``(1/n!) Σ_σ τ_σ (Σ coef * ⊗ names) τ_σ^{-1}`` applied to a global form."""
    total = PiecewiseCubeForm(n, n)
    for sigma in permutations(range(n)):
        g = tau(inverse_permutation(sigma), f)
        inner = PiecewiseCubeForm(n, n)
        for coef, names in summands:
            inner = inner + apply_global(names, ops, g, n) * coef
        total = total + inner.permute(sigma)
    return total * Fraction(1, factorial(n))


def rearranged_printed(n: int, f: CubeForm) -> PiecewiseCubeForm:
    """``Σ_j (W̊I̊ - 1)^{j-1} ⊗ s ⊗ (WI)^{n-j} + Σ_j (W̊I̊)^{j-1} ⊗ s̊ ⊗ (1 - WI)^{n-j}``, symmetrized."""
    ops = _global_ops(SlotKit(True))
    summands = []
    for j in range(n):
        summands.append((1, ["A-1"] * j + ["s"] + ["B"] * (n - 1 - j)))
        summands.append((1, ["A"] * j + ["u"] + ["1-B"] * (n - 1 - j)))
    return _symmetrized(n, summands, ops, f)


def rearranged_corrected(n: int, f: CubeForm) -> PiecewiseCubeForm:
    """``Σ_j (A^{j-1} - 1^{j-1}) ⊗ s ⊗ B^{n-j} + Σ_j (1^{j-1} ⊗ s̊ ⊗ A^{n-j} - A^{j-1} ⊗ s̊ ⊗ B^{n-j})``.

    Here ``A = W̊I̊`` and ``B = WI``; this follows from the first display of the
    expansion together with ``W̊ a^⋆ I̊ = s - s̊`` on one restricted slot.
    """
    ops = _global_ops(SlotKit(True))
    summands = []
    for j in range(n):
        summands.append((1, ["A"] * j + ["s"] + ["B"] * (n - 1 - j)))
        summands.append((-1, ["1"] * j + ["s"] + ["B"] * (n - 1 - j)))
        summands.append((1, ["1"] * j + ["u"] + ["A"] * (n - 1 - j)))
        summands.append((-1, ["A"] * j + ["u"] + ["B"] * (n - 1 - j)))
    return _symmetrized(n, summands, ops, f)


def rearranged_first(n: int, f: CubeForm) -> PiecewiseCubeForm:
    """The first display: W̊a^⋆I̊ expanded slot-wise, plus s̊, minus s (restricted)."""
    ops = _global_ops(SlotKit(True))
    ops["Wa"] = lambda g: _wai_slot(g)
    summands = []
    for j in range(n):
        summands.append((1, ["A"] * j + ["Wa"] + ["B"] * (n - 1 - j)))
        summands.append((1, ["1"] * j + ["u"] + ["A"] * (n - 1 - j)))
        summands.append((-1, ["1"] * j + ["s"] + ["B"] * (n - 1 - j)))
    return _symmetrized(n, summands, ops, f)



@lru_cache(maxsize=1)
def _interval_weld():
    return welding_dr(1, (0, 1), "cochains")


def _wai_slot(f: dict) -> dict:
    """``W̊ a^⋆ I̊`` on one restricted subdivided slot."""
    kit = SlotKit(True)
    cells: dict = {}
    for p in range(2):
        for cell, v in kit.R(p, f).items():
            _acc(cells, cell, v)
    weld = _interval_weld()
    x = weld.homotopy(Cochain(weld.big.complex, cells))
    out: dict = {}
    for cell, c in x.terms.items():
        for q, form in kit.W(cell).items():
            tgt = out.setdefault(q, {})
            for key, v in form.items():
                _acc(tgt, key, c * v)
    return out


def verify_cubical_compat(n: int, k: int | None = None, probes: int = 25, degree: int = 3, seed: int = 0) -> Report:
    k = n if k is None else k
    report = Report("cubical-compat", {"n": n, "k": k, "probes": probes, "degree": degree, "seed": seed})
    cr = CubeStarRetraction(n, k)
    forms = cube_probes(n, probes, degree, seed)
    bad = None
    for f in forms:
        lhs, rhs = cr.project(cr.restrict(f)), cube_integration(f)
        if lhs != rhs:
            bad = {"input": str(f), "lhs": str(lhs), "rhs": str(rhs)}
            break
    report.add(make_check("pI_equals_I", bad is None, counterexample=bad))
    small = cube_of(n)
    bad = None
    for c in small:
        x = Cochain(small, {c: 1})
        lhs, rhs = cr.include(x), cr.restrict(cube_whitney(x, n))
        if lhs != rhs:
            bad = {"input": str(x), "lhs": str(lhs), "rhs": str(rhs)}
            break
    report.add(make_check("Wi_equals_W", bad is None, counterexample=bad))
    big = [cr.restrict(f) for f in forms] + [cr.W(Cochain(cr.complex, {c: 1})) for c in cr.complex]
    dr = OperatorRetraction(cr.include, cr.project, cr.homotopy, coboundary, lambda F: F.d(),
                            [Cochain(small, {c: 1}) for c in small], big, lambda x: not x, lambda F: F.is_zero())
    for c in check_dr(dr):
        c.name = "composed." + c.name
        report.add(c)
    defects = {f: cr.defect(f) for f in forms}
    bad = None
    for f, X in defects.items():
        lhs = X.d() + cr.defect(f.d())
        if not lhs.is_zero():
            bad = {"input": str(f), "lhs": str(lhs), "rhs": "0"}
            break
    report.add(make_check("defect_closed", bad is None, counterexample=bad))
    if n == 1:
        bad = next(({"input": str(f), "lhs": str(X), "rhs": "0"} for f, X in defects.items() if not X.is_zero()),
                   None)
        report.add(make_check("defect_vanishes", bad is None, counterexample=bad))
    if k == n:
        for name, fn, kind in (("rearrangement_first_display", lambda f: rearranged_first(n, f), "theorem"),
                               ("rearrangement_printed", lambda f: rearranged_printed(n, f), "claim"),
                               ("rearrangement_corrected", lambda f: rearranged_corrected(n, f), "theorem")):
            bad = None
            for f, X in defects.items():
                rhs = fn(f)
                if X != rhs:
                    bad = {"input": str(f), "lhs": str(X), "rhs": str(rhs)}
                    break
            report.add(make_check(name, bad is None, kind=kind, counterexample=bad,
                                  note=None if bad is None else "printed-formula mismatch"))
    return report
