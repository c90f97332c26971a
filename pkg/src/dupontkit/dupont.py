"""Whitney map, integration map and the Dupont homotopy on the standard simplex.

The three operators form a special deformation retraction of polynomial forms
on ``|Δ^n|`` onto simplicial cochains of ``Δ^n``.  They are lifted to any
finite simplicial complex by acting in the barycentric chart of each top cell.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Callable, Mapping, Sequence

from .complexes import (Cochain, DomainError, OperatorRetraction, SimplicialComplex, check_dr, coboundary,
                        format_cell, orient, standard_complex)
from .report import Report, make_check
from .simplex_forms import (PiecewiseForm, _add_into, SimplexForm, face_points, h, integrate_face, monomial_forms,
                            permutation_points, pullback, pullback_affine, random_form, whitney_form)


def simplex_of(n: int) -> SimplicialComplex:
    return standard_complex("simplex", n)


def _dim_of(x: Cochain) -> int:
    n = x.complex.dimension
    if x.complex != simplex_of(n):
        raise DomainError("cochain does not live on a standard simplex")
    return n


def whitney_map(x: Cochain, n: int | None = None) -> SimplexForm:
    """``W(σ̂) = ω̄_σ``, extended linearly."""
    if n is None:
        n = _dim_of(x)
    out = SimplexForm.zero(n)
    for cell, c in x.terms.items():
        out = out + whitney_form(n, cell, barred=True) * c
    return out


def integration_map(a: SimplexForm) -> Cochain:
    """``R(a) = Σ_σ (∫_σ a) σ̂`` over all faces of the simplex."""
    cplx = simplex_of(a.n)
    out = {}
    for p in a.degrees():
        part = a.part(p)
        for cell in cplx.basis(p):
            out[cell] = integrate_face(cell, part)
    return Cochain(cplx, out)


def dupont_s(a: SimplexForm) -> SimplexForm:
    """``s = -Σ_k Σ_{i_0<...<i_k} ω̄_{i_0...i_k} h^{i_k}...h^{i_0}``."""
    n = a.n
    total: dict = {}

    def walk(prefix: tuple, form: SimplexForm):
        last = prefix[-1] if prefix else -1
        for i in range(last + 1, n + 1):
            hf = h(i, form)
            if hf.is_zero():
                continue
            idx = prefix + (i,)
            for key, c in whitney_form(n, idx, barred=True).wedge(hf).terms.items():
                _add_into(total, key, -c)
            walk(idx, hf)

    walk((), a)
    return SimplexForm._make(n, total)


def interval_s_closed_form(a: SimplexForm) -> SimplexForm:
    """Closed form on ``Δ^1`` in the coordinate ``t = t_1``: ``s(g dt) = ∫_0^t g - t ∫_0^1 g``."""
    if a.n != 1:
        raise DomainError("closed form only on Δ^1")
    flip = (1, 0)
    b = pullback("permutation", flip, a)  # chart variable of b is t_1
    out: dict = {}
    for (e, w), c in b.terms.items():
        if not w:
            continue
        k = e[0]
        coef = c / (k + 1)
        out[((k + 1,), ())] = out.get(((k + 1,), ()), 0) + coef
        out[((1,), ())] = out.get(((1,), ()), 0) - coef
    return pullback("permutation", flip, SimplexForm(1, out))


# ---------------------------------------------------------------------------
# cochain pullbacks along simplicial maps

def cochain_pullback(vertex_map: Mapping, x: Cochain, source: SimplicialComplex) -> Cochain:
    """``(f^* x)(c) = x(f_* c)`` for an injective vertex map ``f``."""
    out = {}
    for cell in source:
        sign, image = orient([vertex_map[v] for v in cell])
        c = x[image] if image in x.complex else 0
        if c:
            out[cell] = sign * c
    return Cochain(source, out)


def permutation_vertex_map(sigma: Sequence[int]) -> dict:
    inv = [0] * len(sigma)
    for j, s in enumerate(sigma):
        inv[s] = j
    return {k: inv[k] for k in range(len(sigma))}


def face_vertex_map(n: int, i: int) -> dict:
    return {k: (k if k < i else k + 1) for k in range(n)}


# ---------------------------------------------------------------------------
# lifting to complexes

def _positions(order: tuple, cell: tuple) -> tuple[int, tuple]:
    return orient([order.index(v) for v in cell])


def lift_whitney(complex: SimplicialComplex, x: Cochain, charts: Mapping | None = None,
                 validate: bool = True) -> PiecewiseForm:
    if x.complex != complex:
        raise DomainError("cochain does not live on this complex")
    charts = {T: tuple((charts or {}).get(T, T)) for T in complex.top_cells()}
    pieces = {}
    for T, order in charts.items():
        m = len(T) - 1
        f = SimplexForm.zero(m)
        Tset = set(T)
        for cell, c in x.terms.items():
            if set(cell) <= Tset:
                sign, pos = _positions(order, cell)
                f = f + whitney_form(m, pos, barred=True) * (sign * c)
        pieces[T] = f
    return PiecewiseForm(complex, pieces, charts, validate)


def lift_integration(pw: PiecewiseForm) -> Cochain:
    cplx = pw.complex
    tops = list(pw.pieces)
    out = {}
    for cell in cplx:
        T = next(T for T in tops if set(cell) <= set(T))
        sign, pos = _positions(pw.charts[T], cell)
        part = pw.pieces[T].part(len(cell) - 1)
        if part:
            out[cell] = sign * integrate_face(pos, part)
    return Cochain(cplx, out)


def lift_s(pw: PiecewiseForm, validate: bool = True) -> PiecewiseForm:
    return PiecewiseForm(pw.complex, {T: dupont_s(f) for T, f in pw.pieces.items()}, pw.charts, validate)


def lift_to_complex(op: str, complex: SimplicialComplex, value, charts: Mapping | None = None):
    """Apply W, R or s cell-wise on ``complex``; ``value`` is a Cochain or PiecewiseForm."""
    if op == "W":
        return lift_whitney(complex, value, charts)
    if isinstance(value, PiecewiseForm) and value.complex != complex:
        raise DomainError("piecewise form lives on another complex")
    if op == "R":
        return lift_integration(value)
    if op == "s":
        return lift_s(value)
    raise DomainError(f"unknown operator {op!r}")


# ---------------------------------------------------------------------------
# verification

def form_probes(n: int, probes: int, degree: int, seed: int, whitney: bool = True,
                monomials: bool = False) -> list[SimplexForm]:
    """Whitney forms, optional monomials, and ``probes`` random forms per form degree."""
    out = []
    if whitney:
        out += [whitney_form(n, c, barred=True) for c in simplex_of(n)]
    if monomials:
        for p in range(n + 1):
            out += monomial_forms(n, p, degree)
    for p in range(n + 1):
        out += [random_form(n, p, degree, seed * 100_003 + j) for j in range(probes)]
    return out


def dupont_retraction(n: int, probes: list[SimplexForm]) -> OperatorRetraction:
    cplx = simplex_of(n)
    return OperatorRetraction(
        include=lambda x: whitney_map(x, n),
        project=integration_map,
        homotopy=dupont_s,
        d_small=coboundary,
        d_big=lambda f: f.d(),
        small_probes=[Cochain(cplx, {c: 1}) for c in cplx],
        big_probes=probes,
        small_is_zero=lambda x: not x,
        big_is_zero=lambda f: f.is_zero(),
    )


def _first_failure(items, lhs: Callable, rhs: Callable, fmt=str):
    for item in items:
        left, right = lhs(item), rhs(item)
        if left != right:
            return {"input": fmt(item), "lhs": str(left), "rhs": str(right)}
    return None


def equivariance_checks(n: int, probes: list[SimplexForm]) -> list:
    """Permutation equivariance and face-map compatibility of W, R and s."""
    cplx = simplex_of(n)
    basis = [Cochain(cplx, {c: 1}) for c in cplx]
    checks = []
    bad = {"s": None, "R": None, "W": None}
    for sigma in permutations(range(n + 1)):
        vmap = permutation_vertex_map(sigma)
        pb = lambda f, sigma=sigma: pullback("permutation", sigma, f)
        tag = f"sigma={list(sigma)}: "
        if bad["s"] is None:
            bad["s"] = _first_failure(probes, lambda f: dupont_s(pb(f)), lambda f: pb(dupont_s(f)),
                                      lambda f: tag + str(f))
        if bad["R"] is None:
            bad["R"] = _first_failure(probes, lambda f: integration_map(pb(f)),
                                      lambda f: cochain_pullback(vmap, integration_map(f), cplx),
                                      lambda f: tag + str(f))
        if bad["W"] is None:
            bad["W"] = _first_failure(basis, lambda x: pb(whitney_map(x, n)),
                                      lambda x: whitney_map(cochain_pullback(vmap, x, cplx), n),
                                      lambda x: tag + str(x))
    for op in ("R", "W", "s"):
        checks.append(make_check(f"equivariance_{op}", bad[op] is None, counterexample=bad[op]))
    if n >= 1:
        face = simplex_of(n - 1)
        bad = {"s": None, "R": None, "W": None}
        for i in range(n + 1):
            vmap = face_vertex_map(n, i)
            pts = face_points(n, i)
            pb = lambda f, pts=pts: pullback_affine(pts, f)
            tag = f"face={i}: "
            if bad["s"] is None:
                bad["s"] = _first_failure(probes, lambda f: pb(dupont_s(f)), lambda f: dupont_s(pb(f)),
                                          lambda f: tag + str(f))
            if bad["R"] is None:
                bad["R"] = _first_failure(probes, lambda f: integration_map(pb(f)),
                                          lambda f: cochain_pullback(vmap, integration_map(f), face),
                                          lambda f: tag + str(f))
            if bad["W"] is None:
                bad["W"] = _first_failure(basis, lambda x: pb(whitney_map(x, n)),
                                          lambda x: whitney_map(cochain_pullback(vmap, x, face), n - 1),
                                          lambda x: tag + str(x))
        for op in ("R", "W", "s"):
            checks.append(make_check(f"face_commutation_{op}", bad[op] is None, counterexample=bad[op]))
    return checks


def verify_dupont(n: int, probes: int = 25, degree: int = 3, seed: int = 0,
                  equivariance_probes: int | None = None) -> Report:
    """Special deformation retraction identities for (W, R, s), plus symmetry checks."""
    if n < 1:
        raise DomainError("the Dupont suite needs n >= 1")
    report = Report("dupont", {"n": n, "probes": probes, "degree": degree, "seed": seed})
    big = form_probes(n, probes, degree, seed, monomials=degree <= 2)
    dr = dupont_retraction(n, big)
    names = {"p_i_identity": "RW_identity", "homotopy_identity": "ds_plus_sd",
             "a_squared_zero": "s_squared_zero", "a_i_zero": "sW_zero", "p_a_zero": "Rs_zero"}
    for c in check_dr(dr):
        c.name = names[c.name]
        report.add(c)
    cplx = simplex_of(n)
    bad = _first_failure([Cochain(cplx, {c: 1}) for c in cplx], lambda x: whitney_map(coboundary(x), n),
                         lambda x: whitney_map(x, n).d())
    report.add(make_check("W_cochain_map", bad is None, counterexample=bad))
    bad = _first_failure(big, lambda f: integration_map(f.d()), lambda f: coboundary(integration_map(f)))
    report.add(make_check("R_cochain_map", bad is None, counterexample=bad))
    eq_count = probes if equivariance_probes is None else equivariance_probes
    eq_probes = form_probes(n, eq_count, degree, seed + 1, whitney=True)
    report.extend(equivariance_checks(n, eq_probes))
    if n == 1:
        bad = _first_failure(big, dupont_s, interval_s_closed_form)
        report.add(make_check("interval_closed_form", bad is None, counterexample=bad))
    return report
